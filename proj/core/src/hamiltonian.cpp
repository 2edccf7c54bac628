#include "phonsim/hamiltonian.hpp"

namespace phonsim {

Eigen::Matrix2cd SystemHamiltonian::at(double t_ps) const {
    const double diag = polaron_shift_rad_per_ps - pulse.detuning_rad_per_ps;
    const double half_rabi = 0.5 * pulse_amplitude(pulse, t_ps);
    Eigen::Matrix2cd h;
    h << 0.0, half_rabi,
         half_rabi, diag;
    return h;
}

}  // namespace phonsim
