#pragma once

#include <Eigen/Dense>

#include "phonsim/pulse.hpp"

namespace phonsim {

// Rotating-frame system Hamiltonian in the {|G>, |X>} basis (hbar = 1):
//
//   H(t) = (D - dOmega) |X><X| + Omega(t)/2 (|X><G| + |G><X|)
//
// where dOmega is the laser detuning from the polaron-shifted exciton
// frequency and D the total polaron shift. The bath influence functional
// renormalizes the exciton down by exactly D, so carrying +D here makes the
// net detuning equal to dOmega as measured from the observed line. With no
// baths D = 0 and the diagonal reduces to -dOmega.
struct SystemHamiltonian {
    PulseSpec pulse;
    double polaron_shift_rad_per_ps = 0.0;

    Eigen::Matrix2cd at(double t_ps) const;
};

}  // namespace phonsim
