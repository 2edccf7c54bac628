#include "phonsim/pulse.hpp"

#include <cmath>

#include "phonsim/constants.hpp"
#include "phonsim/errors.hpp"

namespace phonsim {

using namespace constants;

PulseSpec PulseSpec::from_duration(double theta_rad, double t_p_ps, double detuning_rad_per_ps) {
    if (!(t_p_ps > 0.0)) throw config_error("PulseSpec: t_p must be positive");
    if (theta_rad < 0.0) throw config_error("PulseSpec: pulse area must be non-negative");
    return {theta_rad, t_p_ps, detuning_rad_per_ps};
}

PulseSpec PulseSpec::from_fwhm(double theta_rad, double fwhm_nm, double lambda_x_nm,
                               double detuning_rad_per_ps) {
    if (!(fwhm_nm > 0.0) || !(lambda_x_nm > 0.0))
        throw config_error("PulseSpec: FWHM and reference wavelength must be positive");
    const double t_p = lambda_x_nm * lambda_x_nm * std::sqrt(2.0 * std::log(2.0)) /
                       (pi * c_nm_per_ps * fwhm_nm);
    return from_duration(theta_rad, t_p, detuning_rad_per_ps);
}

double pulse_amplitude(const PulseSpec& p, double t_ps) {
    const double x = t_ps / p.t_p_ps;
    return p.theta_rad / (std::sqrt(pi) * p.t_p_ps) * std::exp(-x * x);
}

double pulse_fwhm_wavelength(const PulseSpec& p, double lambda_x_nm) {
    return lambda_x_nm * lambda_x_nm * std::sqrt(2.0 * std::log(2.0)) /
           (pi * c_nm_per_ps * p.t_p_ps);
}

}  // namespace phonsim
