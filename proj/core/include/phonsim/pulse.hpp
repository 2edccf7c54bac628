#pragma once

namespace phonsim {

// Gaussian drive Omega(t) = Theta / (sqrt(pi) t_p) * exp(-(t/t_p)^2); the
// envelope integrates to the pulse area Theta.
struct PulseSpec {
    double theta_rad = 0.0;        // pulse area
    double t_p_ps = 1.0;           // duration parameter
    double detuning_rad_per_ps = 0.0;  // laser detuning from the (shifted) exciton

    static PulseSpec from_duration(double theta_rad, double t_p_ps,
                                   double detuning_rad_per_ps = 0.0);
    // Alternative parametrization through the spectral width:
    // t_p = lambda_X^2 sqrt(2 ln 2) / (pi c FWHM_nm).
    static PulseSpec from_fwhm(double theta_rad, double fwhm_nm, double lambda_x_nm,
                               double detuning_rad_per_ps = 0.0);
};

// Envelope value in rad/ps.
double pulse_amplitude(const PulseSpec& p, double t_ps);

// Spectral FWHM in wavelength: lambda_X^2 sqrt(2 ln 2) / (pi c t_p).
double pulse_fwhm_wavelength(const PulseSpec& p, double lambda_x_nm);

}  // namespace phonsim
