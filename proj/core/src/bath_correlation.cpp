#include "phonsim/bath_correlation.hpp"

#include <cmath>

#include "phonsim/constants.hpp"
#include "phonsim/errors.hpp"
#include "phonsim/quadrature.hpp"
#include "phonsim/units.hpp"

namespace phonsim {

double thermal_coth(double omega, double thermal_freq) {
    if (thermal_freq <= 0.0) return 1.0;
    const double x = omega / (2.0 * thermal_freq);
    if (x > 20.0) return 1.0;
    return 1.0 / std::tanh(x);
}

std::complex<double> bath_correlation_at(const SpectralDensity& j, double temperature_K,
                                         double t_ps, double rel_tol, double* error_out) {
    if (j.is_null()) {
        if (error_out) *error_out = 0.0;
        return {0.0, 0.0};
    }
    const double wT = thermal_frequency(temperature_K);
    const double t = std::abs(t_ps);
    const double wmax = j.support_max();
    // Keep at least ~6 panels per oscillation period at the largest |t|.
    const double panel = t > 0.0 ? constants::pi / (3.0 * t) : wmax;

    auto integrand_re = [&](double w) {
        if (w <= 0.0) return 0.0;
        return j.value(w) * thermal_coth(w, wT) * std::cos(w * t);
    };
    auto integrand_im = [&](double w) {
        if (w <= 0.0) return 0.0;
        return -j.value(w) * std::sin(w * t);
    };
    QuadratureResult re = integrate_oscillatory(integrand_re, 0.0, wmax, panel, rel_tol);
    QuadratureResult im = integrate_oscillatory(integrand_im, 0.0, wmax, panel, rel_tol);
    if (!re.converged || !im.converged)
        throw solver_error("bath correlation quadrature did not converge at t = " +
                           std::to_string(t_ps) + " ps; achieved error " +
                           std::to_string(re.error_estimate + im.error_estimate));
    if (error_out) *error_out = re.error_estimate + im.error_estimate;
    std::complex<double> c(re.value, im.value);
    return t_ps >= 0.0 ? c : std::conj(c);
}

BathCorrelation bath_correlation(const SpectralDensity& j, double temperature_K,
                                 const std::vector<double>& times_ps, double rel_tol) {
    if (temperature_K < 0.0)
        throw config_error("bath_correlation: negative temperature");
    BathCorrelation c;
    c.source = j;
    c.temperature_K = temperature_K;
    c.times_ps = times_ps;
    c.values.reserve(times_ps.size());
    for (double t : times_ps) {
        double err = 0.0;
        c.values.push_back(bath_correlation_at(j, temperature_K, t, rel_tol, &err));
        c.max_quadrature_error = std::max(c.max_quadrature_error, err);
    }
    return c;
}

}  // namespace phonsim
