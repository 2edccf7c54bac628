#pragma once

#include <complex>
#include <vector>

#include "phonsim/spectral_density.hpp"

namespace phonsim {

// Finite-temperature bath autocorrelation
//   C(t) = int_0^inf dw J(w) [coth(hbar w / 2 kB T) cos(w t) - i sin(w t)],
// sampled on a time grid. At T = 0 the coth factor is 1. C(-t) = conj(C(t))
// holds by construction, so only t >= 0 is stored.
struct BathCorrelation {
    SpectralDensity source;
    double temperature_K = 0.0;
    std::vector<double> times_ps;
    std::vector<std::complex<double>> values;
    double max_quadrature_error = 0.0;

    std::complex<double> at(int i) const { return values.at(static_cast<size_t>(i)); }
};

BathCorrelation bath_correlation(const SpectralDensity& j, double temperature_K,
                                 const std::vector<double>& times_ps,
                                 double rel_tol = 1e-9);

std::complex<double> bath_correlation_at(const SpectralDensity& j, double temperature_K,
                                         double t_ps, double rel_tol = 1e-9,
                                         double* error_out = nullptr);

// coth(w / (2 wT)) with the T = 0 limit built in; wT = kB T / hbar.
double thermal_coth(double omega, double thermal_freq);

}  // namespace phonsim
