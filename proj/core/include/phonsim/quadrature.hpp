#pragma once

#include <functional>

namespace phonsim {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod (7/15) on a finite interval. rel_tol is relative to
// the accumulated integral magnitude, abs_tol an absolute floor.
QuadratureResult integrate(const std::function<double(double)>& f,
                           double a, double b,
                           double rel_tol = 1e-10, double abs_tol = 1e-14,
                           int max_subdivisions = 4000);

// Same, but pre-splits [a, b] into panels no wider than max_panel_width
// before adapting. Required for integrands carrying cos(w*t)/sin(w*t)
// factors with w*t >> 1, where a single top-level estimate is blind to the
// oscillation.
QuadratureResult integrate_oscillatory(const std::function<double(double)>& f,
                                       double a, double b,
                                       double max_panel_width,
                                       double rel_tol = 1e-10, double abs_tol = 1e-14,
                                       int max_subdivisions = 8000);

}  // namespace phonsim
