#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace phonsim {

struct LevMarOptions {
    int max_iterations = 500;
    double step_tol = 1e-8;        // relative parameter step for convergence
    double initial_damping = 1e-3;
    double damping_up = 10.0;
    double damping_down = 0.2;
    double jacobian_rel_step = 1e-6;
};

struct LevMarResult {
    Eigen::VectorXd parameters;
    Eigen::VectorXd standard_errors;
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string message;
    std::vector<double> cost_history;  // cost after each accepted step
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Damped least squares with forward-difference Jacobian. The residual
// callback returns the weighted residual vector r(p); the minimized cost is
// |r|^2. Steps are accepted only when the cost decreases.
LevMarResult levmar_fit(const ResidualFn& residuals, Eigen::VectorXd p0,
                        const LevMarOptions& options = {});

}  // namespace phonsim
