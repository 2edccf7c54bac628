#include "phonsim/levmar.hpp"

#include <cmath>

#include "phonsim/errors.hpp"

namespace phonsim {

namespace {

Eigen::MatrixXd forward_jacobian(const ResidualFn& residuals, const Eigen::VectorXd& p,
                                 const Eigen::VectorXd& r0, double rel_step) {
    const int m = static_cast<int>(r0.size());
    const int n = static_cast<int>(p.size());
    Eigen::MatrixXd jac(m, n);
    for (int j = 0; j < n; ++j) {
        double h = rel_step * std::max(std::abs(p[j]), 1.0);
        Eigen::VectorXd pj = p;
        pj[j] += h;
        jac.col(j) = (residuals(pj) - r0) / h;
    }
    return jac;
}

}  // namespace

LevMarResult levmar_fit(const ResidualFn& residuals, Eigen::VectorXd p, const LevMarOptions& opt) {
    LevMarResult result;
    const int n = static_cast<int>(p.size());
    if (n == 0) throw data_error("levmar_fit: empty parameter vector");

    Eigen::VectorXd r = residuals(p);
    const int m = static_cast<int>(r.size());
    double cost = r.squaredNorm();
    if (!std::isfinite(cost)) throw data_error("levmar_fit: non-finite cost at initial guess");
    result.cost_history.push_back(cost);

    double damping = opt.initial_damping;
    bool need_jacobian = true;
    Eigen::MatrixXd jac;
    Eigen::MatrixXd jtj;
    Eigen::VectorXd jtr;

    int iter = 0;
    for (; iter < opt.max_iterations; ++iter) {
        if (need_jacobian) {
            jac = forward_jacobian(residuals, p, r, opt.jacobian_rel_step);
            jtj = jac.transpose() * jac;
            jtr = jac.transpose() * r;
            need_jacobian = false;
        }
        Eigen::MatrixXd a = jtj;
        a.diagonal() += damping * jtj.diagonal().cwiseMax(1e-12);
        Eigen::VectorXd step = a.ldlt().solve(-jtr);
        if (!step.allFinite()) {
            damping *= opt.damping_up;
            continue;
        }
        Eigen::VectorXd p_trial = p + step;
        Eigen::VectorXd r_trial = residuals(p_trial);
        const double cost_trial = r_trial.squaredNorm();
        if (std::isfinite(cost_trial) && cost_trial < cost) {
            const double rel_step = step.norm() / std::max(p.norm(), 1e-12);
            p = p_trial;
            r = r_trial;
            cost = cost_trial;
            result.cost_history.push_back(cost);
            damping = std::max(damping * opt.damping_down, 1e-12);
            need_jacobian = true;
            if (rel_step < opt.step_tol) {
                result.converged = true;
                break;
            }
        } else {
            damping *= opt.damping_up;
            if (damping > 1e14) {
                // Stuck: either converged to machine precision or genuinely failed.
                result.converged = jtr.norm() < 1e-6 * std::max(1.0, std::sqrt(cost));
                break;
            }
        }
    }
    if (iter == opt.max_iterations) result.converged = false;

    result.parameters = p;
    result.iterations = iter;
    result.residual_norm = std::sqrt(cost);
    result.standard_errors = Eigen::VectorXd::Zero(n);
    if (result.converged) {
        result.message = "converged";
        // Covariance from the Jacobian at the optimum, scaled by reduced chi^2.
        Eigen::MatrixXd jf = forward_jacobian(residuals, p, r, opt.jacobian_rel_step);
        Eigen::MatrixXd h = jf.transpose() * jf;
        const double dof = std::max(1, m - n);
        const double s2 = cost / dof;
        Eigen::MatrixXd cov = h.completeOrthogonalDecomposition().pseudoInverse() * s2;
        for (int j = 0; j < n; ++j)
            result.standard_errors[j] = cov(j, j) > 0.0 ? std::sqrt(cov(j, j)) : 0.0;
    } else {
        result.message = "no convergence after " + std::to_string(iter) +
                         " iterations; residual norm " + std::to_string(result.residual_norm);
    }
    return result;
}

}  // namespace phonsim
