#include "phonsim/influence.hpp"

#include <cmath>

#include "phonsim/bath_correlation.hpp"
#include "phonsim/constants.hpp"
#include "phonsim/errors.hpp"
#include "phonsim/quadrature.hpp"
#include "phonsim/state.hpp"
#include "phonsim/units.hpp"

namespace phonsim {

void SolverConfig::validate() const {
    if (!(dt_ps > 0.0)) throw config_error("SolverConfig: dt must be positive");
    if (memory_steps < 1) throw config_error("SolverConfig: memory cutoff must be >= 1 step");
    if (!(svd_tol >= 0.0 && svd_tol < 1.0)) throw config_error("SolverConfig: svd_tol in [0, 1)");
    if (gamma_per_ps < 0.0) throw config_error("SolverConfig: gamma must be non-negative");
    if (max_bond < 4) throw config_error("SolverConfig: max_bond too small");
}

bool ProcessTensor::compatible_with(const ProcessTensor& other) const {
    return dt_ps == other.dt_ps && steps == other.steps && memory_steps == other.memory_steps;
}

namespace {

std::complex<double> eta_coefficient(const SpectralDensity& j, double wT, double dt, int dk,
                                     double rel_tol, double& error_acc) {
    if (j.is_null()) return {0.0, 0.0};
    const double wmax = j.support_max();
    const double t_osc = std::max(dk, 1) * dt;
    const double panel = constants::pi / (3.0 * t_osc);

    auto re = [&](double w) {
        if (w <= 0.0) return 0.0;
        const double jw2 = j.value(w) / (w * w);
        const double coth = thermal_coth(w, wT);
        if (dk == 0) return jw2 * coth * (1.0 - std::cos(w * dt));
        const double s = std::sin(0.5 * w * dt);
        return jw2 * 4.0 * s * s * coth * std::cos(w * dk * dt);
    };
    auto im = [&](double w) {
        if (w <= 0.0) return 0.0;
        const double jw2 = j.value(w) / (w * w);
        if (dk == 0) return -jw2 * (w * dt - std::sin(w * dt));
        const double s = std::sin(0.5 * w * dt);
        return -jw2 * 4.0 * s * s * std::sin(w * dk * dt);
    };
    QuadratureResult qr = integrate_oscillatory(re, 0.0, wmax, panel, rel_tol, 1e-15);
    QuadratureResult qi = integrate_oscillatory(im, 0.0, wmax, panel, rel_tol, 1e-15);
    if (!qr.converged || !qi.converged)
        throw solver_error("influence coefficient quadrature did not converge at lag " +
                           std::to_string(dk) + "; achieved error " +
                           std::to_string(qr.error_estimate + qi.error_estimate));
    error_acc += qr.error_estimate + qi.error_estimate;
    return {qr.value, qi.value};
}

Eigen::Matrix4cd pair_table(std::complex<double> eta) {
    Eigen::Matrix4cd b;
    for (int u = 0; u < 4; ++u) {
        const double ds = s_plus(u) - s_minus(u);
        for (int s = 0; s < 4; ++s) {
            const std::complex<double> src =
                eta * static_cast<double>(s_plus(s)) - std::conj(eta) * static_cast<double>(s_minus(s));
            b(u, s) = std::exp(-ds * src);
        }
    }
    return b;
}

}  // namespace

ProcessTensor build_process_tensor(const SpectralDensity& j, double temperature_K,
                                   const SolverConfig& cfg, int n_steps) {
    cfg.validate();
    if (n_steps < 1) throw config_error("build_process_tensor: need at least one step");
    if (temperature_K < 0.0) throw config_error("build_process_tensor: negative temperature");

    ProcessTensor pt;
    pt.label = mode_name(j.kind);
    pt.dt_ps = cfg.dt_ps;
    pt.steps = n_steps;
    pt.memory_steps = cfg.memory_steps;
    pt.svd_tol = cfg.svd_tol;
    pt.temperature_K = temperature_K;

    const double wT = thermal_frequency(temperature_K);
    const int k_max = std::min(cfg.memory_steps, n_steps);
    pt.eta.resize(static_cast<size_t>(k_max) + 1);
    pt.pair_factors.resize(static_cast<size_t>(k_max));
    for (int dk = 0; dk <= k_max; ++dk)
        pt.eta[static_cast<size_t>(dk)] =
            eta_coefficient(j, wT, cfg.dt_ps, dk, 1e-12, pt.quadrature_error);

    for (int u = 0; u < 4; ++u) {
        const double ds = s_plus(u) - s_minus(u);
        const std::complex<double> src = pt.eta[0] * static_cast<double>(s_plus(u)) -
                                         std::conj(pt.eta[0]) * static_cast<double>(s_minus(u));
        pt.self_factor[u] = std::exp(-ds * src);
    }
    for (int dk = 1; dk <= k_max; ++dk)
        pt.pair_factors[static_cast<size_t>(dk - 1)] = pair_table(pt.eta[static_cast<size_t>(dk)]);
    return pt;
}

ProcessTensor combine_process_tensors(const std::vector<ProcessTensor>& tensors) {
    if (tensors.empty()) throw config_error("combine_process_tensors: empty list");
    ProcessTensor out = tensors.front();
    for (size_t b = 1; b < tensors.size(); ++b) {
        const ProcessTensor& pt = tensors[b];
        if (!out.compatible_with(pt))
            throw config_error("combine_process_tensors: mismatched dt/steps/memory");
        out.label += "+" + pt.label;
        out.quadrature_error += pt.quadrature_error;
        const size_t k = std::min(out.pair_factors.size(), pt.pair_factors.size());
        for (size_t i = 0; i <= k; ++i) out.eta[i] += pt.eta[i];
        out.self_factor = out.self_factor.cwiseProduct(pt.self_factor);
        for (size_t i = 0; i < k; ++i)
            out.pair_factors[i] = out.pair_factors[i].cwiseProduct(pt.pair_factors[i]);
    }
    return out;
}

}  // namespace phonsim
