#include "phonsim/propagate.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <functional>

#include "phonsim/errors.hpp"
#include "phonsim/history_mps.hpp"

namespace phonsim {

namespace {

Eigen::Matrix4cd liouvillian(const SystemHamiltonian& h, double t_ps, double gamma) {
    const Eigen::Matrix2cd hm = h.at(t_ps);
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    const std::complex<double> mi(0.0, -1.0);
    Eigen::Matrix4cd l = Eigen::Matrix4cd::Zero();
    // Row-major vectorization: vec(A rho B) = kron(A, B^T) vec(rho).
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int m = 0; m < 2; ++m) {
                    l(2 * i + j, 2 * k + m) +=
                        mi * (hm(i, k) * id(m, j) - id(i, k) * hm(m, j));
                }
    if (gamma > 0.0) {
        // gamma (P rho P - 1/2 {P, rho}) with P = |X><X| = diag(0, 1):
        // acts diagonally on the coherences only.
        l(1, 1) += -0.5 * gamma;
        l(2, 2) += -0.5 * gamma;
    }
    return l;
}

// U(a -> b) as two midpoint exponentials over the half-intervals.
Eigen::Matrix4cd interval_propagator(const SystemHamiltonian& h, double a, double b,
                                     double gamma) {
    const double half = 0.5 * (b - a);
    const Eigen::Matrix4cd u1 = (liouvillian(h, a + 0.5 * half, gamma) * half).exp();
    const Eigen::Matrix4cd u2 = (liouvillian(h, a + 1.5 * half, gamma) * half).exp();
    return u2 * u1;
}

struct StepPropagators {
    Eigen::Matrix4cd initial;                // t0 -> first midpoint
    std::vector<Eigen::Matrix4cd> full;      // [k-2]: midpoint k-1 -> midpoint k, k = 2..N
    std::vector<Eigen::Matrix4cd> closing;   // [k-1]: midpoint k -> t_k, k = 1..N
};

StepPropagators make_propagators(const SystemHamiltonian& h, const SolverConfig& cfg,
                                 double t0, int n) {
    StepPropagators p;
    const double dt = cfg.dt_ps;
    p.initial = interval_propagator(h, t0, t0 + 0.5 * dt, cfg.gamma_per_ps);
    p.full.reserve(static_cast<size_t>(std::max(0, n - 1)));
    p.closing.reserve(static_cast<size_t>(n));
    for (int k = 2; k <= n; ++k)
        p.full.push_back(interval_propagator(h, t0 + (k - 1.5) * dt, t0 + (k - 0.5) * dt,
                                             cfg.gamma_per_ps));
    for (int k = 1; k <= n; ++k)
        p.closing.push_back(interval_propagator(h, t0 + (k - 0.5) * dt, t0 + k * dt,
                                                cfg.gamma_per_ps));
    return p;
}

TwoLevelState hermitized(const Eigen::Vector4cd& v, double* drift) {
    TwoLevelState s = TwoLevelState::from_vector(v);
    if (drift) *drift = std::max(*drift, s.hermiticity_deviation());
    s.rho = 0.5 * (s.rho + s.rho.adjoint().eval());
    return s;
}

}  // namespace

double final_population(const Trajectory& trajectory) {
    if (trajectory.states.empty()) throw solver_error("final_population: empty trajectory");
    const double p = trajectory.final_state().population_x();
    if (p < -1e-6 || p > 1.0 + 1e-6)
        throw solver_error("final_population: population " + std::to_string(p) +
                           " outside [0, 1] beyond tolerance");
    return std::min(std::max(p, 0.0), 1.0);
}

Trajectory propagate(const SystemHamiltonian& h, const std::vector<ProcessTensor>& baths,
                     const SolverConfig& cfg, const TwoLevelState& rho0,
                     double t0_ps, int n_steps) {
    cfg.validate();
    if (n_steps < 1) throw config_error("propagate: need at least one step");
    rho0.validate();
    if (baths.empty()) return propagate_closed(h, cfg, rho0, t0_ps, n_steps);

    ProcessTensor pt = combine_process_tensors(baths);
    if (pt.dt_ps != cfg.dt_ps || pt.steps != n_steps || pt.memory_steps != cfg.memory_steps)
        throw config_error("propagate: process tensors do not match the solver grid");

    Trajectory traj;
    traj.diagnostics.quadrature_error = pt.quadrature_error;
    traj.times_ps.reserve(static_cast<size_t>(n_steps) + 1);
    traj.states.reserve(static_cast<size_t>(n_steps) + 1);
    traj.times_ps.push_back(t0_ps);
    traj.states.push_back(rho0);

    const StepPropagators props = make_propagators(h, cfg, t0_ps, n_steps);

    HistoryMps mps;
    {
        const Eigen::Vector4cd v0 = props.initial * rho0.to_vector();
        mps.init(pt.self_factor.cwiseProduct(v0));
    }

    for (int k = 1; k <= n_steps; ++k) {
        if (k > 1) {
            HistoryMps::StepStats st;
            try {
                st = mps.step(props.full[static_cast<size_t>(k - 2)], pt.self_factor,
                              pt.pair_factors, cfg.memory_steps, cfg.svd_tol, cfg.max_bond);
            } catch (const solver_error& e) {
                throw solver_error(std::string(e.what()) + " (at step " + std::to_string(k) +
                                   ", bond profile max " + std::to_string(mps.max_bond()) +
                                   ", truncation error " +
                                   std::to_string(traj.diagnostics.truncation_error) + ")");
            }
            traj.diagnostics.max_bond = std::max(traj.diagnostics.max_bond, st.max_bond);
            traj.diagnostics.truncation_error += std::sqrt(std::max(st.discarded_weight, 0.0));
        }

        Eigen::Vector4cd mid = mps.marginal();
        const std::complex<double> tr = mid[0] + mid[3];
        const double drift = std::abs(tr - std::complex<double>(1.0, 0.0));
        traj.diagnostics.max_trace_drift = std::max(traj.diagnostics.max_trace_drift, drift);
        if (drift > cfg.trace_abort_tol)
            throw solver_error("propagate: trace drift " + std::to_string(drift) +
                               " at step " + std::to_string(k));
        mps.scale(1.0 / tr);
        mid /= tr;

        const Eigen::Vector4cd v = props.closing[static_cast<size_t>(k - 1)] * mid;
        traj.times_ps.push_back(t0_ps + k * cfg.dt_ps);
        traj.states.push_back(hermitized(v, &traj.diagnostics.max_hermiticity_drift));
    }
    return traj;
}

Trajectory propagate_brute_force(const SystemHamiltonian& h,
                                 const std::vector<SpectralDensity>& baths,
                                 double temperature_K, const SolverConfig& cfg,
                                 const TwoLevelState& rho0, double t0_ps, int n_steps) {
    cfg.validate();
    if (n_steps < 1) throw config_error("propagate_brute_force: need at least one step");
    if (n_steps > 14)
        throw config_error("propagate_brute_force: path count 4^N is intractable beyond N = 14");
    rho0.validate();

    std::vector<ProcessTensor> pts;
    for (const auto& j : baths)
        pts.push_back(build_process_tensor(j, temperature_K, cfg, n_steps));
    ProcessTensor pt = pts.empty()
                           ? build_process_tensor(SpectralDensity::la(0.0, 1.0), 0.0, cfg, n_steps)
                           : combine_process_tensors(pts);

    const StepPropagators props = make_propagators(h, cfg, t0_ps, n_steps);
    const int kmem = std::min(cfg.memory_steps, n_steps);

    std::vector<Eigen::Vector4cd> acc(static_cast<size_t>(n_steps) + 1, Eigen::Vector4cd::Zero());

    std::vector<int> path(static_cast<size_t>(n_steps) + 1, 0);
    const Eigen::Vector4cd v0 = props.initial * rho0.to_vector();

    std::function<void(int, std::complex<double>)> dfs =
        [&](int k, std::complex<double> amplitude) {
            acc[static_cast<size_t>(k)][path[static_cast<size_t>(k)]] += amplitude;
            if (k == n_steps) return;
            for (int w = 0; w < 4; ++w) {
                std::complex<double> f =
                    pt.self_factor[w] * props.full[static_cast<size_t>(k - 1)](w, path[static_cast<size_t>(k)]);
                const int lags = std::min(k, kmem);
                for (int j = 1; j <= lags; ++j)
                    f *= pt.pair_factors[static_cast<size_t>(j - 1)](w, path[static_cast<size_t>(k + 1 - j)]);
                path[static_cast<size_t>(k + 1)] = w;
                dfs(k + 1, amplitude * f);
            }
        };
    for (int w = 0; w < 4; ++w) {
        path[1] = w;
        dfs(1, pt.self_factor[w] * v0[w]);
    }

    Trajectory traj;
    traj.diagnostics.quadrature_error = pt.quadrature_error;
    traj.times_ps.push_back(t0_ps);
    traj.states.push_back(rho0);
    for (int k = 1; k <= n_steps; ++k) {
        const Eigen::Vector4cd v = props.closing[static_cast<size_t>(k - 1)] * acc[static_cast<size_t>(k)];
        traj.times_ps.push_back(t0_ps + k * cfg.dt_ps);
        traj.states.push_back(hermitized(v, &traj.diagnostics.max_hermiticity_drift));
        traj.diagnostics.max_trace_drift =
            std::max(traj.diagnostics.max_trace_drift,
                     std::abs(v[0] + v[3] - std::complex<double>(1.0, 0.0)));
    }
    return traj;
}

Trajectory propagate_closed(const SystemHamiltonian& h, const SolverConfig& cfg,
                            const TwoLevelState& rho0, double t0_ps, int n_steps) {
    cfg.validate();
    if (n_steps < 1) throw config_error("propagate_closed: need at least one step");
    rho0.validate();

    const StepPropagators props = make_propagators(h, cfg, t0_ps, n_steps);
    Trajectory traj;
    traj.times_ps.push_back(t0_ps);
    traj.states.push_back(rho0);

    Eigen::Vector4cd mid = props.initial * rho0.to_vector();
    for (int k = 1; k <= n_steps; ++k) {
        if (k > 1) mid = props.full[static_cast<size_t>(k - 2)] * mid;
        const Eigen::Vector4cd v = props.closing[static_cast<size_t>(k - 1)] * mid;
        traj.times_ps.push_back(t0_ps + k * cfg.dt_ps);
        traj.states.push_back(hermitized(v, &traj.diagnostics.max_hermiticity_drift));
        traj.diagnostics.max_trace_drift =
            std::max(traj.diagnostics.max_trace_drift,
                     std::abs(v[0] + v[3] - std::complex<double>(1.0, 0.0)));
    }
    return traj;
}

Eigen::Matrix4cd system_propagator(const SystemHamiltonian& h, double t_start_ps,
                                   double dt_ps, double gamma_per_ps) {
    return interval_propagator(h, t_start_ps, t_start_ps + dt_ps, gamma_per_ps);
}

}  // namespace phonsim
