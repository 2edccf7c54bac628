#pragma once

#include <vector>

#include "phonsim/hamiltonian.hpp"
#include "phonsim/influence.hpp"
#include "phonsim/state.hpp"

namespace phonsim {

struct PropagationDiagnostics {
    int max_bond = 1;
    double truncation_error = 0.0;   // accumulated discarded singular-value weight
    double max_trace_drift = 0.0;    // worst per-step pre-renormalization drift
    double max_hermiticity_drift = 0.0;
    double quadrature_error = 0.0;
};

struct Trajectory {
    std::vector<double> times_ps;      // t_0 .. t_N
    std::vector<TwoLevelState> states; // same length
    PropagationDiagnostics diagnostics;

    const TwoLevelState& final_state() const { return states.back(); }
};

// Excited-state population at the end of the trajectory, clamped to [0, 1]
// when within numerical tolerance of the bounds.
double final_population(const Trajectory& trajectory);

// Influence-functional propagation over [t0, t0 + n_steps * dt]. The path
// variables live at step midpoints; the system propagator (including the
// Lindblad dephasing term) is split symmetrically around them. All process
// tensors must share (dt, steps, memory); they combine exactly because every
// bath couples through |X><X|.
Trajectory propagate(const SystemHamiltonian& h, const std::vector<ProcessTensor>& baths,
                     const SolverConfig& cfg, const TwoLevelState& rho0,
                     double t0_ps, int n_steps);

// Exact path summation over all 4^N Liouville paths with the identical
// discretized influence functional and no compression. Verification oracle;
// cost grows as 4^N, so N is capped.
Trajectory propagate_brute_force(const SystemHamiltonian& h,
                                 const std::vector<SpectralDensity>& baths,
                                 double temperature_K, const SolverConfig& cfg,
                                 const TwoLevelState& rho0, double t0_ps, int n_steps);

// No baths: sequential application of the same split-step system propagators.
Trajectory propagate_closed(const SystemHamiltonian& h, const SolverConfig& cfg,
                            const TwoLevelState& rho0, double t0_ps, int n_steps);

// Liouville propagator exp(L dt) for the system Hamiltonian evaluated at
// the subinterval midpoint, including the dephasing term
// gamma (P rho P - 1/2 {P, rho}) with P = |X><X|. Exposed for tests.
Eigen::Matrix4cd system_propagator(const SystemHamiltonian& h, double t_start_ps,
                                   double dt_ps, double gamma_per_ps);

}  // namespace phonsim
