#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "phonsim/spectral_density.hpp"

namespace phonsim {

enum class SolverKind { ProcessTensor, BruteForcePathSum, ClosedSystem };

struct SolverConfig {
    double dt_ps = 0.0625;
    int memory_steps = 32;      // K: pair influence beyond K steps is dropped
    double svd_tol = 1e-7;      // relative singular-value threshold; 0 keeps
                                // everything above machine precision
    double gamma_per_ps = 0.0;  // Lindblad pure-dephasing rate
    SolverKind kind = SolverKind::ProcessTensor;
    int max_bond = 1024;        // hard cap; exceeding it aborts the solve
    double trace_abort_tol = 1e-4;  // per-step pre-renormalization drift limit

    void validate() const;
};

// Discretized influence functional of one bath on the dt grid: the pairwise
// coefficients
//
//   eta_0  = int dw J/w^2 [coth(w/2wT)(1 - cos w dt) - i (w dt - sin w dt)]
//   eta_dk = int dw J/w^2 4 sin^2(w dt/2) [coth(w/2wT) cos(w dk dt) - i sin(w dk dt)]
//
// exponentiated into lookup tables over Liouville indices. The path weight
// between the step at lag dk and the current step u is
//   pair[dk](u, s) = exp(-(s+(u)-s-(u)) (eta_dk s+(s) - conj(eta_dk) s-(s)))
// and self(u) the dk = 0 factor. Influence beyond memory_steps is dropped.
struct ProcessTensor {
    std::string label;
    double dt_ps = 0.0;
    int steps = 0;
    int memory_steps = 0;
    double svd_tol = 0.0;
    double temperature_K = 0.0;
    std::vector<std::complex<double>> eta;         // eta[dk], dk = 0..K
    Eigen::Vector4cd self_factor;                  // dk = 0
    std::vector<Eigen::Matrix4cd> pair_factors;    // [dk-1] for dk = 1..K
    double quadrature_error = 0.0;

    bool compatible_with(const ProcessTensor& other) const;
};

ProcessTensor build_process_tensor(const SpectralDensity& j, double temperature_K,
                                   const SolverConfig& cfg, int n_steps);

// Elementwise product of influence factors. Exact for baths sharing the
// coupling operator |X><X|; equals a single tensor built from the summed
// spectral density.
ProcessTensor combine_process_tensors(const std::vector<ProcessTensor>& tensors);

}  // namespace phonsim
