#pragma once

#include <Eigen/Dense>
#include <vector>

namespace phonsim {

// Matrix-product representation of the augmented path tensor
// A(w_k, w_{k-1}, ..., w_{k-m+1}) over the memory window, newest variable
// first. Each site has physical dimension 4 (Liouville index); site j is
// stored as a (left * 4) x right matrix with rows grouped as (left, phys).
class HistoryMps {
public:
    struct StepStats {
        double discarded_weight = 0.0;  // sum over SVDs of relative discarded sigma^2
        int max_bond = 1;
    };

    // Start the window with the single-site tensor A_1(w_1).
    void init(const Eigen::Vector4cd& a1);

    // One influence-functional step: grows the window by one site (dropping
    // the oldest one once the memory cutoff K is reached), attaching the
    // full-step propagator V(u, s), the self factor I_0(u) and the pair
    // factors I_dk(u, s), then compresses by a QR + SVD sweep.
    StepStats step(const Eigen::Matrix4cd& propagator,
                   const Eigen::Vector4cd& self_factor,
                   const std::vector<Eigen::Matrix4cd>& pair_factors,
                   int memory_steps, double svd_tol, int max_bond);

    // Reduced state: sum over all history indices, leaving the newest one.
    Eigen::Vector4cd marginal() const;

    // Rescale the represented tensor by a scalar (trace renormalization).
    void scale(const std::complex<double>& factor);

    int length() const { return static_cast<int>(sites_.size()); }
    int max_bond() const;

private:
    struct Site {
        Eigen::MatrixXcd m;  // (left * 4) x right
        int left = 1;
        int right = 1;
    };

    double compress(double svd_tol, int max_bond);

    std::vector<Site> sites_;
};

}  // namespace phonsim
