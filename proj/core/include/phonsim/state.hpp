#pragma once

#include <Eigen/Dense>

namespace phonsim {

// 2x2 density matrix of the {|G>, |X>} system. The Liouville vectorization
// used throughout the solvers is row-major: index a = 2*i + j for rho_ij,
// i.e. [rho_GG, rho_GX, rho_XG, rho_XX]. The coupling operator |X><X| then
// acts with eigenvalue s_plus(a) = a >> 1 from the left and
// s_minus(a) = a & 1 from the right.
struct TwoLevelState {
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();

    static TwoLevelState ground();
    static TwoLevelState excited();
    static TwoLevelState maximally_mixed();
    static TwoLevelState from_vector(const Eigen::Vector4cd& v);

    Eigen::Vector4cd to_vector() const;
    double population_x() const;

    double trace_deviation() const;     // |tr(rho) - 1|
    double hermiticity_deviation() const;
    double min_eigenvalue() const;
    void validate(double tol = 1e-8) const;
};

inline constexpr int s_plus(int a) { return a >> 1; }
inline constexpr int s_minus(int a) { return a & 1; }

}  // namespace phonsim
