#include "phonsim/state.hpp"

#include <Eigen/Eigenvalues>

#include "phonsim/errors.hpp"

namespace phonsim {

TwoLevelState TwoLevelState::ground() {
    TwoLevelState s;
    s.rho(0, 0) = 1.0;
    return s;
}

TwoLevelState TwoLevelState::excited() {
    TwoLevelState s;
    s.rho(1, 1) = 1.0;
    return s;
}

TwoLevelState TwoLevelState::maximally_mixed() {
    TwoLevelState s;
    s.rho = 0.5 * Eigen::Matrix2cd::Identity();
    return s;
}

TwoLevelState TwoLevelState::from_vector(const Eigen::Vector4cd& v) {
    TwoLevelState s;
    s.rho << v[0], v[1], v[2], v[3];
    return s;
}

Eigen::Vector4cd TwoLevelState::to_vector() const {
    Eigen::Vector4cd v;
    v << rho(0, 0), rho(0, 1), rho(1, 0), rho(1, 1);
    return v;
}

double TwoLevelState::population_x() const {
    return rho(1, 1).real();
}

double TwoLevelState::trace_deviation() const {
    return std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
}

double TwoLevelState::hermiticity_deviation() const {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double TwoLevelState::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(0.5 * (rho + rho.adjoint()));
    return es.eigenvalues().minCoeff();
}

void TwoLevelState::validate(double tol) const {
    if (trace_deviation() > tol)
        throw solver_error("density matrix trace deviates by " + std::to_string(trace_deviation()));
    if (hermiticity_deviation() > tol)
        throw solver_error("density matrix is not Hermitian within tolerance");
    if (min_eigenvalue() < -tol)
        throw solver_error("density matrix has negative eigenvalue " +
                           std::to_string(min_eigenvalue()));
}

}  // namespace phonsim
