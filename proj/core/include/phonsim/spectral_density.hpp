#pragma once

#include <string>
#include <vector>

namespace phonsim {

enum class ModeKind { LA, SM1, SM2, BM };

std::string mode_name(ModeKind kind);

// One phonon mode's coupling spectrum J(omega) in rad^2/ps. All frequencies
// in rad/ps, the coupling constant alpha in ps.
//
//   LA:  J(w) = alpha * w^2 * exp(-w^2 / wc^2)
//   SM:  J(w) = alpha * (w^2 - M^2) / r^4 * exp(-(w^2 - M^2) / (r^2 wc^2)),  w >= M
//   BM:  J(w) = xi * alpha * wc^4 / (2 w_BM) * exp(-((w - w_BM)/eps)^2) / (sqrt(pi) eps)
struct SpectralDensity {
    ModeKind kind = ModeKind::LA;
    double alpha_ps = 0.0;
    double omega_c = 0.0;        // LA cutoff, also enters SM and BM prefactors
    double gap = 0.0;            // SM gap frequency M at the zone center
    double velocity_ratio = 1.0; // SM: r = c_i / c
    double omega_bm = 0.0;       // BM center
    double epsilon = 0.0;        // BM Gaussian width
    double xi_bm = 1.0;          // BM dimensionless weight

    static SpectralDensity la(double alpha_ps, double omega_c);
    static SpectralDensity shear(ModeKind which, double alpha_ps, double omega_c,
                                 double gap, double velocity_ratio);
    static SpectralDensity breathing(double alpha_ps, double omega_c,
                                     double omega_bm, double epsilon, double xi_bm);

    // Closed-form evaluation; throws on negative frequency.
    double value(double omega) const;

    // Frequency above which J is numerically zero; upper quadrature limit.
    double support_max() const;

    bool is_null() const;
};

struct Moment {
    double value = 0.0;
    double error_estimate = 0.0;
};

// Huang-Rhys factor S = int_0^inf J(w)/w^2 dw (dimensionless).
Moment huang_rhys(const SpectralDensity& j, double rel_tol = 1e-8);

// Polaron shift D = int_0^inf J(w)/w dw (rad/ps).
Moment polaron_shift(const SpectralDensity& j, double rel_tol = 1e-8);

double total_polaron_shift(const std::vector<SpectralDensity>& baths);

}  // namespace phonsim
