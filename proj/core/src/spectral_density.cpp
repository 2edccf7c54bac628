#include "phonsim/spectral_density.hpp"

#include <cmath>

#include "phonsim/constants.hpp"
#include "phonsim/errors.hpp"
#include "phonsim/quadrature.hpp"

namespace phonsim {

std::string mode_name(ModeKind kind) {
    switch (kind) {
        case ModeKind::LA: return "LA";
        case ModeKind::SM1: return "SM1";
        case ModeKind::SM2: return "SM2";
        case ModeKind::BM: return "BM";
    }
    return "?";
}

SpectralDensity SpectralDensity::la(double alpha_ps, double omega_c) {
    if (!(alpha_ps >= 0.0) || !(omega_c > 0.0))
        throw config_error("SpectralDensity::la: alpha >= 0 and omega_c > 0 required");
    SpectralDensity j;
    j.kind = ModeKind::LA;
    j.alpha_ps = alpha_ps;
    j.omega_c = omega_c;
    return j;
}

SpectralDensity SpectralDensity::shear(ModeKind which, double alpha_ps, double omega_c,
                                       double gap, double velocity_ratio) {
    if (which != ModeKind::SM1 && which != ModeKind::SM2)
        throw config_error("SpectralDensity::shear: mode must be SM1 or SM2");
    if (!(alpha_ps >= 0.0) || !(omega_c > 0.0) || !(gap >= 0.0) || !(velocity_ratio > 0.0))
        throw config_error("SpectralDensity::shear: invalid parameters");
    SpectralDensity j;
    j.kind = which;
    j.alpha_ps = alpha_ps;
    j.omega_c = omega_c;
    j.gap = gap;
    j.velocity_ratio = velocity_ratio;
    return j;
}

SpectralDensity SpectralDensity::breathing(double alpha_ps, double omega_c,
                                           double omega_bm, double epsilon, double xi_bm) {
    if (!(alpha_ps >= 0.0) || !(omega_c > 0.0) || !(omega_bm > 0.0) || !(epsilon > 0.0) ||
        !(xi_bm >= 0.0))
        throw config_error("SpectralDensity::breathing: invalid parameters");
    SpectralDensity j;
    j.kind = ModeKind::BM;
    j.alpha_ps = alpha_ps;
    j.omega_c = omega_c;
    j.omega_bm = omega_bm;
    j.epsilon = epsilon;
    j.xi_bm = xi_bm;
    return j;
}

double SpectralDensity::value(double omega) const {
    if (omega < 0.0)
        throw data_error("SpectralDensity::value: negative frequency");
    switch (kind) {
        case ModeKind::LA:
            return alpha_ps * omega * omega * std::exp(-omega * omega / (omega_c * omega_c));
        case ModeKind::SM1:
        case ModeKind::SM2: {
            if (omega < gap) return 0.0;
            const double r2 = velocity_ratio * velocity_ratio;
            const double x = omega * omega - gap * gap;
            return alpha_ps * x / (r2 * r2) * std::exp(-x / (r2 * omega_c * omega_c));
        }
        case ModeKind::BM: {
            const double wc2 = omega_c * omega_c;
            const double prefactor = xi_bm * alpha_ps * wc2 * wc2 / (2.0 * omega_bm);
            const double u = (omega - omega_bm) / epsilon;
            return prefactor * std::exp(-u * u) / (std::sqrt(constants::pi) * epsilon);
        }
    }
    return 0.0;
}

double SpectralDensity::support_max() const {
    switch (kind) {
        case ModeKind::LA:
            return 8.0 * omega_c;
        case ModeKind::SM1:
        case ModeKind::SM2: {
            const double r2 = velocity_ratio * velocity_ratio;
            return std::sqrt(gap * gap + 64.0 * r2 * omega_c * omega_c);
        }
        case ModeKind::BM:
            return omega_bm + 9.0 * epsilon;
    }
    return 0.0;
}

bool SpectralDensity::is_null() const {
    return alpha_ps == 0.0 || (kind == ModeKind::BM && xi_bm == 0.0);
}

namespace {

Moment weighted_moment(const SpectralDensity& j, int inverse_power, double rel_tol) {
    if (j.is_null()) return {0.0, 0.0};
    const double lo = (j.kind == ModeKind::SM1 || j.kind == ModeKind::SM2) ? j.gap : 0.0;
    auto f = [&](double w) {
        if (w <= 0.0) {
            // J ~ w^2 near zero for LA, so J/w^2 has a finite limit there.
            if (j.kind == ModeKind::LA && inverse_power == 2) return j.alpha_ps;
            if (j.kind == ModeKind::LA && inverse_power == 1) return 0.0;
            return 0.0;
        }
        double v = j.value(w);
        for (int p = 0; p < inverse_power; ++p) v /= w;
        return v;
    };
    QuadratureResult q = integrate(f, lo, j.support_max(), rel_tol, 1e-14);
    if (!q.converged)
        throw solver_error("spectral moment quadrature did not converge; achieved error " +
                           std::to_string(q.error_estimate));
    return {q.value, q.error_estimate};
}

}  // namespace

Moment huang_rhys(const SpectralDensity& j, double rel_tol) {
    return weighted_moment(j, 2, rel_tol);
}

Moment polaron_shift(const SpectralDensity& j, double rel_tol) {
    return weighted_moment(j, 1, rel_tol);
}

double total_polaron_shift(const std::vector<SpectralDensity>& baths) {
    double total = 0.0;
    for (const auto& j : baths) total += polaron_shift(j).value;
    return total;
}

}  // namespace phonsim
