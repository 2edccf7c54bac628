#include "phonsim/dispersion.hpp"

#include <algorithm>
#include <cmath>

#include "phonsim/constants.hpp"
#include "phonsim/errors.hpp"
#include "phonsim/levmar.hpp"

namespace phonsim {

void DispersionTable::validate() const {
    if (k_inv_angstrom.size() != omega_rad_per_ps.size())
        throw data_error("dispersion table: column length mismatch");
    for (size_t i = 0; i < k_inv_angstrom.size(); ++i) {
        if (k_inv_angstrom[i] < 0.0 || omega_rad_per_ps[i] < 0.0)
            throw data_error("dispersion table: negative |k| or omega");
        if (i > 0 && k_inv_angstrom[i] <= k_inv_angstrom[i - 1])
            throw data_error("dispersion table: |k| not strictly increasing");
    }
}

void PhononModeCatalog::validate() const {
    if (d_angstrom.size() != e_sm_meV.size() || d_angstrom.size() != e_bm_meV.size())
        throw data_error("mode catalog: column length mismatch");
    for (size_t i = 1; i < d_angstrom.size(); ++i) {
        if (d_angstrom[i] <= d_angstrom[i - 1])
            throw data_error("mode catalog: distances not strictly increasing");
        if (e_sm_meV[i] >= e_sm_meV[i - 1] || e_bm_meV[i] >= e_bm_meV[i - 1])
            throw data_error("mode catalog: energies must decrease with distance");
    }
}

double fit_la_velocity(const DispersionTable& table, double k_window_inv_angstrom) {
    table.validate();
    double skw = 0.0, skk = 0.0;
    int used = 0;
    for (size_t i = 0; i < table.size(); ++i) {
        const double k = table.k_inv_angstrom[i];
        if (k <= 0.0 || k > k_window_inv_angstrom) continue;
        skw += k * table.omega_rad_per_ps[i];
        skk += k * k;
        ++used;
    }
    if (used < 2) throw data_error("fit_la_velocity: need at least 2 nonzero-|k| samples in window");
    const double c_angstrom_per_ps = skw / skk;
    return c_angstrom_per_ps / constants::m_per_s_to_angstrom_per_ps;
}

ShearDispersionFit fit_sm_dispersion(const DispersionTable& table) {
    table.validate();
    const size_t n = table.size();
    if (n < 3) throw data_error("fit_sm_dispersion: need at least 3 samples");

    // Seeds: gap from the smallest-|k| sample, velocity from the tail slope.
    const double m0 = table.omega_rad_per_ps.front();
    const double k_last = table.k_inv_angstrom.back();
    const double w_last = table.omega_rad_per_ps.back();
    double c0 = k_last > 0.0 ? std::sqrt(std::max(w_last * w_last - m0 * m0, 1e-12)) / k_last : 1.0;
    if (!(c0 > 0.0)) c0 = 1.0;

    auto residuals = [&](const Eigen::VectorXd& p) {
        Eigen::VectorXd r(n);
        for (size_t i = 0; i < n; ++i) {
            const double k = table.k_inv_angstrom[i];
            const double model = std::sqrt(p[0] * p[0] * k * k + p[1] * p[1]);
            r[static_cast<int>(i)] = model - table.omega_rad_per_ps[i];
        }
        return r;
    };
    Eigen::VectorXd p0(2);
    p0 << c0, m0;
    LevMarResult fit = levmar_fit(residuals, p0);
    if (!fit.converged)
        throw solver_error("fit_sm_dispersion: no convergence, residual norm " +
                           std::to_string(fit.residual_norm));
    ShearDispersionFit out;
    out.velocity_m_per_s = std::abs(fit.parameters[0]) / constants::m_per_s_to_angstrom_per_ps;
    out.gap_rad_per_ps = std::abs(fit.parameters[1]);
    out.residual_norm = fit.residual_norm;
    out.iterations = fit.iterations;
    return out;
}

CatalogEntry catalog_lookup(const PhononModeCatalog& catalog, double d_angstrom) {
    catalog.validate();
    if (catalog.d_angstrom.empty()) throw data_error("catalog_lookup: empty catalog");
    const auto& ds = catalog.d_angstrom;
    if (d_angstrom < ds.front() || d_angstrom > ds.back())
        throw data_error("catalog_lookup: distance outside tabulated range");
    auto it = std::lower_bound(ds.begin(), ds.end(), d_angstrom);
    const size_t hi = std::min(static_cast<size_t>(it - ds.begin()), ds.size() - 1);
    if (ds[hi] == d_angstrom)
        return {catalog.e_sm_meV[hi], catalog.e_bm_meV[hi]};
    const size_t lo = hi - 1;
    const double f = (d_angstrom - ds[lo]) / (ds[hi] - ds[lo]);
    return {catalog.e_sm_meV[lo] + f * (catalog.e_sm_meV[hi] - catalog.e_sm_meV[lo]),
            catalog.e_bm_meV[lo] + f * (catalog.e_bm_meV[hi] - catalog.e_bm_meV[lo])};
}

}  // namespace phonsim
