#pragma once

#include <string>
#include <vector>

namespace phonsim {

// Tabulated phonon branch near the zone center: |k| in 1/Angstrom
// (non-negative, strictly increasing), omega in rad/ps.
struct DispersionTable {
    std::string branch;
    std::vector<double> k_inv_angstrom;
    std::vector<double> omega_rad_per_ps;

    void validate() const;
    size_t size() const { return k_inv_angstrom.size(); }
};

// Interlayer mode energies at the zone center as a function of the
// interlayer W-W distance (Angstrom, strictly increasing rows; energies in
// meV, strictly decreasing with distance).
struct PhononModeCatalog {
    std::vector<double> d_angstrom;
    std::vector<double> e_sm_meV;
    std::vector<double> e_bm_meV;

    void validate() const;
};

struct CatalogEntry {
    double e_sm_meV = 0.0;
    double e_bm_meV = 0.0;
};

// Linear sound velocity (m/s) from the small-k window of a linear branch,
// least-squares slope of omega = c |k| through the origin.
double fit_la_velocity(const DispersionTable& table, double k_window_inv_angstrom = 1e30);

struct ShearDispersionFit {
    double velocity_m_per_s = 0.0;
    double gap_rad_per_ps = 0.0;   // omega at the zone center
    double residual_norm = 0.0;
    int iterations = 0;
};

// Damped least-squares fit of omega = sqrt(c^2 k^2 + M^2).
ShearDispersionFit fit_sm_dispersion(const DispersionTable& table);

// Linear interpolation between catalog rows; no extrapolation.
CatalogEntry catalog_lookup(const PhononModeCatalog& catalog, double d_angstrom);

}  // namespace phonsim
