#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "phonsim/influence.hpp"
#include "phonsim/spectral_density.hpp"

namespace phonsim {

// Bath composition for a sweep: which modes are enabled and their physical
// parameters. An empty mode list means a closed-system map.
struct BathSetup {
    std::vector<ModeKind> modes;
    double alpha_ps = 0.29;
    double omega_c_rad_per_ps = 2.03;
    double e_sm_mev = 1.9;             // shear-mode energy at the zone center
    double e_bm_mev = 3.2;             // breathing-mode center energy
    double r_sm1 = 0.64;               // shear velocity ratios c_i / c
    double r_sm2 = 0.64;
    double xi_bm = 1.0;
    double bm_width_rad_per_ps = 0.2;
    double temperature_K = 4.0;
    double d_ww_angstrom = 0.0;        // informational (0 when energies set directly)

    std::vector<SpectralDensity> spectral_densities() const;
};

struct SweepConfig {
    double detuning_min_nm = -3.4;
    double detuning_max_nm = 0.0;
    int detuning_count = 35;
    double theta_min_pi = 0.0;
    double theta_max_pi = 8.0;
    int theta_count = 33;
    double t_p_ps = 2.65;
    double lambda_x_nm = 800.0;
    BathSetup bath;
    SolverConfig solver;
    int jobs = 1;
    double budget_seconds = 0.0;  // 0 disables the ceiling

    void validate() const;
    std::string canonical() const;
    std::uint64_t fingerprint() const;

    int n_steps() const;  // covers [-3 t_p, +3 t_p] at the solver step
    double estimated_cost_seconds() const;
};

struct CellDiagnostics {
    bool valid = false;
    int max_bond = 1;
    double truncation_error = 0.0;
    std::string error;
};

struct PopulationMap {
    std::vector<double> detuning_nm;
    std::vector<double> theta_rad;
    Eigen::MatrixXd population;          // theta_count x detuning_count
    std::vector<CellDiagnostics> cells;  // row-major, same shape
    std::uint64_t fingerprint = 0;
    int invalid_cells = 0;

    const CellDiagnostics& cell(int theta_idx, int detuning_idx) const;
};

// One propagation per grid cell, parallel over a pool of cfg.jobs threads;
// results are written by cell index, so the map is independent of scheduling.
PopulationMap run_sweep(const SweepConfig& cfg);

class Config;

// Build a SweepConfig from a parsed config file. Pulse duration comes from
// pulse.t_p_ps or pulse.fwhm_nm (mutually exclusive); mode energies either
// directly (bath.e_sm_mev / bath.e_bm_mev) or through bath.d_ww_angstrom plus
// bath.catalog_file. units.frequency_convention = ordinary multiplies the
// THz-valued parameters (omega_c, BM width) by 2*pi.
SweepConfig load_sweep_config(const Config& cfg);

struct MapExtremum {
    double detuning_nm = 0.0;
    double population = 0.0;
    bool boundary = false;
};

// Local maxima of the detuning slice at the given pulse area (which must lie
// on the grid), after 3-point smoothing.
std::vector<MapExtremum> map_extrema(const PopulationMap& map, double theta_rad);

}  // namespace phonsim
