#include "phonsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "phonsim/config.hpp"
#include "phonsim/constants.hpp"
#include "phonsim/errors.hpp"
#include "phonsim/hamiltonian.hpp"
#include "phonsim/propagate.hpp"
#include "phonsim/table_io.hpp"
#include "phonsim/units.hpp"

namespace phonsim {

std::vector<SpectralDensity> BathSetup::spectral_densities() const {
    std::vector<SpectralDensity> out;
    for (ModeKind m : modes) {
        switch (m) {
            case ModeKind::LA:
                out.push_back(SpectralDensity::la(alpha_ps, omega_c_rad_per_ps));
                break;
            case ModeKind::SM1:
            case ModeKind::SM2: {
                const double gap = energy_to_angular(Energy{e_sm_mev}).rad_per_ps;
                out.push_back(SpectralDensity::shear(m, alpha_ps, omega_c_rad_per_ps, gap,
                                                     m == ModeKind::SM1 ? r_sm1 : r_sm2));
                break;
            }
            case ModeKind::BM: {
                const double center = energy_to_angular(Energy{e_bm_mev}).rad_per_ps;
                out.push_back(SpectralDensity::breathing(alpha_ps, omega_c_rad_per_ps, center,
                                                         bm_width_rad_per_ps, xi_bm));
                break;
            }
        }
    }
    return out;
}

void SweepConfig::validate() const {
    solver.validate();
    if (detuning_count < 1 || theta_count < 1)
        throw config_error("sweep: empty grid");
    if (detuning_count > 1 && !(detuning_max_nm > detuning_min_nm))
        throw config_error("sweep: detuning grid must be strictly increasing");
    if (theta_count > 1 && !(theta_max_pi > theta_min_pi))
        throw config_error("sweep: pulse-area grid must be strictly increasing");
    if (theta_min_pi < 0.0) throw config_error("sweep: pulse area must be non-negative");
    if (!(t_p_ps > 0.0)) throw config_error("sweep: pulse duration must be positive");
    if (!(lambda_x_nm > 0.0)) throw config_error("sweep: emitter wavelength must be positive");
    if (jobs < 1) throw config_error("sweep: jobs must be >= 1");
    if (bath.temperature_K < 0.0) throw config_error("sweep: negative temperature");
}

int SweepConfig::n_steps() const {
    return std::max(1, static_cast<int>(std::lround(6.0 * t_p_ps / solver.dt_ps)));
}

double SweepConfig::estimated_cost_seconds() const {
    const double cells = static_cast<double>(detuning_count) * theta_count;
    // Rough per-cell model: one matrix-product step costs ~ K * b^2 complex
    // multiplies; with the default truncation the bond stays modest.
    const double per_cell =
        bath.modes.empty()
            ? 2e-5 * n_steps()
            : 4e-6 * static_cast<double>(n_steps()) * std::min(solver.memory_steps, n_steps());
    return cells * per_cell;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string SweepConfig::canonical() const {
    std::string s;
    s += "detuning=" + fmt(detuning_min_nm) + "," + fmt(detuning_max_nm) + "," +
         std::to_string(detuning_count) + "\n";
    s += "theta_pi=" + fmt(theta_min_pi) + "," + fmt(theta_max_pi) + "," +
         std::to_string(theta_count) + "\n";
    s += "pulse=" + fmt(t_p_ps) + "," + fmt(lambda_x_nm) + "\n";
    s += "modes=";
    for (ModeKind m : bath.modes) s += mode_name(m) + ",";
    s += "\n";
    s += "bath=" + fmt(bath.alpha_ps) + "," + fmt(bath.omega_c_rad_per_ps) + "," +
         fmt(bath.e_sm_mev) + "," + fmt(bath.e_bm_mev) + "," + fmt(bath.r_sm1) + "," +
         fmt(bath.r_sm2) + "," + fmt(bath.xi_bm) + "," + fmt(bath.bm_width_rad_per_ps) + "," +
         fmt(bath.temperature_K) + "," + fmt(bath.d_ww_angstrom) + "\n";
    s += "solver=" + fmt(solver.dt_ps) + "," + std::to_string(solver.memory_steps) + "," +
         fmt(solver.svd_tol) + "," + fmt(solver.gamma_per_ps) + "," +
         std::to_string(solver.max_bond) + "\n";
    return s;
}

std::uint64_t SweepConfig::fingerprint() const { return fnv1a(canonical()); }

const CellDiagnostics& PopulationMap::cell(int theta_idx, int detuning_idx) const {
    return cells[static_cast<size_t>(theta_idx) * detuning_nm.size() +
                 static_cast<size_t>(detuning_idx)];
}

PopulationMap run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    if (cfg.budget_seconds > 0.0 && cfg.estimated_cost_seconds() > cfg.budget_seconds)
        throw budget_error("sweep: estimated cost " + std::to_string(cfg.estimated_cost_seconds()) +
                           " s exceeds the budget of " + std::to_string(cfg.budget_seconds) + " s");

    const int n = cfg.n_steps();
    const double t0 = -3.0 * cfg.t_p_ps;
    const std::vector<SpectralDensity> densities = cfg.bath.spectral_densities();
    const double shift = total_polaron_shift(densities);

    // Process tensors depend only on the bath and the time grid; build once
    // and share read-only across all cells.
    std::vector<ProcessTensor> tensors;
    for (const auto& j : densities)
        tensors.push_back(build_process_tensor(j, cfg.bath.temperature_K, cfg.solver, n));

    PopulationMap map;
    map.fingerprint = cfg.fingerprint();
    map.detuning_nm.resize(static_cast<size_t>(cfg.detuning_count));
    map.theta_rad.resize(static_cast<size_t>(cfg.theta_count));
    for (int j = 0; j < cfg.detuning_count; ++j)
        map.detuning_nm[static_cast<size_t>(j)] =
            cfg.detuning_count == 1
                ? cfg.detuning_min_nm
                : cfg.detuning_min_nm +
                      (cfg.detuning_max_nm - cfg.detuning_min_nm) * j / (cfg.detuning_count - 1);
    for (int i = 0; i < cfg.theta_count; ++i)
        map.theta_rad[static_cast<size_t>(i)] =
            constants::pi * (cfg.theta_count == 1
                                 ? cfg.theta_min_pi
                                 : cfg.theta_min_pi + (cfg.theta_max_pi - cfg.theta_min_pi) * i /
                                                          (cfg.theta_count - 1));
    map.population.setConstant(cfg.theta_count, cfg.detuning_count,
                               std::numeric_limits<double>::quiet_NaN());
    map.cells.assign(static_cast<size_t>(cfg.theta_count) * cfg.detuning_count, {});

    const size_t total = map.cells.size();
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t idx = next.fetch_add(1);
            if (idx >= total) return;
            const int i = static_cast<int>(idx) / cfg.detuning_count;
            const int j = static_cast<int>(idx) % cfg.detuning_count;
            CellDiagnostics& cell = map.cells[idx];
            try {
                const double dw = detuning_wavelength_to_frequency(
                                      {map.detuning_nm[static_cast<size_t>(j)], cfg.lambda_x_nm})
                                      .rad_per_ps;
                const PulseSpec pulse = PulseSpec::from_duration(
                    map.theta_rad[static_cast<size_t>(i)], cfg.t_p_ps, dw);
                const SystemHamiltonian h{pulse, shift};
                const Trajectory traj =
                    propagate(h, tensors, cfg.solver, TwoLevelState::ground(), t0, n);
                map.population(i, j) = final_population(traj);
                cell.valid = true;
                cell.max_bond = traj.diagnostics.max_bond;
                cell.truncation_error = traj.diagnostics.truncation_error;
            } catch (const std::exception& e) {
                cell.valid = false;
                cell.error = e.what();
            }
        }
    };

    const int width = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(total)));
    if (width == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < width; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const auto& c : map.cells)
        if (!c.valid) ++map.invalid_cells;
    if (static_cast<double>(map.invalid_cells) > 0.01 * static_cast<double>(total)) {
        std::string first;
        for (const auto& c : map.cells)
            if (!c.valid) { first = c.error; break; }
        throw solver_error("sweep: " + std::to_string(map.invalid_cells) + " of " +
                           std::to_string(total) + " cells failed; first error: " + first);
    }
    return map;
}

SweepConfig load_sweep_config(const Config& c) {
    SweepConfig cfg;
    cfg.detuning_min_nm = c.get_double("grid.detuning_min_nm", cfg.detuning_min_nm);
    cfg.detuning_max_nm = c.get_double("grid.detuning_max_nm", cfg.detuning_max_nm);
    cfg.detuning_count = c.get_int("grid.detuning_count", cfg.detuning_count);
    cfg.theta_min_pi = c.get_double("grid.theta_min_pi", cfg.theta_min_pi);
    cfg.theta_max_pi = c.get_double("grid.theta_max_pi", cfg.theta_max_pi);
    cfg.theta_count = c.get_int("grid.theta_count", cfg.theta_count);

    cfg.lambda_x_nm = c.get_double("pulse.lambda_x_nm", cfg.lambda_x_nm);
    const bool has_tp = c.has("pulse.t_p_ps");
    const bool has_fwhm = c.has("pulse.fwhm_nm");
    if (has_tp && has_fwhm)
        throw config_error("pulse.t_p_ps and pulse.fwhm_nm are mutually exclusive");
    if (has_fwhm)
        cfg.t_p_ps = PulseSpec::from_fwhm(0.0, c.get_double("pulse.fwhm_nm"),
                                          cfg.lambda_x_nm).t_p_ps;
    else
        cfg.t_p_ps = c.get_double("pulse.t_p_ps", cfg.t_p_ps);

    const std::string convention =
        c.get_string("units.frequency_convention", "angular");
    double wfactor = 1.0;
    if (convention == "ordinary")
        wfactor = 2.0 * constants::pi;
    else if (convention != "angular")
        throw config_error("units.frequency_convention must be angular or ordinary");

    std::vector<std::string> mode_names = c.get_list("bath.modes", {"LA"});
    if (mode_names.size() == 1 && mode_names[0] == "none") mode_names.clear();
    for (const auto& m : mode_names) {
        if (m == "LA") cfg.bath.modes.push_back(ModeKind::LA);
        else if (m == "SM1") cfg.bath.modes.push_back(ModeKind::SM1);
        else if (m == "SM2") cfg.bath.modes.push_back(ModeKind::SM2);
        else if (m == "BM") cfg.bath.modes.push_back(ModeKind::BM);
        else throw config_error("bath.modes: unknown mode `" + m + "`");
    }
    cfg.bath.alpha_ps = c.get_double("bath.alpha_ps", cfg.bath.alpha_ps);
    cfg.bath.omega_c_rad_per_ps =
        wfactor * c.get_double("bath.omega_c", cfg.bath.omega_c_rad_per_ps / wfactor);
    cfg.bath.bm_width_rad_per_ps =
        wfactor * c.get_double("bath.bm_width", cfg.bath.bm_width_rad_per_ps / wfactor);
    cfg.bath.temperature_K = c.get_double("bath.temperature_k", cfg.bath.temperature_K);
    cfg.bath.r_sm1 = c.get_double("bath.r_sm1", cfg.bath.r_sm1);
    cfg.bath.r_sm2 = c.get_double("bath.r_sm2", cfg.bath.r_sm2);
    cfg.bath.xi_bm = c.get_double("bath.xi_bm", cfg.bath.xi_bm);
    if (c.has("bath.d_ww_angstrom")) {
        if (c.has("bath.e_sm_mev") || c.has("bath.e_bm_mev"))
            throw config_error("bath.d_ww_angstrom excludes direct mode energies");
        cfg.bath.d_ww_angstrom = c.get_double("bath.d_ww_angstrom");
        const PhononModeCatalog catalog = read_catalog(c.get_string("bath.catalog_file"));
        const CatalogEntry e = catalog_lookup(catalog, cfg.bath.d_ww_angstrom);
        cfg.bath.e_sm_mev = e.e_sm_meV;
        cfg.bath.e_bm_mev = e.e_bm_meV;
    } else {
        cfg.bath.e_sm_mev = c.get_double("bath.e_sm_mev", cfg.bath.e_sm_mev);
        cfg.bath.e_bm_mev = c.get_double("bath.e_bm_mev", cfg.bath.e_bm_mev);
    }

    cfg.solver.dt_ps = c.get_double("solver.dt_ps", cfg.t_p_ps / 40.0);
    cfg.solver.memory_steps = c.get_int("solver.memory_steps", cfg.solver.memory_steps);
    cfg.solver.svd_tol = c.get_double("solver.svd_tol", cfg.solver.svd_tol);
    cfg.solver.gamma_per_ps = c.get_double("solver.gamma_per_ps", cfg.solver.gamma_per_ps);
    cfg.solver.max_bond = c.get_int("solver.max_bond", cfg.solver.max_bond);

    cfg.jobs = c.get_int("run.jobs", cfg.jobs);
    cfg.budget_seconds = c.get_double("run.budget_seconds", cfg.budget_seconds);
    cfg.validate();
    return cfg;
}

std::vector<MapExtremum> map_extrema(const PopulationMap& map, double theta_rad) {
    if (map.theta_rad.empty() || map.detuning_nm.empty())
        throw data_error("map_extrema: empty map");
    int row = -1;
    for (size_t i = 0; i < map.theta_rad.size(); ++i)
        if (std::abs(map.theta_rad[i] - theta_rad) < 1e-9 * std::max(1.0, std::abs(theta_rad)))
            row = static_cast<int>(i);
    if (row < 0) throw config_error("map_extrema: pulse area is not on the grid");

    const int n = static_cast<int>(map.detuning_nm.size());
    std::vector<double> smooth(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        double sum = 0.0;
        int cnt = 0;
        for (int k = std::max(0, j - 1); k <= std::min(n - 1, j + 1); ++k) {
            const double v = map.population(row, k);
            if (std::isnan(v)) continue;
            sum += v;
            ++cnt;
        }
        smooth[static_cast<size_t>(j)] = cnt ? sum / cnt : 0.0;
    }

    std::vector<MapExtremum> out;
    for (int j = 0; j < n; ++j) {
        const double v = smooth[static_cast<size_t>(j)];
        const bool left_ok = j == 0 || v > smooth[static_cast<size_t>(j - 1)];
        const bool right_ok = j == n - 1 || v >= smooth[static_cast<size_t>(j + 1)];
        if (left_ok && right_ok) {
            MapExtremum e;
            e.detuning_nm = map.detuning_nm[static_cast<size_t>(j)];
            e.population = map.population(row, j);
            e.boundary = j == 0 || j == n - 1;
            out.push_back(e);
        }
    }
    return out;
}

}  // namespace phonsim
