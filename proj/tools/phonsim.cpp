// Command-line front end: sweeps, single propagations, environment reports,
// the fitting toolkit and the synthetic-data generators. Every subcommand
// writes a manifest next to its artifacts, also on failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "phonsim/config.hpp"
#include "phonsim/errors.hpp"
#include "phonsim/fit_models.hpp"
#include "phonsim/hamiltonian.hpp"
#include "phonsim/manifest.hpp"
#include "phonsim/propagate.hpp"
#include "phonsim/spectral_diffusion.hpp"
#include "phonsim/sweep.hpp"
#include "phonsim/synthetic.hpp"
#include "phonsim/table_io.hpp"
#include "phonsim/units.hpp"

namespace {

constexpr const char* kVersion = "phonsim 0.1.0";

using phonsim::Config;
using phonsim::RunManifest;

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const phonsim::config_error*>(&e)) return 2;
    if (dynamic_cast<const phonsim::data_error*>(&e)) return 3;
    if (dynamic_cast<const phonsim::budget_error*>(&e)) return 5;
    return 4;
}

int run_guarded(const std::string& subcommand, const std::string& out_dir,
                const std::function<void(RunManifest&)>& body) {
    std::filesystem::create_directories(out_dir);
    RunManifest m;
    m.subcommand = subcommand;
    m.tool_version = kVersion;
    const auto t0 = std::chrono::steady_clock::now();
    int code = 0;
    try {
        body(m);
        m.success = true;
    } catch (const std::exception& e) {
        m.failure = e.what();
        code = exit_code_for(e);
        std::cerr << "error: " << e.what() << "\n";
    }
    m.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    try {
        m.write(out_dir + "/" + subcommand + "_manifest.json");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (code == 0) code = 3;
    }
    return code;
}

std::string fmt_param(const std::string& name, double value, double stderr_v) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "param %s: %.10g +- %.4g\n", name.c_str(), value,
                  stderr_v);
    return buf;
}

std::string fit_header(const std::string& model, const phonsim::LevMarResult& fit) {
    std::string s;
    s += "model: " + model + "\n";
    s += std::string("converged: ") + (fit.converged ? "true" : "false") + "\n";
    s += "iterations: " + std::to_string(fit.iterations) + "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "residual_norm: %.10g\n", fit.residual_norm);
    s += buf;
    if (!fit.message.empty()) s += "note: " + fit.message + "\n";
    return s;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw phonsim::data_error("cannot write file: " + path);
    out << text;
}

// --- sweep ---------------------------------------------------------------

struct SweepArgs {
    std::string config_path;
    std::string out_dir = ".";
    int jobs = 0;           // 0 = take from config
    double budget = -1.0;   // <0 = take from config
};

int cmd_sweep(const SweepArgs& a) {
    return run_guarded("sweep", a.out_dir, [&](RunManifest& m) {
        const Config c = Config::parse_file(a.config_path);
        phonsim::SweepConfig cfg = phonsim::load_sweep_config(c);
        c.ensure_all_consumed();
        if (a.jobs > 0) cfg.jobs = a.jobs;
        if (a.budget >= 0.0) cfg.budget_seconds = a.budget;
        m.config_fingerprint = cfg.fingerprint();
        m.add_input(a.config_path);

        const phonsim::PopulationMap map = phonsim::run_sweep(cfg);
        const std::string map_path = a.out_dir + "/population_map.csv";
        const std::string diag_path = a.out_dir + "/map_diagnostics.csv";
        phonsim::write_population_map_csv(map_path, map);
        phonsim::write_map_diagnostics_csv(diag_path, map);
        m.add_output(map_path);
        m.add_output(diag_path);
        std::cout << "sweep: " << map.theta_rad.size() << " x " << map.detuning_nm.size()
                  << " cells, " << map.invalid_cells << " invalid\n";
    });
}

// --- propagate -----------------------------------------------------------

int cmd_propagate(const std::string& config_path, const std::string& out_dir) {
    return run_guarded("propagate", out_dir, [&](RunManifest& m) {
        const Config c = Config::parse_file(config_path);
        phonsim::SweepConfig cfg = phonsim::load_sweep_config(c);
        const double theta_pi = c.get_double("pulse.theta_pi");
        const double detuning_nm = c.get_double("pulse.detuning_nm", 0.0);
        c.ensure_all_consumed();
        m.config_fingerprint = cfg.fingerprint();
        m.add_input(config_path);

        const auto densities = cfg.bath.spectral_densities();
        const double shift = phonsim::total_polaron_shift(densities);
        const int n = cfg.n_steps();
        std::vector<phonsim::ProcessTensor> tensors;
        for (const auto& j : densities)
            tensors.push_back(
                phonsim::build_process_tensor(j, cfg.bath.temperature_K, cfg.solver, n));

        const double dw =
            phonsim::detuning_wavelength_to_frequency({detuning_nm, cfg.lambda_x_nm})
                .rad_per_ps;
        const phonsim::SystemHamiltonian h{
            phonsim::PulseSpec::from_duration(theta_pi * phonsim::constants::pi, cfg.t_p_ps,
                                              dw),
            shift};
        const phonsim::Trajectory traj = phonsim::propagate(
            h, tensors, cfg.solver, phonsim::TwoLevelState::ground(), -3.0 * cfg.t_p_ps, n);

        const std::string traj_path = out_dir + "/trajectory.csv";
        phonsim::write_trajectory_csv(traj_path, traj);
        m.add_output(traj_path);
        std::cout << "final population: " << phonsim::final_population(traj) << "\n";
    });
}

// --- env -----------------------------------------------------------------

int cmd_env(const std::string& config_path, const std::string& out_dir) {
    return run_guarded("env", out_dir, [&](RunManifest& m) {
        const Config c = Config::parse_file(config_path);
        phonsim::SweepConfig cfg = phonsim::load_sweep_config(c);
        c.ensure_all_consumed();
        m.config_fingerprint = cfg.fingerprint();
        m.add_input(config_path);

        const auto densities = cfg.bath.spectral_densities();
        if (densities.empty())
            throw phonsim::config_error("env: no phonon modes enabled");

        std::string report;
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%-5s %12s %14s %12s %12s %14s\n", "mode", "S",
                      "D_rad_per_ps", "D_mev", "E_char_mev", "detuning_nm");
        report += buf;
        double s_total = 0.0, d_total = 0.0;
        for (const auto& j : densities) {
            const double s = phonsim::huang_rhys(j).value;
            const double d = phonsim::polaron_shift(j).value;
            s_total += s;
            d_total += d;
            double e_char = 0.0;
            switch (j.kind) {
                case phonsim::ModeKind::LA:
                    e_char = phonsim::angular_to_energy({j.omega_c}).meV;
                    break;
                case phonsim::ModeKind::SM1:
                case phonsim::ModeKind::SM2:
                    e_char = phonsim::angular_to_energy({j.gap}).meV;
                    break;
                case phonsim::ModeKind::BM:
                    e_char = phonsim::angular_to_energy({j.omega_bm}).meV;
                    break;
            }
            const double dl =
                e_char > 0.0
                    ? phonsim::energy_to_detuning({e_char}, cfg.lambda_x_nm).nm
                    : 0.0;
            std::snprintf(buf, sizeof(buf), "%-5s %12.6g %14.6g %12.6g %12.6g %14.4f\n",
                          phonsim::mode_name(j.kind).c_str(), s, d,
                          phonsim::angular_to_energy({d}).meV, e_char, dl);
            report += buf;
        }
        std::snprintf(buf, sizeof(buf), "%-5s %12.6g %14.6g %12.6g\n", "total", s_total,
                      d_total, phonsim::angular_to_energy({d_total}).meV);
        report += buf;
        std::cout << report;

        const std::string report_path = out_dir + "/env_report.txt";
        write_text(report_path, report);
        m.add_output(report_path);

        // J_m sampled on a shared grid.
        double wmax = 0.0;
        for (const auto& j : densities) wmax = std::max(wmax, j.support_max());
        std::ofstream jd(out_dir + "/env_spectral_density.csv");
        jd.precision(12);
        jd << "omega_rad_per_ps";
        for (const auto& j : densities) jd << "," << phonsim::mode_name(j.kind);
        jd << "\n";
        const int npts = 600;
        for (int i = 0; i <= npts; ++i) {
            const double w = wmax * i / npts;
            jd << w;
            for (const auto& j : densities) jd << "," << j.value(w);
            jd << "\n";
        }
        jd.close();
        m.add_output(out_dir + "/env_spectral_density.csv");
    });
}

// --- fit -----------------------------------------------------------------

struct FitArgs {
    std::string kind;
    std::string data_path;
    std::string out_dir = ".";
    int n_exp = 2;
    double rep_period_ns = 0.0;
    double bin_width_nm = 0.005;
};

int cmd_fit(const FitArgs& a) {
    return run_guarded("fit", a.out_dir, [&](RunManifest& m) {
        m.add_input(a.data_path);
        std::string record;
        if (a.kind == "spectrum") {
            const phonsim::Series s = phonsim::read_series(a.data_path);
            const phonsim::SpectrumFit f = phonsim::fit_spectrum(s.x, s.y);
            record = fit_header("spectrum", f.fit);
            if (!f.fit.converged)
                throw phonsim::solver_error("spectrum fit did not converge: " + f.fit.message);
            const auto& e = f.fit.standard_errors;
            record += fmt_param("lor_center_nm", f.model.lor_center_nm, e[0]);
            record += fmt_param("lor_fwhm_nm", f.model.lor_fwhm_nm, e[1]);
            record += fmt_param("lor_area", f.model.lor_area, e[2]);
            record += fmt_param("gauss_center_nm", f.model.gauss_center_nm, e[3]);
            record += fmt_param("gauss_fwhm_nm", f.model.gauss_fwhm_nm, e[4]);
            record += fmt_param("gauss_area", f.model.gauss_area, e[5]);
            record += fmt_param("baseline", f.model.baseline, e[6]);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "debye_waller: %.6f\n",
                          phonsim::debye_waller(f.model));
            record += buf;
        } else if (a.kind == "trpl") {
            const phonsim::Series s = phonsim::read_series(a.data_path);
            const phonsim::TrplFit f =
                phonsim::fit_trpl(s.x, s.y, std::nullopt, a.n_exp);
            record = fit_header("trpl", f.fit);
            if (!f.fit.converged)
                throw phonsim::solver_error("trpl fit did not converge: " + f.fit.message);
            const auto& e = f.fit.standard_errors;
            record += fmt_param("baseline", f.model.baseline, e[0]);
            record += fmt_param("amp1", f.model.amp1, e[1]);
            record += fmt_param("tau1_ns", f.model.tau1_ns, e[2]);
            if (a.n_exp == 2) {
                record += fmt_param("amp2", f.model.amp2, e[3]);
                record += fmt_param("tau2_ns", f.model.tau2_ns, e[4]);
            }
            char buf[96];
            std::snprintf(buf, sizeof(buf), "weight1_percent: %.2f\nweight2_percent: %.2f\n",
                          f.weight1_percent, f.weight2_percent);
            record += buf;
        } else if (a.kind == "g2") {
            const phonsim::Series s = phonsim::read_series(a.data_path);
            std::optional<phonsim::G2Model> init;
            if (a.rep_period_ns > 0.0) {
                phonsim::G2Model g;
                g.rep_period_ns = a.rep_period_ns;
                const double ymax = *std::max_element(s.y.begin(), s.y.end());
                g.side_area = 0.5 * ymax;
                g.central_area = 0.05 * g.side_area;
                g.tau1_ns = a.rep_period_ns / 10.0;
                g.tau2_ns = a.rep_period_ns / 3.0;
                init = g;
            }
            const phonsim::G2Fit f = phonsim::fit_g2(s.x, s.y, init);
            record = fit_header("g2", f.fit);
            if (!f.fit.converged)
                throw phonsim::solver_error("g2 fit did not converge: " + f.fit.message);
            const auto& e = f.fit.standard_errors;
            record += fmt_param("central_area", f.model.central_area, e[0]);
            record += fmt_param("side_area", f.model.side_area, e[1]);
            record += fmt_param("tau1_ns", f.model.tau1_ns, e[2]);
            record += fmt_param("tau2_ns", f.model.tau2_ns, e[3]);
            char buf[96];
            std::snprintf(buf, sizeof(buf), "rep_period_ns: %.6g\ng2_zero: %.6f\n",
                          f.model.rep_period_ns, f.g2_zero);
            record += buf;
        } else if (a.kind == "diffusion") {
            const std::vector<phonsim::Frame> frames =
                phonsim::read_frame_stack(a.data_path);
            phonsim::SpectralDiffusionOptions opt;
            opt.bin_width_nm = a.bin_width_nm;
            const phonsim::SpectralDiffusionResult r =
                phonsim::spectral_diffusion(frames, opt);
            record = "model: diffusion\n";
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "frames: %zu\nexcluded: %zu\nmean_nm: %.6f\nsigma_nm: %.6f\n",
                          frames.size(), r.excluded_frames.size(), r.mean_nm, r.sigma_nm);
            record += buf;
        } else {
            throw phonsim::config_error("fit: unknown kind `" + a.kind + "`");
        }
        const std::string record_path = a.out_dir + "/fit_" + a.kind + ".txt";
        write_text(record_path, record);
        m.add_output(record_path);
        std::cout << record;
    });
}

// --- gen-synthetic ---------------------------------------------------------

struct GenArgs {
    std::string kind;
    std::string out_path;
    std::uint64_t seed = 12345;
};

int cmd_gen(const GenArgs& a) {
    const std::string out_dir =
        std::filesystem::path(a.out_path).parent_path().string().empty()
            ? "."
            : std::filesystem::path(a.out_path).parent_path().string();
    return run_guarded("gen-synthetic", out_dir, [&](RunManifest& m) {
        std::string params = "kind: " + a.kind + "\nseed: " + std::to_string(a.seed) + "\n";
        char buf[256];
        if (a.kind == "spectrum") {
            phonsim::SpectrumModel mdl;
            mdl.lor_center_nm = 800.5;
            mdl.lor_fwhm_nm = 0.108;
            mdl.lor_area = 0.551;
            mdl.gauss_center_nm = 800.9;
            mdl.gauss_fwhm_nm = 0.782;
            mdl.gauss_area = 0.449;
            const phonsim::SyntheticSeries s =
                phonsim::synth_spectrum(mdl, 798.5, 803.0, 600, 2500.0, a.seed);
            phonsim::write_series(a.out_path, {s.x, s.y}, "lambda_nm counts");
            std::snprintf(buf, sizeof(buf),
                          "lor_center_nm: %.4f\nlor_fwhm_nm: %.4f\nlor_area: %.4f\n"
                          "gauss_center_nm: %.4f\ngauss_fwhm_nm: %.4f\ngauss_area: %.4f\n",
                          mdl.lor_center_nm, mdl.lor_fwhm_nm, mdl.lor_area,
                          mdl.gauss_center_nm, mdl.gauss_fwhm_nm, mdl.gauss_area);
            params += buf;
        } else if (a.kind == "trpl") {
            phonsim::TrplModel mdl;
            mdl.baseline = 0.002;
            mdl.tau1_ns = 1.33;
            mdl.tau2_ns = 8.31;
            mdl.amp1 = 0.804 / mdl.tau1_ns;
            mdl.amp2 = 0.196 / mdl.tau2_ns;
            const phonsim::SyntheticSeries s =
                phonsim::synth_trpl(mdl, 50.0, 500, 2000.0, a.seed);
            phonsim::write_series(a.out_path, {s.x, s.y}, "tau_ns counts");
            std::snprintf(buf, sizeof(buf),
                          "tau1_ns: %.4f\ntau2_ns: %.4f\nweight1_percent: 80.4\n"
                          "weight2_percent: 19.6\n",
                          mdl.tau1_ns, mdl.tau2_ns);
            params += buf;
        } else if (a.kind == "g2") {
            phonsim::G2Model mdl;
            mdl.side_area = 1.0;
            mdl.central_area = 0.0395;
            mdl.tau1_ns = 0.8;
            mdl.tau2_ns = 3.0;
            mdl.rep_period_ns = 12.5;
            const phonsim::SyntheticSeries s =
                phonsim::synth_g2(mdl, 80.0, 1600, 1000.0, a.seed);
            phonsim::write_series(a.out_path, {s.x, s.y}, "tau_ns coincidences");
            std::snprintf(buf, sizeof(buf),
                          "rep_period_ns: %.4f\ntau1_ns: %.4f\ntau2_ns: %.4f\n"
                          "g2_zero: %.6f\n",
                          mdl.rep_period_ns, mdl.tau1_ns, mdl.tau2_ns,
                          phonsim::g2_zero(mdl));
            params += buf;
        } else if (a.kind == "diffusion") {
            const auto frames = phonsim::synth_diffusion_frames(
                800.62, 0.0129, 0.108, 300, 120, 1.0, 400.0, a.seed);
            phonsim::write_frame_stack(a.out_path, frames);
            params += "mean_nm: 800.62\nsigma_nm: 0.0129\nframes: 300\n";
        } else {
            throw phonsim::config_error("gen-synthetic: unknown kind `" + a.kind + "`");
        }
        m.add_output(a.out_path);
        const std::string params_path = a.out_path + ".params.txt";
        write_text(params_path, params);
        m.add_output(params_path);
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phonon-assisted exciton preparation simulator and fitting toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Run a (detuning, pulse-area) population sweep");
    sweep->add_option("--config", sweep_args.config_path, "Sweep config file")->required();
    sweep->add_option("--out", sweep_args.out_dir, "Output directory");
    sweep->add_option("--jobs", sweep_args.jobs, "Worker threads (overrides config)");
    sweep->add_option("--budget", sweep_args.budget,
                      "Cost ceiling in estimated seconds (overrides config)");

    std::string prop_config, prop_out = ".";
    auto* prop = app.add_subcommand("propagate", "Run a single propagation");
    prop->add_option("--config", prop_config, "Config file")->required();
    prop->add_option("--out", prop_out, "Output directory");

    std::string env_config, env_out = ".";
    auto* env = app.add_subcommand("env", "Report the phonon environment");
    env->add_option("--config", env_config, "Config file")->required();
    env->add_option("--out", env_out, "Output directory");

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "Fit measured or synthetic data");
    fit->add_option("kind", fit_args.kind, "spectrum | trpl | g2 | diffusion")->required();
    fit->add_option("--data", fit_args.data_path, "Input data file or frame directory")
        ->required();
    fit->add_option("--out", fit_args.out_dir, "Output directory");
    fit->add_option("--n-exp", fit_args.n_exp, "Number of TRPL exponentials (1 or 2)");
    fit->add_option("--rep-period", fit_args.rep_period_ns,
                    "g2 repetition period in ns (default: detected)");
    fit->add_option("--bin-width", fit_args.bin_width_nm,
                    "Diffusion histogram bin width in nm");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen-synthetic", "Generate synthetic datasets");
    gen->add_option("kind", gen_args.kind, "spectrum | trpl | g2 | diffusion")->required();
    gen->add_option("--out", gen_args.out_path, "Output data file")->required();
    gen->add_option("--seed", gen_args.seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (prop->parsed()) return cmd_propagate(prop_config, prop_out);
    if (env->parsed()) return cmd_env(env_config, env_out);
    if (fit->parsed()) return cmd_fit(fit_args);
    if (gen->parsed()) return cmd_gen(gen_args);
    return 2;
}
