#include "phonsim/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "phonsim/constants.hpp"
#include "phonsim/errors.hpp"

namespace phonsim {

namespace {

template <typename Eval>
SyntheticSeries sample_series(double lo, double hi, int n, double peak_counts,
                              std::uint64_t seed, Eval&& eval) {
    if (n < 2) throw config_error("synthetic generator: need at least 2 grid points");
    if (!(peak_counts > 0.0)) throw config_error("synthetic generator: peak counts > 0");

    SyntheticSeries s;
    s.x.resize(static_cast<size_t>(n));
    s.y.resize(static_cast<size_t>(n));
    std::vector<double> model(static_cast<size_t>(n));
    double vmax = 0.0;
    for (int i = 0; i < n; ++i) {
        s.x[static_cast<size_t>(i)] = lo + (hi - lo) * i / (n - 1);
        model[static_cast<size_t>(i)] = eval(s.x[static_cast<size_t>(i)]);
        vmax = std::max(vmax, model[static_cast<size_t>(i)]);
    }
    if (!(vmax > 0.0)) throw data_error("synthetic generator: model is zero on the grid");
    s.scale = peak_counts / vmax;

    std::mt19937_64 rng(seed);
    for (int i = 0; i < n; ++i) {
        const double mean = std::max(s.scale * model[static_cast<size_t>(i)], 0.0);
        std::poisson_distribution<long> pois(mean > 0.0 ? mean : 1e-12);
        s.y[static_cast<size_t>(i)] = static_cast<double>(pois(rng));
    }
    return s;
}

}  // namespace

SyntheticSeries synth_spectrum(const SpectrumModel& model, double lo_nm, double hi_nm,
                               int n, double peak_counts, std::uint64_t seed) {
    return sample_series(lo_nm, hi_nm, n, peak_counts, seed,
                         [&](double x) { return model.eval(x); });
}

SyntheticSeries synth_trpl(const TrplModel& model, double tmax_ns, int n,
                           double peak_counts, std::uint64_t seed) {
    return sample_series(0.0, tmax_ns, n, peak_counts, seed,
                         [&](double t) { return model.eval(t); });
}

SyntheticSeries synth_g2(const G2Model& model, double tmax_ns, int n,
                         double peak_counts, std::uint64_t seed) {
    return sample_series(-tmax_ns, tmax_ns, n, peak_counts, seed,
                         [&](double t) { return model.eval(t); });
}

std::vector<Frame> synth_diffusion_frames(double mean_nm, double sigma_nm,
                                          double line_fwhm_nm, int n_frames,
                                          int samples_per_frame, double window_nm,
                                          double peak_counts, std::uint64_t seed) {
    if (n_frames < 1 || samples_per_frame < 8)
        throw config_error("synth_diffusion_frames: degenerate frame geometry");
    if (!(line_fwhm_nm > 0.0) || !(window_nm > 0.0) || sigma_nm < 0.0)
        throw config_error("synth_diffusion_frames: invalid line parameters");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> wander(mean_nm, sigma_nm);

    std::vector<Frame> frames(static_cast<size_t>(n_frames));
    const double hw = 0.5 * line_fwhm_nm;
    for (auto& f : frames) {
        const double center = sigma_nm > 0.0 ? wander(rng) : mean_nm;
        f.lambda_nm.resize(static_cast<size_t>(samples_per_frame));
        f.counts.resize(static_cast<size_t>(samples_per_frame));
        for (int i = 0; i < samples_per_frame; ++i) {
            const double x =
                mean_nm - 0.5 * window_nm + window_nm * i / (samples_per_frame - 1);
            const double dx = x - center;
            const double shape = hw * hw / (dx * dx + hw * hw);  // 1 at the line center
            std::poisson_distribution<long> pois(std::max(peak_counts * shape, 1e-12));
            f.lambda_nm[static_cast<size_t>(i)] = x;
            f.counts[static_cast<size_t>(i)] = static_cast<double>(pois(rng));
        }
    }
    return frames;
}

}  // namespace phonsim
