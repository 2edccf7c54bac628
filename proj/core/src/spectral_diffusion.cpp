#include "phonsim/spectral_diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phonsim/constants.hpp"
#include "phonsim/errors.hpp"

namespace phonsim {

namespace {

// Lorentzian on a constant baseline; parameters (center, fwhm, area, baseline).
double fit_frame_center(const Frame& f) {
    if (f.lambda_nm.size() != f.counts.size() || f.lambda_nm.size() < 8)
        throw data_error("spectral_diffusion: malformed frame");
    const double ymin = *std::min_element(f.counts.begin(), f.counts.end());
    const size_t ipk = static_cast<size_t>(
        std::max_element(f.counts.begin(), f.counts.end()) - f.counts.begin());
    const double height = f.counts[ipk] - ymin;
    if (!(height > 0.0)) throw data_error("spectral_diffusion: flat frame");

    double lo = f.lambda_nm.front(), hi = f.lambda_nm.back();
    for (size_t i = ipk; i-- > 0;)
        if (f.counts[i] - ymin < 0.5 * height) { lo = f.lambda_nm[i]; break; }
    for (size_t i = ipk + 1; i < f.counts.size(); ++i)
        if (f.counts[i] - ymin < 0.5 * height) { hi = f.lambda_nm[i]; break; }
    const double step = std::abs(f.lambda_nm[1] - f.lambda_nm[0]);
    const double fwhm0 = std::max(hi - lo, 2.0 * step);

    Eigen::VectorXd p0(4);
    p0 << f.lambda_nm[ipk], fwhm0, 0.5 * constants::pi * height * fwhm0, ymin;

    auto residuals = [&](const Eigen::VectorXd& p) {
        Eigen::VectorXd r(static_cast<Eigen::Index>(f.lambda_nm.size()));
        const double hw = 0.5 * std::abs(p[1]);
        for (size_t i = 0; i < f.lambda_nm.size(); ++i) {
            const double dx = f.lambda_nm[i] - p[0];
            const double model = p[3] + p[2] / constants::pi * hw / (dx * dx + hw * hw);
            r[static_cast<Eigen::Index>(i)] =
                (model - f.counts[i]) / std::sqrt(std::max(f.counts[i], 1.0));
        }
        return r;
    };
    const LevMarResult fit = levmar_fit(residuals, p0);
    if (!fit.converged) throw solver_error("frame fit did not converge: " + fit.message);
    const double center = fit.parameters[0];
    if (center < f.lambda_nm.front() || center > f.lambda_nm.back())
        throw solver_error("frame fit center left the frame window");
    return center;
}

}  // namespace

SpectralDiffusionResult spectral_diffusion(const std::vector<Frame>& frames,
                                           const SpectralDiffusionOptions& options) {
    if (frames.size() < options.min_frames)
        throw data_error("spectral_diffusion: need at least " +
                         std::to_string(options.min_frames) + " frames, got " +
                         std::to_string(frames.size()));
    if (!(options.bin_width_nm > 0.0))
        throw config_error("spectral_diffusion: bin width must be positive");

    SpectralDiffusionResult out;
    for (size_t i = 0; i < frames.size(); ++i) {
        try {
            out.centers_nm.push_back(fit_frame_center(frames[i]));
        } catch (const std::exception&) {
            out.excluded_frames.push_back(i);
        }
    }
    const double excluded =
        static_cast<double>(out.excluded_frames.size()) / static_cast<double>(frames.size());
    if (excluded > options.max_excluded_fraction)
        throw data_error("spectral_diffusion: " + std::to_string(out.excluded_frames.size()) +
                         " of " + std::to_string(frames.size()) +
                         " frames failed the per-frame fit");

    // Histogram on a fixed grid aligned to multiples of the bin width.
    const double w = options.bin_width_nm;
    const double cmin = *std::min_element(out.centers_nm.begin(), out.centers_nm.end());
    const double cmax = *std::max_element(out.centers_nm.begin(), out.centers_nm.end());
    const long b0 = static_cast<long>(std::floor(cmin / w)) - 2;
    const long b1 = static_cast<long>(std::floor(cmax / w)) + 2;
    const size_t nbins = static_cast<size_t>(b1 - b0 + 1);
    out.bin_centers_nm.resize(nbins);
    out.bin_counts.assign(nbins, 0.0);
    for (size_t b = 0; b < nbins; ++b)
        out.bin_centers_nm[b] = (static_cast<double>(b0 + static_cast<long>(b)) + 0.5) * w;
    for (double c : out.centers_nm) {
        const long b = static_cast<long>(std::floor(c / w)) - b0;
        out.bin_counts[static_cast<size_t>(b)] += 1.0;
    }

    const double n = static_cast<double>(out.centers_nm.size());
    const double sample_mean =
        std::accumulate(out.centers_nm.begin(), out.centers_nm.end(), 0.0) / n;
    double sample_var = 0.0;
    for (double c : out.centers_nm) sample_var += (c - sample_mean) * (c - sample_mean);
    sample_var /= std::max(n - 1.0, 1.0);
    const double sample_sigma = std::sqrt(sample_var);

    size_t nonzero = 0;
    for (double c : out.bin_counts)
        if (c > 0.0) ++nonzero;
    if (nonzero < 3) {
        // All centers in one or two bins: the histogram cannot constrain a
        // Gaussian, so report the sample statistics directly.
        out.mean_nm = sample_mean;
        out.sigma_nm = sample_sigma;
        out.histogram_fit.converged = true;
        out.histogram_fit.message = "histogram too narrow; sample statistics reported";
        return out;
    }

    Eigen::VectorXd p0(3);  // (amplitude, mean, sigma)
    p0 << *std::max_element(out.bin_counts.begin(), out.bin_counts.end()), sample_mean,
        std::max(sample_sigma, 0.5 * w);
    auto residuals = [&](const Eigen::VectorXd& p) {
        Eigen::VectorXd r(static_cast<Eigen::Index>(nbins));
        const double s = std::abs(p[2]);
        for (size_t b = 0; b < nbins; ++b) {
            const double dx = out.bin_centers_nm[b] - p[1];
            const double model = p[0] * std::exp(-0.5 * dx * dx / (s * s));
            r[static_cast<Eigen::Index>(b)] =
                (model - out.bin_counts[b]) / std::sqrt(std::max(out.bin_counts[b], 1.0));
        }
        return r;
    };
    out.histogram_fit = levmar_fit(residuals, p0);
    if (!out.histogram_fit.converged)
        throw solver_error("spectral_diffusion: histogram fit did not converge: " +
                           out.histogram_fit.message);
    out.mean_nm = out.histogram_fit.parameters[1];
    out.sigma_nm = std::abs(out.histogram_fit.parameters[2]);
    return out;
}

}  // namespace phonsim
