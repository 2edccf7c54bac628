#pragma once

#include <vector>

#include "phonsim/fit_models.hpp"

namespace phonsim {

struct Frame {
    std::vector<double> lambda_nm;
    std::vector<double> counts;
};

struct SpectralDiffusionOptions {
    double bin_width_nm = 0.005;
    double max_excluded_fraction = 0.20;
    size_t min_frames = 30;
};

struct SpectralDiffusionResult {
    double mean_nm = 0.0;
    double sigma_nm = 0.0;
    std::vector<double> centers_nm;        // one per successfully fitted frame
    std::vector<size_t> excluded_frames;   // indices of frames whose fit failed
    std::vector<double> bin_centers_nm;
    std::vector<double> bin_counts;
    LevMarResult histogram_fit;
};

// Line-center wander statistics: per-frame Lorentzian fit of the emission
// line, fixed-width histogram of the centers, Gaussian fit of the histogram.
SpectralDiffusionResult spectral_diffusion(const std::vector<Frame>& frames,
                                           const SpectralDiffusionOptions& options = {});

}  // namespace phonsim
