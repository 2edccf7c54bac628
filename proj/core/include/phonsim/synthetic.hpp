#pragma once

#include <cstdint>
#include <vector>

#include "phonsim/fit_models.hpp"
#include "phonsim/spectral_diffusion.hpp"

namespace phonsim {

struct SyntheticSeries {
    std::vector<double> x;
    std::vector<double> y;
    double scale = 1.0;  // counts per model unit applied before Poisson sampling
};

// Each generator scales the model so its maximum over the grid equals
// peak_counts, then draws Poisson samples. Peak SNR is sqrt(peak_counts).

SyntheticSeries synth_spectrum(const SpectrumModel& model, double lo_nm, double hi_nm,
                               int n, double peak_counts, std::uint64_t seed);

SyntheticSeries synth_trpl(const TrplModel& model, double tmax_ns, int n,
                           double peak_counts, std::uint64_t seed);

// Symmetric window [-tmax, tmax].
SyntheticSeries synth_g2(const G2Model& model, double tmax_ns, int n,
                         double peak_counts, std::uint64_t seed);

// Lorentzian line whose center wanders as N(mean, sigma) frame to frame.
std::vector<Frame> synth_diffusion_frames(double mean_nm, double sigma_nm,
                                          double line_fwhm_nm, int n_frames,
                                          int samples_per_frame, double window_nm,
                                          double peak_counts, std::uint64_t seed);

}  // namespace phonsim
