#pragma once

#include <optional>
#include <vector>

#include "phonsim/levmar.hpp"

namespace phonsim {

// Emission line: Lorentzian zero-phonon line plus Gaussian sideband on a
// constant baseline. Areas are integrated peak areas, not amplitudes.
struct SpectrumModel {
    double lor_center_nm = 0.0;
    double lor_fwhm_nm = 0.1;
    double lor_area = 1.0;
    double gauss_center_nm = 0.0;
    double gauss_fwhm_nm = 1.0;
    double gauss_area = 1.0;
    double baseline = 0.0;

    double eval(double lambda_nm) const;
    Eigen::VectorXd pack() const;
    static SpectrumModel unpack(const Eigen::VectorXd& p);
};

// F(tau) = F0 + A1 exp(-(tau - tau01)/tau1) + A2 exp(-(tau - tau02)/tau2).
// The offsets are held fixed during fitting: they are exactly degenerate
// with the amplitudes (A exp(tau0/tau) is the only observable combination).
struct TrplModel {
    double baseline = 0.0;
    double amp1 = 1.0;
    double amp2 = 0.0;
    double tau1_ns = 1.0;
    double tau2_ns = 10.0;
    double offset1_ns = 0.0;
    double offset2_ns = 0.0;

    double eval(double tau_ns) const;
    // Integrated counts of each exponential over tau >= 0.
    double integral1() const;
    double integral2() const;
};

// Pulsed second-order-correlation train: a central peak of area B1 and side
// peaks of area B2 at multiples of the repetition period, each a symmetric
// biexponential exp(-|tau|/tau1) + exp(-|tau|/tau2).
struct G2Model {
    double central_area = 0.0;   // B1
    double side_area = 1.0;      // B2
    double tau1_ns = 1.0;
    double tau2_ns = 5.0;
    double rep_period_ns = 12.5;
    int n_max = 10;

    double eval(double tau_ns) const;
};

struct SpectrumFit {
    SpectrumModel model;
    LevMarResult fit;
};

struct TrplFit {
    TrplModel model;
    LevMarResult fit;
    double weight1_percent = 0.0;  // share of integrated fit counts
    double weight2_percent = 0.0;
    bool tau_degenerate = false;
};

struct G2Fit {
    G2Model model;
    LevMarResult fit;
    double g2_zero = 0.0;          // F(0) / max F
    bool rep_period_mismatch = false;
};

// All fits weight residuals by the Poisson error sqrt(max(counts, 1)).

SpectrumFit fit_spectrum(const std::vector<double>& lambda_nm,
                         const std::vector<double>& counts,
                         std::optional<SpectrumModel> init = std::nullopt);

// I_ZPL / (I_ZPL + I_PSB) from the fitted areas.
double debye_waller(const SpectrumModel& model);

TrplFit fit_trpl(const std::vector<double>& tau_ns, const std::vector<double>& counts,
                 std::optional<TrplModel> init = std::nullopt, int n_exp = 2);

G2Fit fit_g2(const std::vector<double>& tau_ns, const std::vector<double>& coincidences,
             std::optional<G2Model> init = std::nullopt);

// g2(0) of a model without fitting (exact ratio of the analytic train).
double g2_zero(const G2Model& model);

}  // namespace phonsim
