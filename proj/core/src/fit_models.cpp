#include "phonsim/fit_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "phonsim/constants.hpp"
#include "phonsim/errors.hpp"

namespace phonsim {

namespace {

void check_series(const std::vector<double>& x, const std::vector<double>& y,
                  size_t min_samples, const char* who) {
    if (x.size() != y.size()) throw data_error(std::string(who) + ": column length mismatch");
    if (x.size() < min_samples)
        throw data_error(std::string(who) + ": need at least " + std::to_string(min_samples) +
                         " samples, got " + std::to_string(x.size()));
    const double ymax = *std::max_element(y.begin(), y.end());
    const double ymin = *std::min_element(y.begin(), y.end());
    if (!(ymax > ymin) || !(ymax > 0.0))
        throw data_error(std::string(who) + ": degenerate data (flat or all-zero counts)");
}

Eigen::VectorXd poisson_residuals(const std::vector<double>& y,
                                  const std::vector<double>& model) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(y.size()));
    for (size_t i = 0; i < y.size(); ++i)
        r[static_cast<Eigen::Index>(i)] =
            (model[i] - y[i]) / std::sqrt(std::max(y[i], 1.0));
    return r;
}

double lorentzian(double x, double center, double fwhm, double area) {
    const double hw = 0.5 * std::abs(fwhm);
    const double dx = x - center;
    return area / constants::pi * hw / (dx * dx + hw * hw);
}

double gaussian(double x, double center, double fwhm, double area) {
    const double sigma = std::abs(fwhm) / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    const double dx = x - center;
    return area / (sigma * std::sqrt(2.0 * constants::pi)) *
           std::exp(-0.5 * dx * dx / (sigma * sigma));
}

}  // namespace

double SpectrumModel::eval(double lambda_nm) const {
    return baseline + lorentzian(lambda_nm, lor_center_nm, lor_fwhm_nm, lor_area) +
           gaussian(lambda_nm, gauss_center_nm, gauss_fwhm_nm, gauss_area);
}

Eigen::VectorXd SpectrumModel::pack() const {
    Eigen::VectorXd p(7);
    p << lor_center_nm, lor_fwhm_nm, lor_area, gauss_center_nm, gauss_fwhm_nm, gauss_area,
        baseline;
    return p;
}

SpectrumModel SpectrumModel::unpack(const Eigen::VectorXd& p) {
    SpectrumModel m;
    m.lor_center_nm = p[0];
    m.lor_fwhm_nm = std::abs(p[1]);
    m.lor_area = p[2];
    m.gauss_center_nm = p[3];
    m.gauss_fwhm_nm = std::abs(p[4]);
    m.gauss_area = p[5];
    m.baseline = p[6];
    return m;
}

double TrplModel::eval(double tau_ns) const {
    double v = baseline;
    if (amp1 != 0.0) v += amp1 * std::exp(-(tau_ns - offset1_ns) / tau1_ns);
    if (amp2 != 0.0) v += amp2 * std::exp(-(tau_ns - offset2_ns) / tau2_ns);
    return v;
}

double TrplModel::integral1() const {
    return amp1 == 0.0 ? 0.0 : amp1 * tau1_ns * std::exp(offset1_ns / tau1_ns);
}

double TrplModel::integral2() const {
    return amp2 == 0.0 ? 0.0 : amp2 * tau2_ns * std::exp(offset2_ns / tau2_ns);
}

double G2Model::eval(double tau_ns) const {
    auto peak = [&](double t) {
        return std::exp(-std::abs(t) / std::abs(tau1_ns)) +
               std::exp(-std::abs(t) / std::abs(tau2_ns));
    };
    double v = central_area * peak(tau_ns);
    for (int n = 1; n <= n_max; ++n) {
        v += side_area * (peak(tau_ns + n * rep_period_ns) + peak(tau_ns - n * rep_period_ns));
    }
    return v;
}

double g2_zero(const G2Model& model) {
    double fmax = model.eval(0.0);
    for (int n = 1; n <= model.n_max; ++n)
        fmax = std::max(fmax, model.eval(n * model.rep_period_ns));
    if (!(fmax > 0.0)) throw data_error("g2_zero: correlation train is identically zero");
    return model.eval(0.0) / fmax;
}

namespace {

SpectrumModel seed_spectrum(const std::vector<double>& x, const std::vector<double>& y) {
    SpectrumModel m;
    const size_t n = x.size();
    m.baseline = *std::min_element(y.begin(), y.end());

    const size_t ipk =
        static_cast<size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    m.lor_center_nm = x[ipk];
    const double height = y[ipk] - m.baseline;

    // Half-maximum crossings around the global peak for the narrow line.
    double lo = x.front(), hi = x.back();
    for (size_t i = ipk; i-- > 0;)
        if (y[i] - m.baseline < 0.5 * height) { lo = x[i]; break; }
    for (size_t i = ipk + 1; i < n; ++i)
        if (y[i] - m.baseline < 0.5 * height) { hi = x[i]; break; }
    m.lor_fwhm_nm = std::max(hi - lo, 2.0 * std::abs(x[1] - x[0]));
    m.lor_area = 0.5 * constants::pi * height * m.lor_fwhm_nm;

    // Moments of the background-subtracted data for the broad component.
    double w = 0.0, m1 = 0.0, m2 = 0.0, total = 0.0;
    const double dx = n > 1 ? std::abs(x[1] - x[0]) : 1.0;
    for (size_t i = 0; i < n; ++i) {
        const double c = std::max(y[i] - m.baseline, 0.0);
        w += c;
        m1 += c * x[i];
        total += c * dx;
    }
    if (w > 0.0) m1 /= w;
    for (size_t i = 0; i < n; ++i) {
        const double c = std::max(y[i] - m.baseline, 0.0);
        m2 += c * (x[i] - m1) * (x[i] - m1);
    }
    if (w > 0.0) m2 /= w;
    m.gauss_center_nm = m1;
    m.gauss_fwhm_nm = std::max(2.355 * std::sqrt(std::max(m2, 0.0)), m.lor_fwhm_nm);
    m.gauss_area = std::max(total - m.lor_area, 0.1 * total);
    return m;
}

}  // namespace

SpectrumFit fit_spectrum(const std::vector<double>& lambda_nm,
                         const std::vector<double>& counts,
                         std::optional<SpectrumModel> init) {
    check_series(lambda_nm, counts, 20, "fit_spectrum");
    const SpectrumModel seed = init ? *init : seed_spectrum(lambda_nm, counts);

    auto residuals = [&](const Eigen::VectorXd& p) {
        const SpectrumModel m = SpectrumModel::unpack(p);
        std::vector<double> model(lambda_nm.size());
        for (size_t i = 0; i < lambda_nm.size(); ++i) model[i] = m.eval(lambda_nm[i]);
        return poisson_residuals(counts, model);
    };

    SpectrumFit out;
    out.fit = levmar_fit(residuals, seed.pack());
    out.model = SpectrumModel::unpack(out.fit.parameters);
    return out;
}

double debye_waller(const SpectrumModel& model) {
    const double total = model.lor_area + model.gauss_area;
    if (!(total > 0.0)) throw data_error("debye_waller: zero total area");
    return model.lor_area / total;
}

namespace {

TrplModel seed_trpl(const std::vector<double>& x, const std::vector<double>& y, int n_exp) {
    TrplModel m;
    m.baseline = *std::min_element(y.begin(), y.end());

    // Log-linear slope over the tail third gives the slow decay constant.
    const size_t n = x.size();
    const size_t start = 2 * n / 3;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    size_t cnt = 0;
    for (size_t i = start; i < n; ++i) {
        const double c = y[i] - m.baseline;
        if (c <= 0.0) continue;
        const double ly = std::log(c);
        sx += x[i];
        sy += ly;
        sxx += x[i] * x[i];
        sxy += x[i] * ly;
        ++cnt;
    }
    double tau_slow = (x.back() - x.front()) / 3.0;
    if (cnt >= 2) {
        const double denom = cnt * sxx - sx * sx;
        if (std::abs(denom) > 0.0) {
            const double slope = (cnt * sxy - sx * sy) / denom;
            if (slope < -1e-12) tau_slow = -1.0 / slope;
        }
    }
    const double peak = *std::max_element(y.begin(), y.end()) - m.baseline;
    if (n_exp == 1) {
        m.amp1 = peak;
        m.tau1_ns = tau_slow;
        m.amp2 = 0.0;
    } else {
        m.amp1 = 0.7 * peak;
        m.tau1_ns = tau_slow / 5.0;
        m.amp2 = 0.3 * peak;
        m.tau2_ns = tau_slow;
    }
    return m;
}

}  // namespace

TrplFit fit_trpl(const std::vector<double>& tau_ns, const std::vector<double>& counts,
                 std::optional<TrplModel> init, int n_exp) {
    if (n_exp != 1 && n_exp != 2) throw config_error("fit_trpl: n_exp must be 1 or 2");
    check_series(tau_ns, counts, 10, "fit_trpl");
    TrplModel seed = init ? *init : seed_trpl(tau_ns, counts, n_exp);
    if (n_exp == 1) seed.amp2 = 0.0;

    // Offsets are fixed: only (baseline, amplitudes, decay constants) float.
    auto unpack = [&](const Eigen::VectorXd& p) {
        TrplModel m = seed;
        m.baseline = p[0];
        m.amp1 = p[1];
        m.tau1_ns = std::abs(p[2]);
        if (n_exp == 2) {
            m.amp2 = p[3];
            m.tau2_ns = std::abs(p[4]);
        }
        return m;
    };
    Eigen::VectorXd p0(n_exp == 1 ? 3 : 5);
    p0[0] = seed.baseline;
    p0[1] = seed.amp1;
    p0[2] = seed.tau1_ns;
    if (n_exp == 2) {
        p0[3] = seed.amp2;
        p0[4] = seed.tau2_ns;
    }

    auto residuals = [&](const Eigen::VectorXd& p) {
        const TrplModel m = unpack(p);
        std::vector<double> model(tau_ns.size());
        for (size_t i = 0; i < tau_ns.size(); ++i) model[i] = m.eval(tau_ns[i]);
        return poisson_residuals(counts, model);
    };

    TrplFit out;
    out.fit = levmar_fit(residuals, p0);
    out.model = unpack(out.fit.parameters);
    const double i1 = out.model.integral1();
    const double i2 = out.model.integral2();
    if (i1 + i2 > 0.0) {
        out.weight1_percent = 100.0 * i1 / (i1 + i2);
        out.weight2_percent = 100.0 * i2 / (i1 + i2);
    }
    if (n_exp == 2 && out.model.tau1_ns > 0.0)
        out.tau_degenerate =
            std::abs(out.model.tau1_ns - out.model.tau2_ns) / out.model.tau1_ns < 1e-3;
    if (out.tau_degenerate && out.fit.message.empty())
        out.fit.message = "decay constants are degenerate";
    return out;
}

namespace {

// Median spacing of local maxima above half of the global maximum.
double detect_peak_spacing(const std::vector<double>& x, const std::vector<double>& y) {
    const double ymax = *std::max_element(y.begin(), y.end());
    std::vector<double> peaks;
    for (size_t i = 1; i + 1 < y.size(); ++i)
        if (y[i] >= y[i - 1] && y[i] > y[i + 1] && y[i] > 0.5 * ymax) {
            if (!peaks.empty() && x[i] - peaks.back() < 0.25 * (x.back() - x.front()) / 20.0)
                continue;  // same peak plateau
            peaks.push_back(x[i]);
        }
    if (peaks.size() < 2) return 0.0;
    std::vector<double> gaps;
    for (size_t i = 1; i < peaks.size(); ++i) gaps.push_back(peaks[i] - peaks[i - 1]);
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    return gaps[gaps.size() / 2];
}

}  // namespace

G2Fit fit_g2(const std::vector<double>& tau_ns, const std::vector<double>& coincidences,
             std::optional<G2Model> init) {
    check_series(tau_ns, coincidences, 20, "fit_g2");
    const double spacing = detect_peak_spacing(tau_ns, coincidences);

    G2Model seed;
    if (init) {
        seed = *init;
    } else {
        if (spacing <= 0.0)
            throw data_error("fit_g2: could not detect the pulse-train period from the data");
        seed.rep_period_ns = spacing;
        const double ymax = *std::max_element(coincidences.begin(), coincidences.end());
        seed.side_area = 0.5 * ymax;
        // Central-peak value read off near tau = 0.
        double y0 = 0.0;
        double best = std::numeric_limits<double>::max();
        for (size_t i = 0; i < tau_ns.size(); ++i)
            if (std::abs(tau_ns[i]) < best) {
                best = std::abs(tau_ns[i]);
                y0 = coincidences[i];
            }
        seed.central_area = std::max(0.5 * y0, 1e-3 * seed.side_area);
        seed.tau1_ns = spacing / 10.0;
        seed.tau2_ns = spacing / 3.0;
    }
    const double span = tau_ns.back() - tau_ns.front();
    if (span < 10.0 * seed.rep_period_ns)
        throw data_error("fit_g2: histogram must span at least five side peaks per side");

    // The repetition period is instrument-determined and held fixed.
    auto unpack = [&](const Eigen::VectorXd& p) {
        G2Model m = seed;
        m.central_area = p[0];
        m.side_area = p[1];
        m.tau1_ns = std::abs(p[2]);
        m.tau2_ns = std::abs(p[3]);
        return m;
    };
    Eigen::VectorXd p0(4);
    p0 << seed.central_area, seed.side_area, seed.tau1_ns, seed.tau2_ns;

    auto residuals = [&](const Eigen::VectorXd& p) {
        const G2Model m = unpack(p);
        std::vector<double> model(tau_ns.size());
        for (size_t i = 0; i < tau_ns.size(); ++i) model[i] = m.eval(tau_ns[i]);
        return poisson_residuals(coincidences, model);
    };

    G2Fit out;
    out.fit = levmar_fit(residuals, p0);
    out.model = unpack(out.fit.parameters);
    out.g2_zero = g2_zero(out.model);
    if (spacing > 0.0)
        out.rep_period_mismatch =
            std::abs(spacing - out.model.rep_period_ns) / out.model.rep_period_ns > 0.05;
    if (out.rep_period_mismatch && out.fit.message.empty())
        out.fit.message = "configured repetition period disagrees with the observed peak spacing";
    return out;
}

}  // namespace phonsim
