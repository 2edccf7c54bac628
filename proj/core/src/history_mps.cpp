#include "phonsim/history_mps.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "phonsim/errors.hpp"

namespace phonsim {

namespace {

// Storage is (left * 4) x right with rows grouped as (left, phys). This view
// regroups to left x (4 * right) with columns grouped as (phys, right).
Eigen::MatrixXcd view_left__phys_right(const Eigen::MatrixXcd& m, int left, int right) {
    Eigen::MatrixXcd out(left, 4 * right);
    for (int a = 0; a < left; ++a)
        for (int s = 0; s < 4; ++s)
            out.row(a).segment(s * right, right) = m.row(a * 4 + s);
    return out;
}

Eigen::MatrixXcd view_to_storage(const Eigen::MatrixXcd& m, int left, int right) {
    Eigen::MatrixXcd out(left * 4, right);
    for (int a = 0; a < left; ++a)
        for (int s = 0; s < 4; ++s)
            out.row(a * 4 + s) = m.row(a).segment(s * right, right);
    return out;
}

}  // namespace

void HistoryMps::init(const Eigen::Vector4cd& a1) {
    sites_.clear();
    Site s;
    s.left = 1;
    s.right = 1;
    s.m = a1;
    sites_.push_back(std::move(s));
}

HistoryMps::StepStats HistoryMps::step(const Eigen::Matrix4cd& propagator,
                                       const Eigen::Vector4cd& self_factor,
                                       const std::vector<Eigen::Matrix4cd>& pair_factors,
                                       int memory_steps, double svd_tol, int max_bond) {
    const int m = length();
    if (m == 0) throw solver_error("HistoryMps::step on uninitialized window");
    if (static_cast<int>(pair_factors.size()) < std::min(m + 1, memory_steps))
        throw solver_error("HistoryMps::step: pair factor table shorter than the window");
    const bool drop = m == memory_steps;

    if (drop && memory_steps == 1) {
        // Window of one: the single variable is summed out immediately.
        Eigen::Vector4cd next = Eigen::Vector4cd::Zero();
        for (int u = 0; u < 4; ++u) {
            std::complex<double> acc = 0.0;
            for (int s = 0; s < 4; ++s)
                acc += pair_factors[0](u, s) * propagator(u, s) * sites_[0].m(s, 0);
            next[u] = self_factor[u] * acc;
        }
        init(next);
        StepStats st;
        st.max_bond = 1;
        return st;
    }

    std::vector<Site> next;
    next.reserve(static_cast<size_t>(drop ? m : m + 1));

    // New site for the fresh variable u; its value rides the right bond.
    {
        Site s0;
        s0.left = 1;
        s0.right = 4;
        s0.m = Eigen::MatrixXcd::Zero(4, 4);
        for (int u = 0; u < 4; ++u) s0.m(u, u) = self_factor[u];
        next.push_back(std::move(s0));
    }

    // Terminator for the variable leaving the memory window.
    Eigen::MatrixXcd terminator;  // 4 x (left of the oldest site)
    if (drop) {
        const Site& oldest = sites_[static_cast<size_t>(m - 1)];
        terminator = Eigen::MatrixXcd::Zero(4, oldest.left);
        for (int c = 0; c < 4; ++c)
            for (int a = 0; a < oldest.left; ++a) {
                std::complex<double> acc = 0.0;
                for (int s = 0; s < 4; ++s)
                    acc += pair_factors[static_cast<size_t>(memory_steps - 1)](c, s) *
                           oldest.m(a * 4 + s, 0);
                terminator(c, a) = acc;
            }
    }

    const int last_j = drop ? m - 1 : m;  // sites of the new chain are 0..last_j
    for (int j = 1; j <= last_j; ++j) {
        const Site& old = sites_[static_cast<size_t>(j - 1)];
        const Eigen::Matrix4cd& pf = pair_factors[static_cast<size_t>(j - 1)];
        const bool closes_u = j == last_j;  // u bond terminates at the last site
        const bool absorbs_terminator = drop && j == last_j;

        Site ns;
        ns.left = 4 * old.left;
        if (absorbs_terminator) {
            ns.right = 1;
            ns.m = Eigen::MatrixXcd::Zero(ns.left * 4, 1);
            for (int c = 0; c < 4; ++c)
                for (int a = 0; a < old.left; ++a)
                    for (int s = 0; s < 4; ++s) {
                        std::complex<double> f = pf(c, s);
                        if (j == 1) f *= propagator(c, s);
                        std::complex<double> acc = 0.0;
                        for (int ap = 0; ap < old.right; ++ap)
                            acc += old.m(a * 4 + s, ap) * terminator(c, ap);
                        ns.m((c * old.left + a) * 4 + s, 0) = f * acc;
                    }
        } else if (closes_u) {
            ns.right = old.right;  // old.right == 1 here
            ns.m = Eigen::MatrixXcd::Zero(ns.left * 4, ns.right);
            for (int c = 0; c < 4; ++c)
                for (int a = 0; a < old.left; ++a)
                    for (int s = 0; s < 4; ++s) {
                        std::complex<double> f = pf(c, s);
                        if (j == 1) f *= propagator(c, s);
                        for (int r = 0; r < old.right; ++r)
                            ns.m((c * old.left + a) * 4 + s, r) = f * old.m(a * 4 + s, r);
                    }
        } else {
            ns.right = 4 * old.right;
            ns.m = Eigen::MatrixXcd::Zero(ns.left * 4, ns.right);
            for (int c = 0; c < 4; ++c)
                for (int a = 0; a < old.left; ++a)
                    for (int s = 0; s < 4; ++s) {
                        std::complex<double> f = pf(c, s);
                        if (j == 1) f *= propagator(c, s);
                        for (int r = 0; r < old.right; ++r)
                            ns.m((c * old.left + a) * 4 + s, c * old.right + r) =
                                f * old.m(a * 4 + s, r);
                    }
        }
        next.push_back(std::move(ns));
    }

    sites_ = std::move(next);
    StepStats st;
    st.discarded_weight = compress(svd_tol, max_bond);
    st.max_bond = this->max_bond();
    return st;
}

double HistoryMps::compress(double svd_tol, int max_bond) {
    const int n = length();
    if (n < 2) return 0.0;

    // Right-to-left orthogonalization (no truncation).
    for (int j = n - 1; j >= 1; --j) {
        Site& s = sites_[static_cast<size_t>(j)];
        Eigen::MatrixXcd b = view_left__phys_right(s.m, s.left, s.right);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(b.adjoint());
        const int rank = std::min<int>(b.rows(), b.cols());
        Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(b.cols(), rank);
        Eigen::MatrixXcd r =
            qr.matrixQR().topLeftCorner(rank, b.rows()).triangularView<Eigen::Upper>();
        // b = (r^dagger) (q^dagger); q^dagger has orthonormal rows.
        s.m = view_to_storage(q.adjoint(), rank, s.right);
        const int new_left = rank;
        Site& prev = sites_[static_cast<size_t>(j - 1)];
        prev.m = prev.m * r.adjoint();
        prev.right = new_left;
        s.left = new_left;
    }

    // Left-to-right SVD sweep with truncation.
    double discarded = 0.0;
    const double eff_tol = std::max(svd_tol, 1e-14);
    for (int j = 0; j < n - 1; ++j) {
        Site& s = sites_[static_cast<size_t>(j)];
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(s.m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        const double smax = sv.size() > 0 ? sv[0] : 0.0;
        int keep = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv[i] > eff_tol * smax) ++keep;
        keep = std::max(keep, 1);
        if (keep > max_bond)
            throw solver_error("bond dimension " + std::to_string(keep) +
                               " exceeds the configured cap " + std::to_string(max_bond));
        double total_w = 0.0, cut_w = 0.0;
        for (int i = 0; i < sv.size(); ++i) {
            total_w += sv[i] * sv[i];
            if (i >= keep) cut_w += sv[i] * sv[i];
        }
        if (total_w > 0.0) discarded += cut_w / total_w;

        s.m = svd.matrixU().leftCols(keep);
        s.right = keep;
        Eigen::MatrixXcd carry =
            sv.head(keep).asDiagonal() * svd.matrixV().leftCols(keep).adjoint();

        Site& nxt = sites_[static_cast<size_t>(j + 1)];
        Eigen::MatrixXcd nxt_view = view_left__phys_right(nxt.m, nxt.left, nxt.right);
        Eigen::MatrixXcd merged = carry * nxt_view;
        nxt.left = keep;
        nxt.m = view_to_storage(merged, keep, nxt.right);
    }
    return discarded;
}

Eigen::Vector4cd HistoryMps::marginal() const {
    const int n = length();
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
    for (int j = n - 1; j >= 1; --j) {
        const Site& s = sites_[static_cast<size_t>(j)];
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(s.left);
        for (int a = 0; a < s.left; ++a) {
            std::complex<double> acc = 0.0;
            for (int p = 0; p < 4; ++p) acc += (s.m.row(a * 4 + p) * v)(0, 0);
            out[a] = acc;
        }
        v = out;
    }
    const Site& s0 = sites_.front();
    Eigen::Vector4cd rho;
    for (int u = 0; u < 4; ++u) {
        std::complex<double> acc = 0.0;
        for (int c = 0; c < s0.right; ++c) acc += s0.m(u, c) * v[c];
        rho[u] = acc;
    }
    return rho;
}

void HistoryMps::scale(const std::complex<double>& factor) {
    sites_.front().m *= factor;
}

int HistoryMps::max_bond() const {
    int b = 1;
    for (const auto& s : sites_) b = std::max(b, s.right);
    return b;
}

}  // namespace phonsim
