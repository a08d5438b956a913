#include "he3/mqdt.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>

#include "he3/angular.hpp"
#include "he3/constants.hpp"
#include "he3/error.hpp"

namespace he3::mqdt {

using angular::triangle_ok;
using angular::wigner6j;
using angular::wigner9j;

namespace {

constexpr double pi = 3.14159265358979323846;
// Mass-corrected Rydberg in GHz and in hartree.
const double kRy_GHz = constants::Ry_He3_Hz / 1e9;
const double kRy_au = 0.5 * constants::Ry_He3_ratio;

const std::map<std::string, DefectFit>& fit_table() {
    static const std::map<std::string, DefectFit> table = [] {
        // columns: mu0, mu1, mu2, mu3, mu4
        const struct {
            const char* name;
            double c[5];
        } rows[] = {
            {"1S0", {0.139716, 0.054412, 0.323622, -23.4026, 727.44}},
            {"3S1", {0.296655, 0.0754184, 0.262775, -20.269, 598.537}},
            {"1P1", {-0.0121597, 0.0136929, 0.337192, -26.8352, 876.553}},
            {"3P0", {0.0683488, -0.0385954, 0.218744, -25.0712, 795.634}},
            {"3P1", {0.0683787, -0.0385723, 0.218726, -25.0681, 795.521}},
            {"3P2", {0.0683811, -0.0385699, 0.218737, -25.0708, 795.618}},
            {"1D2", {0.00211422, -0.00722717, 0.158517, -10.9504, 254.678}},
            {"3D1", {0.00288581, -0.0137631, 0.159786, -10.9372, 254.559}},
            {"3D2", {0.00289117, -0.0137623, 0.159803, -10.9383, 254.592}},
            {"3D3", {0.00289155, -0.0137633, 0.159795, -10.9382, 254.593}},
            {"1F3", {0.000440873, -0.00472127, 0.27874, -26.575, 863.541}},
            {"3F2", {0.000445445, -0.00482053, 0.279593, -26.5759, 863.522}},
            {"3F3", {0.000449169, -0.00479613, 0.279751, -26.5768, 863.502}},
            {"3F4", {0.000447954, -0.00482045, 0.279605, -26.5772, 863.565}},
        };
        std::map<std::string, DefectFit> t;
        for (const auto& r : rows) {
            DefectFit f;
            f.series = r.name;
            std::copy(r.c, r.c + 5, f.mu);
            t[f.series] = f;
        }
        return t;
    }();
    return table;
}

const char kLetters[] = "SPDF";

std::string series_name(int tS, int L, int tJ) {
    return std::to_string(tS + 1) + kLetters[L] + std::to_string(tJ / 2);
}

int parity(long long n) { return (n % 2 + 2) % 2 ? -1 : 1; }

}  // namespace

double DefectFit::eval(double eps) const {
    return mu[0] + eps * (mu[1] + eps * (mu[2] + eps * (mu[3] + eps * mu[4])));
}

const DefectFit& defect_fit(const std::string& series) {
    auto it = fit_table().find(series);
    if (it == fit_table().end())
        throw Error("unknown-series", "no defect fit for '" + series + "'");
    return it->second;
}

double quantum_defect(const std::string& series, double eps) {
    if (std::abs(eps) > kRy_au / 25.0)
        std::cerr << "warning: quantum defect for " << series
                  << " extrapolated outside the fitted range (eps = " << eps
                  << " a.u.)\n";
    return defect_fit(series).eval(eps);
}

ChannelSet make_channel_set(int l, int tF) {
    if (l < 0 || l > 3)
        throw Error("empty-channel-space", "only S, P, D, F series are fitted");
    ChannelSet cs;
    cs.l = l;
    cs.tF = tF;
    const int tI = 1, tjc = 1;  // core: j_c = s_c = 1/2; nuclear I = 1/2
    for (int tfc = 0; tfc <= 2; tfc += 2)
        for (int tje = std::abs(2 * l - 1); tje <= 2 * l + 1; tje += 2) {
            if (!triangle_ok(tI, tjc, tfc) || !triangle_ok(tfc, tje, tF))
                continue;
            cs.lr.push_back({tfc, tje,
                             tfc == 2 ? kThresholdF1_GHz : kThresholdF0_GHz});
        }
    for (int tS = 0; tS <= 2; tS += 2)
        for (int tJ = std::abs(2 * l - tS); tJ <= 2 * l + tS; tJ += 2) {
            if (!triangle_ok(tJ, tI, tF)) continue;
            cs.sr.push_back({tS, l, tJ, series_name(tS, l, tJ)});
        }
    if (cs.lr.empty() || cs.sr.empty())
        throw Error("empty-channel-space",
                    "no channels for l=" + std::to_string(l) +
                        ", 2F=" + std::to_string(tF));
    if (cs.lr.size() != cs.sr.size())
        throw Error("empty-channel-space", "channel count mismatch");

    // <[(I j_c) f_c, j_e] F | [I (SL)J] F>. The electron spin recoupling is
    // the 9j (s_c s_e S; l_c l_e L; j_c j_e J); stacking I on top gives the
    // standard 6j with phase (-1)^(I + j_c + j_e + F).
    const int n = int(cs.lr.size());
    cs.U = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a) {
            const auto& c = cs.lr[i];
            const auto& s = cs.sr[a];
            const double pref =
                std::sqrt((s.tS + 1.0) * (2.0 * s.L + 1.0) * (tjc + 1.0) *
                          (c.tje + 1.0) * (c.tfc + 1.0) * (s.tJ + 1.0));
            const int ph = parity((tI + tjc + c.tje + tF) / 2);
            cs.U(i, a) = pref * ph *
                         wigner6j(tI, tjc, c.tfc, c.tje, tF, s.tJ) *
                         wigner9j(1, 1, s.tS, 0, 2 * l, 2 * s.L, tjc, c.tje,
                                  s.tJ);
        }
    return cs;
}

Eigen::MatrixXd frame_transformation(int l, int tF) {
    return make_channel_set(l, tF).U;
}

Eigen::MatrixXd k_matrix(const ChannelSet& cs, double eps) {
    const int n = int(cs.sr.size());
    Eigen::VectorXd t(n);
    for (int a = 0; a < n; ++a)
        t(a) = std::tan(pi * defect_fit(cs.sr[a].series).eval(eps));
    return cs.U * t.asDiagonal() * cs.U.transpose();
}

namespace {

// det[K diag(cos pi nu) + diag(sin pi nu)]: an analytic function of energy
// whose zeros are the bound states (the tan-pole sign flips of the raw
// determinant are multiplied away by the cosines).
struct DetEval {
    const ChannelSet& cs;
    const BoundOptions& opts;

    double lowest_GHz() const {
        double lo = cs.lr.front().threshold_GHz;
        for (const auto& c : cs.lr) lo = std::min(lo, c.threshold_GHz);
        return lo;
    }

    std::vector<double> nus(double E_GHz) const {
        std::vector<double> out;
        for (const auto& c : cs.lr)
            out.push_back(std::sqrt(kRy_GHz / (c.threshold_GHz - E_GHz)));
        return out;
    }

    Eigen::MatrixXd matrix(double E_GHz) const {
        // defect fits take the binding energy in hartree
        const double eps = -E_GHz * 1e9 * constants::h / constants::E_h;
        Eigen::MatrixXd K = k_matrix(cs, eps);
        if (opts.zero_coupling)
            K = Eigen::MatrixXd(K.diagonal().asDiagonal());
        const auto nu = nus(E_GHz);
        const int n = int(nu.size());
        Eigen::MatrixXd M(n, n);
        for (int j = 0; j < n; ++j) {
            const double cj = std::cos(pi * nu[j]), sj = std::sin(pi * nu[j]);
            for (int i = 0; i < n; ++i)
                M(i, j) = K(i, j) * cj + (i == j ? sj : 0.0);
        }
        return M;
    }

    double det(double E_GHz) const { return matrix(E_GHz).determinant(); }
};

}  // namespace

std::vector<BoundState> bound_states(const ChannelSet& cs, double Emin,
                                     double Emax, const BoundOptions& opts) {
    DetEval f{cs, opts};
    const double lo = f.lowest_GHz();
    if (!(Emin < Emax) || Emax >= lo)
        throw Error("bad-window",
                    "energy window must lie below the lowest threshold");
    // scan on a uniform grid in nu w.r.t. the lowest threshold
    const double nu_a = std::sqrt(kRy_GHz / (lo - Emin));
    const double nu_b = std::sqrt(kRy_GHz / (lo - Emax));
    const auto E_of = [&](double nu) { return lo - kRy_GHz / (nu * nu); };

    std::vector<BoundState> out;
    const int steps = int(std::ceil((nu_b - nu_a) / opts.nu_step));
    double x0 = nu_a, f0 = f.det(E_of(x0));
    for (int i = 1; i <= steps; ++i) {
        const double x1 = std::min(nu_b, nu_a + i * opts.nu_step);
        const double f1 = f.det(E_of(x1));
        if (std::signbit(f0) != std::signbit(f1) || f1 == 0.0) {
            double a = x0, b = x1, fa = f0;
            for (int it = 0; it < 80; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = f.det(E_of(m));
                if (fm == 0.0) { a = b = m; break; }
                if (std::signbit(fm) == std::signbit(fa)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            const double nu_root = 0.5 * (a + b);
            BoundState st;
            st.E_GHz = E_of(nu_root);
            st.nu = f.nus(st.E_GHz);
            // channel weights from the null vector x of K + tan(pi nu):
            // M y = 0 with x = cos(pi nu) y, normalized with the nu^3
            // density-of-states factor
            const Eigen::MatrixXd M = f.matrix(st.E_GHz);
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
            const Eigen::VectorXd y = svd.matrixV().col(M.cols() - 1);
            double norm = 0.0;
            std::vector<double> w(st.nu.size());
            for (size_t k = 0; k < st.nu.size(); ++k) {
                const double xk = std::cos(pi * st.nu[k]) * y(int(k));
                w[k] = st.nu[k] * st.nu[k] * st.nu[k] * xk * xk;
                norm += w[k];
            }
            for (double& v : w) v /= norm;
            st.amplitudes.resize(st.nu.size());
            for (size_t k = 0; k < st.nu.size(); ++k) {
                const double xk = std::cos(pi * st.nu[k]) * y(int(k));
                st.amplitudes[k] = std::copysign(std::sqrt(w[k]), xk);
            }
            st.fractions = std::move(w);
            out.push_back(std::move(st));
        }
        x0 = x1;
        f0 = f1;
    }
    std::sort(out.begin(), out.end(),
              [](const BoundState& a, const BoundState& b) {
                  return a.E_GHz < b.E_GHz;
              });
    return out;
}

std::vector<BoundState> bound_states_nu(const ChannelSet& cs, double nu_min,
                                        double nu_max,
                                        const BoundOptions& opts) {
    DetEval f{cs, opts};
    const double lo = f.lowest_GHz();
    if (!(nu_min > 0.0) || !(nu_max > nu_min))
        throw Error("bad-window", "need 0 < nu_min < nu_max");
    return bound_states(cs, lo - kRy_GHz / (nu_min * nu_min),
                        lo - kRy_GHz / (nu_max * nu_max), opts);
}

std::vector<LuFanoPoint> lu_fano(const ChannelSet& cs, double nu_min,
                                 double nu_max, const BoundOptions& opts) {
    std::vector<LuFanoPoint> out;
    for (const BoundState& st : bound_states_nu(cs, nu_min, nu_max, opts)) {
        // lower threshold = f_c = 1 channel(s); upper = f_c = 0
        double nu1 = 0.0, nu0 = 0.0;
        for (size_t k = 0; k < cs.lr.size(); ++k)
            (cs.lr[k].tfc == 2 ? nu1 : nu0) = st.nu[k];
        if (nu0 == 0.0) nu0 = nu1;  // single-channel symmetry
        out.push_back({nu1, nu0 - std::floor(nu0)});
    }
    return out;
}

}  // namespace he3::mqdt
