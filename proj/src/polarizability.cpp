#include "he3/polarizability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>

#include "he3/angular.hpp"
#include "he3/constants.hpp"
#include "he3/error.hpp"

namespace he3::polarizability {

using angular::triangle_ok;
using angular::wigner6j;

namespace {

constexpr double pi = 3.14159265358979323846;

int parity(long long n) { return (n % 2 + 2) % 2 ? -1 : 1; }

// Hyperfine splittings of the helium levels for which constants are known,
// as offsets (Hz) of each F level from the catalog J-level energy.
std::map<std::pair<std::string, int>, double> helium_hf_offsets() {
    return {
        {{"1s2s 3S1", 3}, -2.246567059e9},
        {{"1s2s 3S1", 1}, +4.493134118e9},
        {{"1s2p 3P2", 5}, -2.153160e9},
        {{"1s2p 3P2", 3}, -0.373270e9},
        {{"1s2p 3P1", 3}, +2.517643e9},
        {{"1s2p 3P1", 1}, +1.846233e9},
        {{"1s2p 3P0", 1}, +0.323813e9},
    };
}

double hf_offset(const Options& opts, const std::string& key, int tF) {
    auto it = opts.hf_offsets_Hz.find({key, tF});
    return it == opts.hf_offsets_Hz.end() ? 0.0 : it->second;
}

void validate_state(const Catalog& cat, const HfState& st,
                    const Options& opts) {
    if (!cat.has_level(st.level_key))
        throw Error("unknown-state", "no catalog level '" + st.level_key + "'");
    const int dJ = cat.level(st.level_key).twice_J;
    if (st.tF < std::abs(dJ - opts.tI) || st.tF > dJ + opts.tI ||
        (st.tF + opts.tI + dJ) % 2 != 0)
        throw Error("unknown-state",
                    "F out of range for " + st.level_key);
    if (std::abs(st.tmF) > st.tF || (st.tmF - st.tF) % 2 != 0)
        throw Error("unknown-state", "|m_F| exceeds F");
}

// One hyperfine resonance of a line: angular frequency (signed, rad/s) and
// the (2F'+1)(2J+1){J J' 1; F' F I}^2 weight multiplying |<J||d||J'>|^2.
struct HfComponent {
    double omega = 0.0;
    double weight = 0.0;
    int tFp = 0;
};

// One dipole line touching the state, with its resolved hyperfine structure.
struct LineTerm {
    double omega_J = 0.0;  // signed J-level splitting, rad/s
    double d2 = 0.0;       // |<J||d||J'>|^2, SI (C m)^2
    int tJp = 0;           // doubled J'
    double spread_Hz = 0.0;
    std::vector<HfComponent> comps;
};

std::vector<LineTerm> line_terms(const Catalog& cat, const HfState& st,
                                 const Options& opts) {
    const LevelRecord& self = cat.level(st.level_key);
    const int tJ = self.twice_J;
    const double off_self = hf_offset(opts, st.level_key, st.tF);
    const double d2_unit = constants::dipole_au * constants::dipole_au;

    std::vector<LineTerm> out;
    for (const LineRecord& ln : cat.lines_touching(st.level_key)) {
        const std::string& pk =
            ln.lower_key == st.level_key ? ln.upper_key : ln.lower_key;
        const LevelRecord& partner = cat.level(pk);
        LineTerm t;
        t.tJp = partner.twice_J;
        t.omega_J = 2.0 * pi * (partner.energy_Hz - self.energy_Hz);
        t.d2 = ln.S_au * d2_unit / (self.twice_J + 1.0);
        double lo = 0.0, hi = 0.0;
        bool first = true;
        for (int tFp = std::abs(t.tJp - opts.tI); tFp <= t.tJp + opts.tI;
             tFp += 2) {
            if (!triangle_ok(st.tF, 2, tFp)) continue;
            const double off = hf_offset(opts, pk, tFp);
            if (first) { lo = hi = off; first = false; }
            lo = std::min(lo, off);
            hi = std::max(hi, off);
            HfComponent c;
            c.tFp = tFp;
            c.omega = t.omega_J + 2.0 * pi * (off - off_self);
            const double w6 = wigner6j(tJ, t.tJp, 2, tFp, st.tF, opts.tI);
            c.weight = (tFp + 1.0) * (tJ + 1.0) * w6 * w6;
            t.comps.push_back(c);
        }
        if (t.comps.empty()) continue;
        t.spread_Hz = hi - lo;
        out.push_back(std::move(t));
    }
    return out;
}

void check_exclusion(const std::vector<LineTerm>& terms, double omega,
                     const Options& opts) {
    for (const LineTerm& t : terms)
        for (const HfComponent& c : t.comps)
            if (std::abs(std::abs(omega) - std::abs(c.omega)) <
                opts.exclusion_halfwidth_rad)
                throw Error("exclusion-window",
                            "frequency inside the exclusion window of a "
                            "resonance at " +
                                std::to_string(std::abs(c.omega) / (2e9 * pi)) +
                                " GHz");
}

bool use_j_basis(const LineTerm& t, double omega, const Options& opts) {
    if (opts.path == SumPath::LargeDetuning) return true;
    if (opts.path == SumPath::HyperfineResolved) return false;
    if (t.spread_Hz <= 0.0) return true;
    double det = std::numeric_limits<double>::infinity();
    for (const HfComponent& c : t.comps)
        det = std::min(det,
                       std::abs(std::abs(omega) - std::abs(c.omega)) /
                           (2.0 * pi));
    return det > opts.jbasis_threshold * t.spread_Hz;
}

}  // namespace

Options::Options() : hf_offsets_Hz(helium_hf_offsets()) {}

Components alpha_components(const Catalog& cat, const HfState& st,
                            double omega, const Options& opts) {
    validate_state(cat, st, opts);
    const auto terms = line_terms(cat, st, opts);
    check_exclusion(terms, omega, opts);

    const int tJ = cat.level(st.level_key).twice_J;
    const double F = 0.5 * st.tF;
    const double hbar = constants::hbar;
    // m_F-independent reduced prefactors of the vector and tensor parts.
    const double pre1 = std::sqrt(6.0 * F * (2 * F + 1) / (F + 1));
    const double pre2 =
        F < 1.0 ? 0.0
                : std::sqrt(40.0 * F * (2 * F + 1) * (2 * F - 1) /
                            (3.0 * (F + 1) * (2 * F + 3)));

    Components a;
    for (const LineTerm& t : terms) {
        if (use_j_basis(t, omega, opts)) {
            const double den = t.omega_J * t.omega_J - omega * omega;
            a.alpha0 += 2.0 * t.omega_J * t.d2 / (3.0 * hbar * den);
            const int ph = parity((2LL * tJ + t.tJp + st.tF + opts.tI) / 2);
            const double common = (tJ + 1.0) * t.d2 / (hbar * den);
            a.alpha1 += ph * pre1 * wigner6j(2, 2, 2, tJ, tJ, t.tJp) *
                        wigner6j(tJ, tJ, 2, st.tF, st.tF, opts.tI) * omega *
                        common;
            a.alpha2 += ph * pre2 * wigner6j(2, 2, 4, tJ, tJ, t.tJp) *
                        wigner6j(tJ, tJ, 4, st.tF, st.tF, opts.tI) *
                        t.omega_J * common;
        } else {
            for (const HfComponent& c : t.comps) {
                const double den = c.omega * c.omega - omega * omega;
                const double d2F = t.d2 * c.weight;
                a.alpha0 += 2.0 * c.omega * d2F / (3.0 * hbar * den);
                const int ph = parity((st.tF + c.tFp) / 2);
                a.alpha1 += -ph * pre1 *
                            wigner6j(2, 2, 2, st.tF, st.tF, c.tFp) * omega *
                            d2F / (hbar * den);
                a.alpha2 += ph * pre2 *
                            wigner6j(2, 2, 4, st.tF, st.tF, c.tFp) * c.omega *
                            d2F / (hbar * den);
            }
        }
    }
    return a;
}

double tensor_angle_factor(double theta) {
    const double c = std::cos(theta);
    return 0.5 * (3.0 * c * c - 1.0);
}

double tensor_state_weight(int tF, int tmF) {
    if (tF < 2) return 0.0;  // F = 1/2: the 2F-1 denominator vanishes
    const double F = 0.5 * tF, m = 0.5 * tmF;
    return (3.0 * m * m - F * (F + 1)) / (F * (2.0 * F - 1.0));
}

double alpha_total(const Catalog& cat, const HfState& st, double omega,
                   double theta, const Options& opts) {
    const Components a = alpha_components(cat, st, omega, opts);
    return a.alpha0 + a.alpha2 * tensor_angle_factor(theta) *
                          tensor_state_weight(st.tF, st.tmF);
}

namespace {

std::vector<double> resonance_lambdas(const Catalog& cat, const HfState& st,
                                      const Options& opts) {
    std::vector<double> out;
    for (const LineTerm& t : line_terms(cat, st, opts))
        for (const HfComponent& c : t.comps)
            out.push_back(2.0 * pi * constants::c / std::abs(c.omega));
    return out;
}

}  // namespace

double find_magic_wavelength(const Catalog& cat, const HfState& a,
                             const HfState& b, double lam_lo, double lam_hi,
                             double theta, const Options& opts) {
    if (a == b)
        throw Error("degenerate-pair",
                    "differential polarizability of a state with itself is "
                    "identically zero");
    if (!(lam_lo > 0.0) || !(lam_hi > lam_lo))
        throw Error("bad-argument", "invalid wavelength bracket");
    validate_state(cat, a, opts);
    validate_state(cat, b, opts);

    const auto diff = [&](double lam) {
        const double w = 2.0 * pi * constants::c / lam;
        return alpha_total(cat, a, w, theta, opts) -
               alpha_total(cat, b, w, theta, opts);
    };

    // Fence off every resonance of either state by the exclusion window,
    // then look for a sign change on each remaining pole-free segment.
    std::vector<std::pair<double, double>> holes;
    for (const HfState* st : {&a, &b})
        for (double lr : resonance_lambdas(cat, *st, opts)) {
            const double dl = opts.exclusion_halfwidth_rad * lr * lr /
                              (2.0 * pi * constants::c);
            if (lr + dl > lam_lo && lr - dl < lam_hi)
                holes.emplace_back(lr - dl, lr + dl);
        }
    std::sort(holes.begin(), holes.end());
    std::vector<std::pair<double, double>> segs;
    double cur = lam_lo;
    for (auto& [ho, hc] : holes) {
        if (ho > cur) segs.emplace_back(cur, std::min(ho, lam_hi));
        cur = std::max(cur, hc);
        if (cur >= lam_hi) break;
    }
    if (cur < lam_hi) segs.emplace_back(cur, lam_hi);

    for (auto& [slo, shi] : segs) {
        const double pad = 1e-9 * (shi - slo);
        double x0 = slo + pad, x1 = shi - pad;
        if (!(x1 > x0)) continue;
        const int n = 256;
        double prev_x = x0, prev_f = diff(x0);
        for (int i = 1; i <= n; ++i) {
            const double x = x0 + (x1 - x0) * i / n;
            const double f = diff(x);
            if (prev_f == 0.0) return prev_x;
            if (std::signbit(f) != std::signbit(prev_f)) {
                double lo = prev_x, hi = x, flo = prev_f;
                for (int it = 0; it < 100; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = diff(mid);
                    if (fm == 0.0) return mid;
                    if (std::signbit(fm) == std::signbit(flo)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                    if ((hi - lo) < 1e-9 * lo * 1e-3) break;
                }
                return 0.5 * (lo + hi);
            }
            prev_x = x;
            prev_f = f;
        }
    }
    throw Error("no-sign-change",
                "differential polarizability does not change sign on the "
                "bracket");
}

TrapParameters trap_from_power(const Catalog& cat, const HfState& st,
                               double P, double w0, double lam, double mass,
                               double theta, const Options& opts) {
    if (P < 0.0 || !(w0 > 0.0) || !(lam > 0.0) || !(mass > 0.0))
        throw Error("bad-argument", "P, w0, lambda, mass must be positive");
    const double omega = 2.0 * pi * constants::c / lam;
    const double alpha = alpha_total(cat, st, omega, theta, opts);
    if (P == 0.0) return {};
    if (alpha <= 0.0)
        throw Error("anti-trapped",
                    "state has negative polarizability at this wavelength");
    const double I0 = 2.0 * P / (pi * w0 * w0);
    const double U0 = alpha * I0 / (2.0 * constants::eps0 * constants::c);
    const double zR = pi * w0 * w0 / lam;
    TrapParameters out;
    out.depth_Hz = U0 / constants::h;
    out.omega_r_rad = std::sqrt(4.0 * U0 / (mass * w0 * w0));
    out.omega_z_rad = std::sqrt(2.0 * U0 / (mass * zR * zR));
    return out;
}

double scattering_rate(double s, double Delta, double Gamma) {
    if (s < 0.0) throw Error("bad-argument", "saturation parameter s < 0");
    const double r = 2.0 * Delta / Gamma;
    return Gamma * 0.5 * s / (1.0 + r * r + s);
}

double two_photon_rate_rescale(double rate_ref, double s_ref, double D_ref,
                               double s_t, double D_t) {
    if (D_ref == 0.0 || D_t == 0.0)
        throw Error("zero-detuning", "detuning must be nonzero");
    const double rs = s_t / s_ref, rd = D_ref / D_t;
    return rate_ref * rs * rs * rd * rd;
}

Curve polarizability_curve(const Catalog& cat, const HfState& st,
                           double lam_min, double lam_max, int points,
                           double theta, const Options& opts) {
    if (points < 2 || !(lam_min > 0.0) || !(lam_max > lam_min))
        throw Error("bad-argument", "invalid wavelength grid");
    validate_state(cat, st, opts);
    const auto terms = line_terms(cat, st, opts);
    const double tw = tensor_state_weight(st.tF, st.tmF);
    const double af = tensor_angle_factor(theta);

    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = lam_min + (lam_max - lam_min) * i / (points - 1);

    std::vector<std::optional<Components>> vals(points);
    const auto eval = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            const double omega = 2.0 * pi * constants::c / grid[i];
            try {
                check_exclusion(terms, omega, opts);
            } catch (const Error&) {
                continue;
            }
            vals[i] = alpha_components(cat, st, omega, opts);
        }
    };
    const int nthreads =
        std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    const int chunk = (points + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back(eval, t * chunk,
                          std::min(points, (t + 1) * chunk));
    for (auto& th : pool) th.join();

    Curve out;
    out.state = st;
    out.theta_rad = theta;
    for (int i = 0; i < points; ++i) {
        if (!vals[i]) continue;
        out.lambda_m.push_back(grid[i]);
        out.alpha0.push_back(vals[i]->alpha0);
        out.alpha1.push_back(vals[i]->alpha1);
        out.alpha2.push_back(vals[i]->alpha2);
        out.total.push_back(vals[i]->alpha0 + vals[i]->alpha2 * af * tw);
    }
    return out;
}

}  // namespace he3::polarizability
