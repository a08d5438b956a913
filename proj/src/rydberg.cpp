#include "he3/rydberg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <tuple>
#include <vector>

#include "he3/angular.hpp"
#include "he3/constants.hpp"
#include "he3/error.hpp"
#include "he3/mqdt.hpp"

namespace he3::rydberg {
namespace {

using angular::clebsch_gordan;

constexpr double kRy_GHz = constants::Ry_He3_Hz / 1e9;
constexpr double kRy_au = constants::Ry_He3_Hz * constants::h / constants::E_h;
// 1 a.u. of the dipole-dipole coefficient d^2 expressed in GHz um^3.
const double kC3_au_GHz_um3 =
    (constants::E_h / constants::h / 1e9) *
    std::pow(constants::a0 * 1e6, 3);
const double kC6_au_GHz_um6 = constants::C6_au_to_GHz_um6;

// ---------------------------------------------------------------------------
// Radial wavefunctions: inward Numerov on u'' = [l(l+1)/r^2 - 2/r + 1/nu^2] u
// with a small-r cutoff excluding the core region.

struct Wave {
    double rmin = 0.0, h = 0.0;
    std::vector<double> u;  // normalized, u[i] at r = rmin + i h
};

Wave numerov(double nu, int l, double rmin, double rmax, double h) {
    const auto n = static_cast<std::size_t>(std::ceil((rmax - rmin) / h)) + 1;
    Wave w;
    w.rmin = rmin;
    w.h = h;
    w.u.assign(n, 0.0);
    auto f = [&](std::size_t i) {
        const double r = rmin + i * h;
        return l * (l + 1.0) / (r * r) - 2.0 / r + 1.0 / (nu * nu);
    };
    w.u[n - 1] = 1e-12;
    w.u[n - 2] = 2e-12;
    const double h2 = h * h / 12.0;
    for (std::size_t i = n - 2; i > 0; --i) {
        w.u[i - 1] = (2.0 * (1.0 + 5.0 * h2 * f(i)) * w.u[i] -
                      (1.0 - h2 * f(i + 1)) * w.u[i + 1]) /
                     (1.0 - h2 * f(i - 1));
        if (std::abs(w.u[i - 1]) > 1e60) {
            const double s = 1e-60;
            for (std::size_t j = i - 1; j < n; ++j) w.u[j] *= s;
        }
    }
    double norm = 0.0;
    for (double v : w.u) norm += v * v;
    norm *= h;
    if (!(norm > 0.0) || !std::isfinite(norm)) throw Error("no-convergence", "radial integration failed");
    const double s = 1.0 / std::sqrt(norm);
    for (double& v : w.u) v *= s;
    return w;
}

double radial_uncached(double nu, int l, double nup, int lp) {
    const double numax = std::max(nu, nup);
    const double rmax = 2.0 * numax * (numax + 15.0);
    const double rmin = 0.05;
    const double h = std::min(0.01, std::max(5e-4, rmax * 2.5e-5));
    const Wave w1 = numerov(nu, l, rmin, rmax, h);
    const Wave w2 = numerov(nup, lp, rmin, rmax, h);
    double acc = 0.0;
    const std::size_t n = std::min(w1.u.size(), w2.u.size());
    for (std::size_t i = 0; i < n; ++i) {
        acc += w1.u[i] * w2.u[i] * (rmin + i * h);
    }
    return acc * h;
}

// ---------------------------------------------------------------------------
// Series energies from the quantum-defect fits of the stretched (pure
// triplet, core f_c = 1) symmetry of each l.

const char* triplet_series(int l) {
    switch (l) {
        case 0: return "3S1";
        case 1: return "3P2";
        case 2: return "3D3";
        case 3: return "3F4";
        default: throw Error("bad-argument", "series energies limited to l <= 3");
    }
}

double series_nu(int n, int l) {
    const auto& fit = mqdt::defect_fit(triplet_series(l));
    double nu = n - fit.eval(0.0);
    for (int it = 0; it < 40; ++it) {
        nu = n - fit.eval(kRy_au / (nu * nu));
    }
    return nu;
}

std::int64_t quantize(double x) { return std::llround(x * 1e9); }

double cached_radial(double nu, int l, double nup, int lp) {
    using Key = std::tuple<std::int64_t, int, std::int64_t, int>;
    static std::map<Key, double> cache;
    Key key{quantize(nu), l, quantize(nup), lp};
    Key rkey{quantize(nup), lp, quantize(nu), l};
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const double v = radial_integral(nu, l, nup, lp);
    cache[key] = v;
    cache[rkey] = v;
    return v;
}

// <f| C^1_q |i> x <f| r |i>, one atom; spherical-harmonic matrix element in
// the uncoupled |l m> basis.
double dipole_q(const AtomState& f, const AtomState& i, int q) {
    if (f.m != i.m + q || std::abs(f.l - i.l) != 1) return 0.0;
    const double red = std::sqrt((2.0 * i.l + 1.0) / (2.0 * f.l + 1.0)) *
                       clebsch_gordan(2 * i.l, 0, 2, 0, 2 * f.l, 0);
    const double cg =
        clebsch_gordan(2 * i.l, 2 * i.m, 2, 2 * q, 2 * f.l, 2 * f.m);
    if (red == 0.0 || cg == 0.0) return 0.0;
    return red * cg * cached_radial(i.nu, i.l, f.nu, f.l);
}

}  // namespace

double radial_integral(double nu, int l, double nup, int lp) {
    if (std::abs(l - lp) != 1) throw Error("selection-rule", "dipole requires |l - l'| = 1");
    if (l < 0 || lp < 0) throw Error("bad-argument", "l must be nonnegative");
    if (nu < l + 1 - 1e-9 || nup < lp + 1 - 1e-9) {
        throw Error("bad-argument", "effective quantum number below l+1");
    }
    return radial_uncached(nu, l, nup, lp);
}

AtomState series_state(int n, int l, int m) {
    if (std::abs(m) > l) throw Error("bad-argument", "|m| > l");
    if (n <= l) throw Error("bad-argument", "n <= l");
    AtomState st;
    st.nu = series_nu(n, l);
    st.l = l;
    st.m = m;
    st.E_GHz = mqdt::kThresholdF1_GHz - kRy_GHz / (st.nu * st.nu);
    return st;
}

double c3_element(const PairState& bra, const PairState& ket) {
    const int q1 = bra.a.m - ket.a.m;
    const int q2 = bra.b.m - ket.b.m;
    if (q1 + q2 != 0 || std::abs(q1) > 1) return 0.0;
    if (std::abs(bra.a.l - ket.a.l) != 1 || std::abs(bra.b.l - ket.b.l) != 1) {
        return 0.0;
    }
    // V_dd R^3 = d1.d2 - 3 d1z d2z = -(2 d0 d0 + d+1 d-1 + d-1 d+1)
    const double coeff = (q1 == 0) ? -2.0 : -1.0;
    const double v =
        coeff * dipole_q(bra.a, ket.a, q1) * dipole_q(bra.b, ket.b, q2);
    return v * kC3_au_GHz_um3;
}

double c6_second_order(const PairState& target,
                       const std::vector<PairState>& intermediates,
                       double degeneracy_floor_GHz) {
    double c6 = 0.0;
    for (const auto& k : intermediates) {
        const double v = c3_element(k, target);
        if (v == 0.0) continue;
        const double de = target.E_GHz() - k.E_GHz();
        if (std::abs(de) < degeneracy_floor_GHz) {
            // Forster resonance: reported, not summed.
            std::fprintf(stderr,
                         "warning: near-degenerate intermediate pair "
                         "(dE = %.3g GHz) excluded from C6 sum\n",
                         de);
            continue;
        }
        c6 += v * v / de;
    }
    return c6;
}

C6Result c6_stretched_pair(int n, int l, const C6Policy& policy) {
    if (l < 0 || l > 3) throw Error("bad-argument", "l must be in [0, 3]");
    if (l == 2) {
        std::fprintf(stderr,
                     "warning: stretched nd pair C6 omits the "
                     "near-degenerate high-l manifold; estimate only\n");
    }
    PairState target;
    target.a = series_state(n, l, l);
    target.b = target.a;
    const int M = 2 * l;
    std::vector<PairState> inter;
    for (int l1 : {l - 1, l + 1}) {
        if (l1 < 0 || l1 > 3) continue;
        for (int l2 : {l - 1, l + 1}) {
            if (l2 < 0 || l2 > 3) continue;
            for (int n1 = n - policy.dn; n1 <= n + policy.dn; ++n1) {
                for (int n2 = n - policy.dn; n2 <= n + policy.dn; ++n2) {
                    if (n1 <= l1 || n2 <= l2) continue;
                    for (int m1 = -l1; m1 <= l1; ++m1) {
                        const int m2 = M - m1;
                        if (std::abs(m2) > l2) continue;
                        PairState p;
                        p.a = series_state(n1, l1, m1);
                        p.b = series_state(n2, l2, m2);
                        inter.push_back(p);
                    }
                }
            }
        }
    }
    C6Result res;
    res.GHz_um6 =
        c6_second_order(target, inter, policy.degeneracy_floor_GHz);
    res.au = res.GHz_um6 / kC6_au_GHz_um6;
    res.nu = target.a.nu;
    res.scaled_au = res.au / std::pow(res.nu, 11);
    return res;
}

C6Result c6_s_pair(int n, const C6Policy& policy) {
    return c6_stretched_pair(n, 0, policy);
}

namespace {

// ---------------------------------------------------------------------------
// Hyperfine-resolved (coupled-channel) pair machinery: each atom is an MQDT
// eigenstate expanded over (f_c, j_e) F channels with signed amplitudes; the
// dipole operator acts on the orbital part only and the spin structure is
// recoupled numerically.

struct HfComponent {
    int tfc = 0, tje = 0;
    double nu = 0.0, amp = 0.0;
};

struct HfEig {
    int l = 0, tF = 0;
    double E_GHz = 0.0;
    std::vector<HfComponent> comp;
};

// <l' m'| C^1_q |l m>
double orbital_c1(int lp, int mp, int q, int l, int m) {
    if (mp != m + q || std::abs(lp - l) != 1) return 0.0;
    return std::sqrt((2.0 * l + 1.0) / (2.0 * lp + 1.0)) *
           clebsch_gordan(2 * l, 0, 2, 0, 2 * lp, 0) *
           clebsch_gordan(2 * l, 2 * m, 2, 2 * q, 2 * lp, 2 * mp);
}

// <(l' s) j_e' m_e'| C^1_q |(l s) j_e m_e>, electron spin a spectator.
double je_element(int lp, int tjep, int tmep, int q, int l, int tje, int tme) {
    double acc = 0.0;
    for (int tms = -1; tms <= 1; tms += 2) {
        const int tml = tme - tms;
        const int tmlp = tmep - tms;
        if (std::abs(tml) > 2 * l || std::abs(tmlp) > 2 * lp) continue;
        acc += clebsch_gordan(2 * lp, tmlp, 1, tms, tjep, tmep) *
               clebsch_gordan(2 * l, tml, 1, tms, tje, tme) *
               orbital_c1(lp, tmlp / 2, q, l, tml / 2);
    }
    return acc;
}

// <(f_c j_e') F' M'| C^1_q |(f_c j_e) F M>, core spin a spectator.
double channel_angular(int lp, const HfComponent& cp, int tFp, int tMp, int q,
                       int l, const HfComponent& c, int tF, int tM) {
    if (cp.tfc != c.tfc) return 0.0;
    double acc = 0.0;
    for (int tmc = -c.tfc; tmc <= c.tfc; tmc += 2) {
        const int tme = tM - tmc;
        const int tmep = tMp - tmc;
        if (std::abs(tme) > c.tje || std::abs(tmep) > cp.tje) continue;
        acc += clebsch_gordan(c.tfc, tmc, cp.tje, tmep, tFp, tMp) *
               clebsch_gordan(c.tfc, tmc, c.tje, tme, tF, tM) *
               je_element(lp, cp.tje, tmep, q, l, c.tje, tme);
    }
    return acc;
}

// Full one-atom dipole element (a.u.) between MQDT eigenstates; q is fixed
// by the magnetic quantum numbers.
double eig_dipole(const HfEig& f, int tMf, const HfEig& i, int tMi) {
    const int q = (tMf - tMi) / 2;
    if (tMf - tMi != 2 * q || std::abs(q) > 1) return 0.0;
    double acc = 0.0;
    for (const auto& cf : f.comp) {
        for (const auto& ci : i.comp) {
            if (cf.tfc != ci.tfc) continue;
            const double ang = channel_angular(f.l, cf, f.tF, tMf, q, i.l, ci,
                                               i.tF, tMi);
            if (ang == 0.0) continue;
            acc += cf.amp * ci.amp * ang *
                   cached_radial(ci.nu, i.l, cf.nu, f.l);
        }
    }
    return acc;
}

HfEig to_eig(const mqdt::ChannelSet& cs, const mqdt::BoundState& st, int l) {
    HfEig e;
    e.l = l;
    e.tF = cs.tF;
    e.E_GHz = st.E_GHz;
    for (std::size_t k = 0; k < cs.lr.size(); ++k) {
        e.comp.push_back(
            {cs.lr[k].tfc, cs.lr[k].tje, st.nu[k], st.amplitudes[k]});
    }
    return e;
}

// All l=1 eigenstates of every reachable F' symmetry whose f_c=1 effective
// quantum number is within dn of n.
std::vector<HfEig> p_eigenstates(int n, int dn) {
    std::vector<HfEig> out;
    for (int tFp : {1, 3, 5}) {
        const mqdt::ChannelSet cs = mqdt::make_channel_set(1, tFp);
        const auto roots =
            mqdt::bound_states_nu(cs, n - dn - 0.6, n + dn + 0.4);
        for (const auto& st : roots) out.push_back(to_eig(cs, st, 1));
    }
    return out;
}

}  // namespace

C6Result c6_s12_pair(int n, int branch, const C6Policy& policy) {
    if (branch < 0 || branch > 1) throw Error("bad-argument", "branch in {0,1}");
    const mqdt::ChannelSet cs = mqdt::make_channel_set(0, 1);
    std::size_t i0 = 0, i1 = 0;
    for (std::size_t i = 0; i < cs.lr.size(); ++i) {
        (cs.lr[i].tfc == 0 ? i0 : i1) = i;
    }
    // Roots labeled n when the f_c=0 effective quantum number lies in
    // (n-1, n]; there are two per label (lower/upper in energy).
    const auto scan = mqdt::bound_states_nu(cs, n - 1.0, n + 1.3);
    std::vector<mqdt::BoundState> sel;
    for (const auto& r : scan) {
        if (r.nu[i0] > n - 1.0 && r.nu[i0] <= n) sel.push_back(r);
    }
    if (sel.size() < 2) throw Error("no-convergence", "expected two roots");
    const auto& st = sel[branch == 0 ? sel.size() - 2 : sel.size() - 1];
    const HfEig s = to_eig(cs, st, 0);

    const int nc = static_cast<int>(std::lround(st.nu[i1]));
    const auto peigs = p_eigenstates(nc, policy.dn);
    const double Ebar = 2.0 * s.E_GHz;
    // Both atoms in the stretched M_F = +1/2 substate.
    const int tMs = 1;
    double c6 = 0.0;
    for (const auto& p1 : peigs) {
        for (int tM1 = -p1.tF; tM1 <= p1.tF; tM1 += 2) {
            const int q1 = (tM1 - tMs) / 2;
            if (tM1 - tMs != 2 * q1 || std::abs(q1) > 1) continue;
            const double d1 = eig_dipole(p1, tM1, s, tMs);
            if (d1 == 0.0) continue;
            for (const auto& p2 : peigs) {
                const int tM2 = 2 * tMs - tM1;
                if (std::abs(tM2) > p2.tF) continue;
                const double d2 = eig_dipole(p2, tM2, s, tMs);
                if (d2 == 0.0) continue;
                const double coeff = (q1 == 0) ? -2.0 : -1.0;
                const double v = coeff * d1 * d2 * kC3_au_GHz_um3;
                const double de = Ebar - p1.E_GHz - p2.E_GHz;
                if (std::abs(de) < policy.degeneracy_floor_GHz) {
                    std::fprintf(stderr,
                                 "warning: near-degenerate intermediate pair "
                                 "(dE = %.3g GHz) excluded from C6 sum\n",
                                 de);
                    continue;
                }
                c6 += v * v / de;
            }
        }
    }
    C6Result res;
    res.GHz_um6 = c6;
    res.au = res.GHz_um6 / kC6_au_GHz_um6;
    res.nu = st.nu[i0];
    res.scaled_au = res.au / std::pow(res.nu, 11);
    return res;
}

PairCurves pair_potential_curves(int n, int M, const std::vector<double>& R_um,
                                 const CurvePolicy& policy) {
    if (R_um.empty()) throw Error("bad-argument", "empty R grid");
    for (std::size_t i = 1; i < R_um.size(); ++i) {
        if (R_um[i] <= R_um[i - 1]) {
            throw Error("bad-argument", "R grid must be increasing");
        }
    }
    if (R_um.front() <= 0.0) throw Error("bad-argument", "R must be positive");

    auto build_basis = [&](int dn) {
        std::vector<AtomState> atoms;
        for (int l = 0; l <= policy.lmax; ++l) {
            for (int nn = n - dn; nn <= n + dn; ++nn) {
                if (nn <= l) continue;
                for (int m = -l; m <= l; ++m) {
                    atoms.push_back(series_state(nn, l, m));
                }
            }
        }
        std::vector<PairState> basis;
        for (const auto& a : atoms) {
            for (const auto& b : atoms) {
                if (a.m + b.m == M) basis.push_back({a, b});
            }
        }
        return basis;
    };

    auto solve = [&](const std::vector<PairState>& basis) {
        const auto N = static_cast<Eigen::Index>(basis.size());
        Eigen::MatrixXd C3 = Eigen::MatrixXd::Zero(N, N);
        for (Eigen::Index i = 0; i < N; ++i) {
            for (Eigen::Index j = 0; j <= i; ++j) {
                const double v = c3_element(basis[i], basis[j]);
                C3(i, j) = v;
                C3(j, i) = v;
            }
        }
        Eigen::VectorXd diag(N);
        for (Eigen::Index i = 0; i < N; ++i) diag(i) = basis[i].E_GHz();
        return std::pair<Eigen::MatrixXd, Eigen::VectorXd>{std::move(C3),
                                                           std::move(diag)};
    };

    const std::vector<PairState> basis = build_basis(policy.dn);
    const auto [C3, diag] = solve(basis);
    const auto N = static_cast<Eigen::Index>(basis.size());

    // Index of the unperturbed ns+ns pair (only meaningful when reachable
    // with this M; otherwise tracking starts from the lowest branch).
    Eigen::Index target_idx = -1;
    for (Eigen::Index i = 0; i < N; ++i) {
        const auto& p = basis[i];
        if (p.a.l == 0 && p.b.l == 0 && p.a.m == 0 && p.b.m == 0 &&
            std::abs(p.a.nu - series_nu(n, 0)) < 1e-9 &&
            std::abs(p.b.nu - series_nu(n, 0)) < 1e-9) {
            target_idx = i;
        }
    }

    PairCurves out;
    out.basis = basis;
    out.R_um = R_um;
    out.energies_GHz.resize(N, static_cast<Eigen::Index>(R_um.size()));

    Eigen::MatrixXd prev_vecs;  // columns ordered by branch
    std::vector<Eigen::Index> order(static_cast<std::size_t>(N));
    for (std::size_t ri = R_um.size(); ri-- > 0;) {
        const double R3 = std::pow(R_um[ri], 3);
        Eigen::MatrixXd H = C3 / R3;
        H.diagonal() += diag;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        const Eigen::MatrixXd& vecs = es.eigenvectors();
        const Eigen::VectorXd& vals = es.eigenvalues();
        if (prev_vecs.size() == 0) {
            for (Eigen::Index b = 0; b < N; ++b) order[b] = b;
        } else {
            // Greedy overlap assignment: follow each branch adiabatically.
            const Eigen::MatrixXd ov = (prev_vecs.transpose() * vecs).cwiseAbs();
            std::vector<bool> used(static_cast<std::size_t>(N), false);
            for (Eigen::Index b = 0; b < N; ++b) {
                double best = -1.0;
                Eigen::Index bj = 0;
                for (Eigen::Index j = 0; j < N; ++j) {
                    if (!used[static_cast<std::size_t>(j)] && ov(b, j) > best) {
                        best = ov(b, j);
                        bj = j;
                    }
                }
                used[static_cast<std::size_t>(bj)] = true;
                order[b] = bj;
            }
        }
        Eigen::MatrixXd tracked(N, N);
        for (Eigen::Index b = 0; b < N; ++b) {
            out.energies_GHz(b, static_cast<Eigen::Index>(ri)) =
                vals(order[b]);
            tracked.col(b) = vecs.col(order[b]);
        }
        prev_vecs = tracked;
        if (ri == R_um.size() - 1) {
            out.dominant_basis.resize(static_cast<std::size_t>(N));
            out.dominant_weight.resize(static_cast<std::size_t>(N));
            for (Eigen::Index b = 0; b < N; ++b) {
                Eigen::Index k = 0;
                const double w =
                    tracked.col(b).cwiseAbs2().maxCoeff(&k);
                out.dominant_basis[static_cast<std::size_t>(b)] =
                    static_cast<int>(k);
                out.dominant_weight[static_cast<std::size_t>(b)] = w;
            }
            if (target_idx >= 0) {
                double best = -1.0;
                for (Eigen::Index b = 0; b < N; ++b) {
                    const double o = std::abs(vecs(target_idx, order[b]));
                    if (o > best) {
                        best = o;
                        out.target_branch = static_cast<int>(b);
                    }
                }
            }
        }
    }

    if (policy.check_convergence && out.target_branch >= 0) {
        const auto big = build_basis(policy.dn + 1);
        const auto [C3b, diagb] = solve(big);
        const double R3 = std::pow(R_um.front(), 3);
        Eigen::MatrixXd H = C3b / R3;
        H.diagonal() += diagb;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        Eigen::Index tb = -1;
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(big.size());
             ++i) {
            const auto& p = big[i];
            if (p.a.l == 0 && p.b.l == 0 && p.a.m == 0 && p.b.m == 0 &&
                std::abs(p.a.nu - series_nu(n, 0)) < 1e-9 &&
                std::abs(p.b.nu - series_nu(n, 0)) < 1e-9) {
                tb = i;
            }
        }
        // Eigenvalue of the branch with maximum weight on the target pair.
        double best = -1.0;
        double e_big = 0.0;
        for (Eigen::Index j = 0; j < es.eigenvectors().cols(); ++j) {
            const double o = std::abs(es.eigenvectors()(tb, j));
            if (o > best) {
                best = o;
                e_big = es.eigenvalues()(j);
            }
        }
        const double e0 = 2.0 * series_state(n, 0, 0).E_GHz;
        const double shift_small =
            out.energies_GHz(out.target_branch, 0) - e0;
        const double shift_big = e_big - e0;
        if (std::abs(shift_big - shift_small) >
            0.10 * std::max(std::abs(shift_big), 1e-12)) {
            throw Error("basis-too-small", "pair basis not converged");
        }
    }
    return out;
}

double vdw_radius(const PairCurves& curves, int branch, double E_inf_GHz,
                  double C6_GHz_um6) {
    if (branch < 0 || branch >= curves.energies_GHz.rows()) {
        throw Error("bad-argument", "branch out of range");
    }
    const auto np = static_cast<Eigen::Index>(curves.R_um.size());
    for (Eigen::Index i = 0; i < np; ++i) {
        bool ok = true;
        for (Eigen::Index j = i; j < np; ++j) {
            const double tail = C6_GHz_um6 / std::pow(curves.R_um[j], 6);
            const double dev = curves.energies_GHz(branch, j) - E_inf_GHz - tail;
            if (std::abs(dev) > 0.10 * std::abs(tail)) {
                ok = false;
                break;
            }
        }
        if (ok) return curves.R_um[i];
    }
    throw Error("no-convergence", "no van der Waals regime on this grid");
}

}  // namespace he3::rydberg
