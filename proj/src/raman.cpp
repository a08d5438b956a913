#include "he3/raman.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "he3/angular.hpp"
#include "he3/error.hpp"

namespace he3::raman {

using he3::angular::clebsch_gordan;
using zeeman::SpinSystem;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Ytterbium treated on its clock / D1-like triplet lines: the metastable
// 6s6p 3P0 level couples only to 5d6s 3D1. The electronic angular momentum
// plays the role of the orbital quantum number in the J-basis dipole
// contraction (spin slot set to zero).
SpinSystem yb171_3p0() {
    SpinSystem s;
    s.scheme = zeeman::Scheme::IntermediateJI;
    s.name = "yb171-3P0";
    s.tJ = 0;
    s.tI = 1;
    s.gJ = 0.0;
    s.gI = -0.000268;  // not exercised at B = 0
    s.chf_Hz = 0.0;
    return s;
}

SpinSystem yb171_3d1() {
    SpinSystem s;
    s.scheme = zeeman::Scheme::IntermediateJI;
    s.name = "yb171-3D1";
    s.tJ = 2;
    s.tI = 1;
    s.gJ = 0.5;
    s.gI = -0.000268;
    // F = 1/2 / F = 3/2 interval of a few GHz; order fixed by the sign
    s.chf_Hz = -2.1e9;
    return s;
}

struct SpeciesSetup {
    SpinSystem ground;
    // excited spin systems with their fine-structure / manifold offsets
    std::vector<std::pair<SpinSystem, double>> excited;
    double gamma_Hz;
    double triplet_cut_Hz;  // keep excited zero-field energies below this
    // electronic quantum numbers entering the dipole contraction for the
    // J-basis scheme: tL of ground and excited, tS shared
    int tLg = 0, tLe = 2, tSe = 1;
};

SpeciesSetup setup_of(const std::string& species) {
    SpeciesSetup s;
    if (species == "he3") {
        s.ground = zeeman::he3_2s3S();
        s.excited = {{zeeman::he3_2p3P(), 0.0}};
        s.gamma_Hz = 1.0216e7 / kTwoPi;
        s.triplet_cut_Hz = 1e13;
        return s;
    }
    if (species == "li6") {
        s.ground = zeeman::li6_2s();
        s.excited = {{zeeman::li6_2p(), 0.0}};
        s.gamma_Hz = 5.8724e6;
        s.triplet_cut_Hz = 1e300;
        return s;
    }
    if (species == "na23") {
        s.ground = zeeman::na23_3s();
        s.excited = {{zeeman::na23_3p12(), 0.0}, {zeeman::na23_3p32(), 515.520e9}};
        s.gamma_Hz = 9.79e6;
        s.triplet_cut_Hz = 1e300;
        s.tSe = 1;
        return s;
    }
    if (species == "yb171") {
        s.ground = yb171_3p0();
        s.excited = {{yb171_3d1(), 0.0}};
        s.gamma_Hz = 3.06e6 / kTwoPi;
        s.triplet_cut_Hz = 1e300;
        s.tSe = 0;  // electronic J carried by the orbital slot
        return s;
    }
    throw Error("unknown-species", "no Raman configuration for " + species);
}

// <g| eps_q . d |e> in units of the reduced dipole element, for the
// (m_L, m_S, m_I) ground x (m_L, m_S, m_I) excited pair (both GeneralLSI).
double dipole_general(const spinops::ProductBasis& bg,
                      const Eigen::VectorXd& cg,
                      const spinops::ProductBasis& be,
                      const Eigen::VectorXd& ce, int tq) {
    double sum = 0.0;
    for (int ig = 0; ig < bg.dim(); ++ig) {
        if (cg(ig) == 0.0) continue;
        auto mg = bg.tm(ig);  // (mL=0, mS, mI)
        for (int ie = 0; ie < be.dim(); ++ie) {
            if (ce(ie) == 0.0) continue;
            auto me = be.tm(ie);  // (mL', mS, mI)
            if (me[1] != mg[1] || me[2] != mg[2]) continue;
            double W = clebsch_gordan(be.tj(0), me[0], 2, tq, 0, 0);
            sum += cg(ig) * ce(ie) * W;
        }
    }
    return sum;
}

// Ground (m_S, m_I) with composite S against the excited
// (m_L, m_s1, m_s2, m_I) product basis of the helium 1s2p manifold.
double dipole_he(const spinops::ProductBasis& bg, const Eigen::VectorXd& cg,
                 const spinops::ProductBasis& be, const Eigen::VectorXd& ce,
                 int tq) {
    double sum = 0.0;
    for (int ie = 0; ie < be.dim(); ++ie) {
        if (ce(ie) == 0.0) continue;
        auto me = be.tm(ie);  // (mL', ms1, ms2, mI)
        int tmS = me[1] + me[2];
        double cgspin = clebsch_gordan(1, me[1], 1, me[2], 2, tmS);
        if (cgspin == 0.0) continue;
        int ig = bg.index({0, tmS, me[3]});
        if (cg(ig) == 0.0) continue;
        double W = clebsch_gordan(2, me[0], 2, tq, 0, 0);
        sum += cg(ig) * cgspin * ce(ie) * W;
    }
    return sum;
}

// (m_J, m_I) ground x (m_J', m_I) excited with L-S recoupling of the
// excited electronic angular momentum (ground has L = 0 so m_J = m_S).
double dipole_ji(const spinops::ProductBasis& bg, const Eigen::VectorXd& cg,
                 const spinops::ProductBasis& be, const Eigen::VectorXd& ce,
                 int tq, int tLe, int tSe) {
    int tJe = be.tj(0);
    double sum = 0.0;
    for (int ig = 0; ig < bg.dim(); ++ig) {
        if (cg(ig) == 0.0) continue;
        auto mg = bg.tm(ig);  // (mJ, mI)
        int tmS = mg[0];      // ground L = 0
        int tmLp = -tq;       // W = <L' mL'; 1 q | 0 0> forces mL' = -q
        int tmJp = tmLp + tmS;
        if (std::abs(tmJp) > tJe) continue;
        double rec = (tSe == 0) ? (tmS == 0 ? 1.0 : 0.0)
                                : clebsch_gordan(tLe, tmLp, tSe, tmS, tJe, tmJp);
        if (rec == 0.0) continue;
        double W = clebsch_gordan(tLe, tmLp, 2, tq, 0, 0);
        int ie = be.index({tmJp, mg[1]});
        sum += cg(ig) * rec * ce(ie) * W;
    }
    return sum;
}

}  // namespace

Configuration he3_config(double B_G, Pol q1, Pol q2) {
    return Configuration{"he3", {3, -1}, {1, -1}, q1, q2, B_G};
}

Configuration li6_config(double B_G) {
    // hyperfine qubit |1/2, -1/2> / |1/2, +1/2>, driven (pi, sigma-) through
    // the shared excited m_F = -1/2 states
    return Configuration{"li6", {1, -1}, {1, 1}, Pol::Pi, Pol::SigmaMinus,
                         B_G};
}

Configuration na23_config(double B_G) {
    // Zeeman qubit |1, +1> / |1, 0>, driven (sigma-, pi) through the shared
    // excited m_F = 0 states
    return Configuration{"na23", {2, 2}, {2, 0}, Pol::SigmaMinus, Pol::Pi,
                         B_G};
}

Configuration yb171_config() {
    // |1/2, -1/2> / |1/2, +1/2> of the metastable clock state, driven
    // (sigma+, pi) through the shared excited m_F = +1/2 states
    return Configuration{"yb171", {1, -1}, {1, 1}, Pol::SigmaPlus, Pol::Pi,
                         0.0};
}

Dipoles transition_dipoles(const Configuration& cfg) {
    SpeciesSetup sp = setup_of(cfg.species);

    zeeman::EigenSystem g = zeeman::adiabatic_eigensystem(sp.ground, cfg.B_G);
    int i1 = -1, i2 = -1;
    for (std::size_t k = 0; k < g.labels.size(); ++k) {
        if (g.labels[k] == cfg.g1) i1 = int(k);
        if (g.labels[k] == cfg.g2) i2 = int(k);
    }
    if (i1 < 0 || i2 < 0)
        throw Error("unknown-state", "ground label not present at B = 0");
    auto bg = zeeman::basis_of(sp.ground);

    struct Ex {
        double E0, EB;
        double w1, w2;
    };
    std::vector<Ex> ex;
    for (auto& [esys, offset] : sp.excited) {
        zeeman::EigenSystem e0 = zeeman::eigensystem(esys, 0.0);
        zeeman::EigenSystem eB = zeeman::adiabatic_eigensystem(esys, cfg.B_G);
        auto be = zeeman::basis_of(esys);
        for (std::size_t n = 0; n < e0.energies_Hz.size(); ++n) {
            if (e0.energies_Hz[n] > sp.triplet_cut_Hz) continue;
            double w1 = 0, w2 = 0;
            Eigen::VectorXd v = eB.vectors.col(n);
            // the <g|eps.d|e> contraction fixes m_L' = -q, so physical
            // sigma+/- absorption (m_F -> m_F +/- 1) enters with q = -/+1
            const int tq1 = -2 * int(cfg.q1), tq2 = -2 * int(cfg.q2);
            switch (sp.ground.scheme) {
                case zeeman::Scheme::GeneralLSI:
                    if (esys.scheme == zeeman::Scheme::HeP2Effective) {
                        w1 = dipole_he(bg, g.vectors.col(i1), be, v, tq1);
                        w2 = dipole_he(bg, g.vectors.col(i2), be, v, tq2);
                    } else {
                        w1 = dipole_general(bg, g.vectors.col(i1), be, v, tq1);
                        w2 = dipole_general(bg, g.vectors.col(i2), be, v, tq2);
                    }
                    break;
                case zeeman::Scheme::IntermediateJI:
                    w1 = dipole_ji(bg, g.vectors.col(i1), be, v, tq1,
                                   sp.tLe, sp.tSe);
                    w2 = dipole_ji(bg, g.vectors.col(i2), be, v, tq2,
                                   sp.tLe, sp.tSe);
                    break;
                default:
                    throw Error("unknown-scheme", "unsupported ground scheme");
            }
            ex.push_back({e0.energies_Hz[n] + offset,
                          eB.energies_Hz[n] + offset, w1, w2});
        }
    }
    std::sort(ex.begin(), ex.end(),
              [](const Ex& a, const Ex& b) { return a.E0 < b.E0; });

    Dipoles out;
    out.gamma_Hz = sp.gamma_Hz;
    double n1 = 0, n2 = 0;
    for (auto& e : ex) {
        out.omega1.push_back(e.w1);
        out.omega2.push_back(e.w2);
        out.E0_Hz.push_back(e.E0);
        out.EB_Hz.push_back(e.EB);
        n1 += e.w1 * e.w1;
        n2 += e.w2 * e.w2;
    }
    if (n1 == 0.0 || n2 == 0.0)
        throw Error("disconnected",
                    "selection rules forbid every transition for one beam");
    return out;
}

namespace {

BetaResult beta_at(const Dipoles& d, double Delta_Hz, int ref) {
    int n = int(d.omega1.size());
    double omega_R = 0.0, gamma_ine = 0.0;
    for (int k = 0; k < n; ++k) {
        // delta_n(B) = delta_n(0) + [E_n(B) - E_n(0)]
        double delta = (d.E0_Hz[k] - d.E0_Hz[ref]) + (d.EB_Hz[k] - d.E0_Hz[k]);
        double mismatch = Delta_Hz - delta;
        if (std::abs(mismatch) < 1e6)
            throw Error("resonance", "detuning within 1 MHz of excited state");
        omega_R += d.omega1[k] * d.omega2[k] / (4.0 * mismatch);
        gamma_ine += d.gamma_Hz *
                     (d.omega1[k] * d.omega1[k] + d.omega2[k] * d.omega2[k]) /
                     (4.0 * mismatch * mismatch);
    }
    BetaResult r;
    r.omega_R = omega_R;
    r.gamma_ine = gamma_ine;
    r.beta = std::abs(omega_R / gamma_ine);
    r.fidelity = 1.0 - 1.0 / r.beta;
    return r;
}

}  // namespace

BetaResult beta_ratio(const Dipoles& d, double Delta_Hz) {
    int n = int(d.omega1.size());
    // red-detuned values are quoted from the lowest excited state, blue ones
    // from the highest
    return beta_at(d, Delta_Hz, Delta_Hz < 0 ? 0 : n - 1);
}

BetaResult beta_ratio(const Configuration& cfg, double Delta_Hz) {
    return beta_ratio(transition_dipoles(cfg), Delta_Hz);
}

Scan beta_scan(const Configuration& cfg, double Dmin_Hz, double Dmax_Hz,
               int npoints) {
    Dipoles d = transition_dipoles(cfg);
    Scan scan;
    // the scan axis is referenced to the highest excited state throughout, so
    // a single sweep covers red maxima inside the manifold and blue maxima
    // above it on one continuous axis
    const int ref = int(d.omega1.size()) - 1;
    auto near_pole = [&](double D) {
        for (std::size_t k = 0; k < d.omega1.size(); ++k) {
            double delta = d.EB_Hz[k] - d.E0_Hz[ref];
            if (std::abs(D - delta) < 5e7) return true;
        }
        return false;
    };
    for (int i = 0; i < npoints; ++i) {
        double D = Dmin_Hz + (Dmax_Hz - Dmin_Hz) * i / (npoints - 1.0);
        if (near_pole(D)) continue;
        scan.points.push_back({D, 0.0, 0.0});
        auto r = beta_at(d, D, ref);
        scan.points.back().beta = r.beta;
        scan.points.back().fidelity = r.fidelity;
    }
    // interior local maxima, refined by golden section between neighbors
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    for (std::size_t i = 1; i + 1 < scan.points.size(); ++i) {
        if (!(scan.points[i].beta > scan.points[i - 1].beta &&
              scan.points[i].beta > scan.points[i + 1].beta))
            continue;
        double lo = scan.points[i - 1].Delta_Hz, hi = scan.points[i + 1].Delta_Hz;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = beta_at(d, x1, ref).beta, f2 = beta_at(d, x2, ref).beta;
        while (hi - lo > 1e3) {
            if (f1 > f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = beta_at(d, x1, ref).beta;
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = beta_at(d, x2, ref).beta;
            }
        }
        double D = 0.5 * (lo + hi);
        auto r = beta_at(d, D, ref);
        scan.maxima.push_back({D, r.beta, r.fidelity});
    }
    return scan;
}

}  // namespace he3::raman
