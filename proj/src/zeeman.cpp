#include "he3/zeeman.hpp"

#include <algorithm>
#include <cmath>

#include "he3/constants.hpp"
#include "he3/error.hpp"

namespace he3::zeeman {

namespace {

// Bohr magneton in Hz per gauss of applied field.
const double kMuB_Hz_per_G = constants::mu_B / constants::h * 1e-4;

}  // namespace

SpinSystem he3_2s3S() {
    SpinSystem s;
    s.scheme = Scheme::GeneralLSI;
    s.name = "he3-2s3S";
    s.tL = 0;
    s.tS = 2;
    s.tI = 1;
    s.gL = 0.9998250;
    s.gS = 2.0022432;
    s.gI = 2.3174824e-3;
    s.cf_Hz = 0.0;
    s.chf1_Hz = s.chf2_Hz = -6.739701177e9 / 1.5;
    return s;
}

SpinSystem he3_2p3P() {
    SpinSystem s;
    s.scheme = Scheme::HeP2Effective;
    s.name = "he3-2p3P";
    s.tL = 2;
    s.tS = 2;  // two spin-1/2 electrons
    s.tI = 1;
    s.gL = 0.9998250;
    s.gS = 2.0022432;
    s.gI = 2.3174824e-3;
    s.C_Hz = -4283.890e6;
    s.Cp_Hz = 1.004 * s.C_Hz;
    s.D_Hz = -28.128e6;
    s.E_Hz = s.D_Hz / -3.945;
    s.Ep_Hz = s.E_Hz;  // antisymmetric tensor constant not quoted; same scale
    s.EJ2_Hz = 0.0;
    s.EJ1_Hz = 2.291177e9;
    s.EJ0_Hz = 31.908127e9;
    s.Esinglet_Hz = 6.14018e13;  // 1s2p singlet exchange offset
    return s;
}

SpinSystem li6_2s() {
    SpinSystem s;
    s.scheme = Scheme::GeneralLSI;
    s.name = "li6-2s2S";
    s.tL = 0;
    s.tS = 1;
    s.tI = 2;
    s.gL = 0.99999587;
    s.gS = 2.0023193043737;
    s.gI = -0.0004476540;
    s.cf_Hz = 0.0;
    s.chf1_Hz = s.chf2_Hz = 152.1368407e6;
    return s;
}

SpinSystem li6_2p() {
    SpinSystem s = li6_2s();
    s.name = "li6-2p2P";
    s.tL = 2;
    s.cf_Hz = 10.053044e9 / 1.5;
    s.chf1_Hz = 17.386e6;
    s.chf2_Hz = -1.155e6;
    return s;
}

namespace {
SpinSystem na23_base() {
    SpinSystem s;
    s.scheme = Scheme::IntermediateJI;
    s.tI = 3;
    s.gI = -0.00080461080;
    return s;
}
double lande_g(int tJ, int tS, int tL) {
    double J = 0.5 * tJ, S = 0.5 * tS, L = 0.5 * tL;
    return 1.0 + (J * (J + 1) + S * (S + 1) - L * (L + 1)) / (2 * J * (J + 1));
}
}  // namespace

SpinSystem na23_3s() {
    SpinSystem s = na23_base();
    s.name = "na23-3s2S12";
    s.tJ = 1;
    s.gJ = lande_g(1, 1, 0);
    s.chf_Hz = 885.81306440e6;
    return s;
}

SpinSystem na23_3p12() {
    SpinSystem s = na23_base();
    s.name = "na23-3p2P12";
    s.tJ = 1;
    s.gJ = lande_g(1, 1, 2);
    s.chf_Hz = 94.44e6;
    return s;
}

SpinSystem na23_3p32() {
    SpinSystem s = na23_base();
    s.name = "na23-3p2P32";
    s.tJ = 3;
    s.gJ = lande_g(3, 1, 2);
    s.chf_Hz = 18.534e6;
    return s;
}

spinops::ProductBasis basis_of(const SpinSystem& sys) {
    switch (sys.scheme) {
        case Scheme::GeneralLSI:
            return spinops::ProductBasis({sys.tL, sys.tS, sys.tI});
        case Scheme::HeP2Effective:
            return spinops::ProductBasis({sys.tL, 1, 1, sys.tI});
        case Scheme::IntermediateJI:
            return spinops::ProductBasis({sys.tJ, sys.tI});
    }
    throw Error("unknown-scheme", "unrecognized coupling scheme");
}

namespace {

Eigen::MatrixXd hamiltonian_general(const SpinSystem& sys, double B_G) {
    using namespace spinops;
    ProductBasis b({sys.tL, sys.tS, sys.tI});
    const int L = 0, S = 1, I = 2;
    Eigen::MatrixXd H = sys.cf_Hz * dot(b, L, S) + sys.chf1_Hz * dot(b, L, I) +
                        sys.chf2_Hz * dot(b, S, I);
    H += kMuB_Hz_per_G * B_G *
         (sys.gL * jz(b, L) + sys.gS * jz(b, S) + sys.gI * jz(b, I));
    return H;
}

Eigen::MatrixXd hamiltonian_intermediate(const SpinSystem& sys, double B_G) {
    using namespace spinops;
    ProductBasis b({sys.tJ, sys.tI});
    Eigen::MatrixXd H = sys.chf_Hz * dot(b, 0, 1);
    H += kMuB_Hz_per_G * B_G * (sys.gJ * jz(b, 0) + sys.gI * jz(b, 1));
    return H;
}

Eigen::MatrixXd hamiltonian_heP2(const SpinSystem& sys, double B_G) {
    using namespace spinops;
    ProductBasis b({sys.tL, 1, 1, sys.tI});
    const int L = 0, E1 = 1, E2 = 2, I = 3;
    const int n = b.dim();

    Eigen::MatrixXd Lz = jz(b, L), Lp = jplus(b, L), Lm = jminus(b, L);
    Eigen::MatrixXd Sz = jz(b, E1) + jz(b, E2);
    Eigen::MatrixXd Sp = jplus(b, E1) + jplus(b, E2);
    Eigen::MatrixXd Sm = jminus(b, E1) + jminus(b, E2);
    Eigen::MatrixXd Kz = jz(b, E1) - jz(b, E2);
    Eigen::MatrixXd Kp = jplus(b, E1) - jplus(b, E2);
    Eigen::MatrixXd Km = jminus(b, E1) - jminus(b, E2);
    Eigen::MatrixXd Iz = jz(b, I), Ip = jplus(b, I), Im = jminus(b, I);

    Eigen::MatrixXd IdS = dot(Iz, Ip, Im, Sz, Sp, Sm);
    Eigen::MatrixXd IdK = dot(Iz, Ip, Im, Kz, Kp, Km);
    Eigen::MatrixXd IdL = dot(Iz, Ip, Im, Lz, Lp, Lm);

    SphericalVector Isph = spherical(Iz, Ip, Im);
    SphericalVector Ssph = spherical(Sz, Sp, Sm);
    SphericalVector Ksph = spherical(Kz, Kp, Km);
    RankTwoTensor C2 = c2_tensor(b, L);
    // only the valence p electron carries orbital structure, so the
    // exchange-antisymmetric orbital tensor is the negative of the
    // symmetric one (core contribution vanishes)
    RankTwoTensor C2t = C2;
    for (auto& m : C2t.q) m = -m;

    Eigen::MatrixXd H = sys.C_Hz * IdS + sys.Cp_Hz * IdK + sys.D_Hz * IdL;
    const double f = 2.0 * std::sqrt(10.0);
    H += f * sys.E_Hz * dot_compound(Isph, Ssph, C2);
    H += f * sys.Ep_Hz * dot_compound(Isph, Ksph, C2t);

    // fine structure: explicit projector energies within the triplet block,
    // and the exchange offset of the singlet block
    Eigen::MatrixXd S2 = dot(Sz, Sp, Sm, Sz, Sp, Sm);
    Eigen::MatrixXd Id = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd Ps0 = Id - 0.5 * S2;
    Eigen::MatrixXd Ps1 = 0.5 * S2;
    Eigen::MatrixXd J2 =
        dot(Lz + Sz, Lp + Sp, Lm + Sm, Lz + Sz, Lp + Sp, Lm + Sm);
    auto proj_J = [&](int j) {
        Eigen::MatrixXd p = Ps1;
        for (int jp = 0; jp <= 2; ++jp) {
            if (jp == j) continue;
            p = p * (J2 - jp * (jp + 1.0) * Id) /
                (j * (j + 1.0) - jp * (jp + 1.0));
        }
        return p;
    };
    H += sys.EJ2_Hz * proj_J(2) + sys.EJ1_Hz * proj_J(1) + sys.EJ0_Hz * proj_J(0);
    H += sys.Esinglet_Hz * Ps0;

    H += kMuB_Hz_per_G * B_G * (sys.gL * Lz + sys.gS * Sz + sys.gI * Iz);
    return H;
}

}  // namespace

Eigen::MatrixXd build_hamiltonian(const SpinSystem& sys, double B_G) {
    switch (sys.scheme) {
        case Scheme::GeneralLSI:
            return hamiltonian_general(sys, B_G);
        case Scheme::IntermediateJI:
            return hamiltonian_intermediate(sys, B_G);
        case Scheme::HeP2Effective:
            return hamiltonian_heP2(sys, B_G);
    }
    throw Error("unknown-scheme", "unrecognized coupling scheme");
}

namespace {

void fix_gauge(Eigen::MatrixXd& V) {
    for (int c = 0; c < V.cols(); ++c) {
        int imax = 0;
        V.col(c).cwiseAbs().maxCoeff(&imax);
        if (V(imax, c) < 0) V.col(c) = -V.col(c);
    }
}

// F = sum of every slot; used for labeling at B = 0.
void total_F_ops(const spinops::ProductBasis& b, Eigen::MatrixXd& F2,
                 Eigen::MatrixXd& Fz) {
    using namespace spinops;
    int n = b.dim();
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n), p = z, m = z;
    for (int s = 0; s < b.slots(); ++s) {
        z += jz(b, s);
        p += jplus(b, s);
        m += jminus(b, s);
    }
    F2 = dot(z, p, m, z, p, m);
    Fz = z;
}

}  // namespace

EigenSystem eigensystem(const SpinSystem& sys, double B_G) {
    Eigen::MatrixXd H = build_hamiltonian(sys, B_G);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    EigenSystem out;
    out.vectors = es.eigenvectors();
    out.energies_Hz.assign(es.eigenvalues().data(),
                           es.eigenvalues().data() + es.eigenvalues().size());

    if (B_G == 0.0) {
        // resolve degenerate multiplets into simultaneous F^2, F_z eigenstates
        auto b = basis_of(sys);
        Eigen::MatrixXd F2, Fz;
        total_F_ops(b, F2, Fz);
        double tolE = 1e-9 * H.cwiseAbs().maxCoeff() + 1e2;
        Eigen::VectorXd E = es.eigenvalues();
        int n = int(E.size());
        out.labels.resize(n);
        int i = 0;
        while (i < n) {
            int j = i + 1;
            while (j < n && E(j) - E(j - 1) < tolE) ++j;
            int k = j - i;
            Eigen::MatrixXd sub = out.vectors.middleCols(i, k);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ef(sub.transpose() *
                                                              F2 * sub);
            sub = sub * ef.eigenvectors();
            Eigen::VectorXd f2 = ef.eigenvalues();
            int p = 0;
            while (p < k) {
                int q = p + 1;
                while (q < k && f2(q) - f2(q - 1) < 0.5) ++q;
                Eigen::MatrixXd ss = sub.middleCols(p, q - p);
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ez(
                    ss.transpose() * Fz * ss);
                sub.middleCols(p, q - p) = ss * ez.eigenvectors();
                double f = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * f2(p)));
                for (int t = p; t < q; ++t)
                    out.labels[i + t] =
                        StateLabel{int(std::lround(2 * f)),
                                   int(std::lround(2 * ez.eigenvalues()(t - p)))};
                p = q;
            }
            out.vectors.middleCols(i, k) = sub;
            i = j;
        }
    }
    fix_gauge(out.vectors);
    return out;
}

namespace {

// Match columns of `cur` to tracked columns of `prev` by descending overlap.
// Returns the permutation (tracked index -> column of cur) or empty if the
// best available overlap for some state is too ambiguous to trust.
std::vector<int> match_states(const Eigen::MatrixXd& prev,
                              const Eigen::MatrixXd& cur) {
    int n = int(prev.cols());
    Eigen::MatrixXd O = (cur.transpose() * prev).cwiseAbs();
    std::vector<int> perm(n, -1);
    std::vector<char> used_r(n, 0), used_k(n, 0);
    for (int pass = 0; pass < n; ++pass) {
        int bk = -1, br = -1;
        double bestov = -1;
        for (int k = 0; k < n; ++k) {
            if (used_k[k]) continue;
            for (int r = 0; r < n; ++r) {
                if (used_r[r]) continue;
                if (O(r, k) > bestov) {
                    bestov = O(r, k);
                    bk = k;
                    br = r;
                }
            }
        }
        if (bestov * bestov < 0.5) return {};
        used_k[bk] = 1;
        used_r[br] = 1;
        perm[bk] = br;
    }
    return perm;
}

}  // namespace

EigenSystem adiabatic_eigensystem(const SpinSystem& sys, double B_G) {
    EigenSystem zero = eigensystem(sys, 0.0);
    if (B_G == 0.0) return zero;
    int n = int(zero.energies_Hz.size());
    Eigen::MatrixXd prev = zero.vectors;
    std::vector<int> perm(n);
    for (int k = 0; k < n; ++k) perm[k] = k;
    double B_prev = 0.0;
    double step = std::min(std::abs(B_G), 25.0) * (B_G > 0 ? 1.0 : -1.0);
    const double min_step = std::abs(B_G) * 1e-6;
    EigenSystem cur = zero;
    while (B_prev != B_G) {
        double B_next = B_prev + step;
        if ((B_G > 0 && B_next > B_G) || (B_G < 0 && B_next < B_G))
            B_next = B_G;
        EigenSystem trial = eigensystem(sys, B_next);
        std::vector<int> match = match_states(prev, trial.vectors);
        if (match.empty()) {
            // ambiguous continuation: halve the field step and retry
            step *= 0.5;
            if (std::abs(step) < min_step)
                throw Error("tracking-failure",
                            "adiabatic continuation ambiguous near B = " +
                                std::to_string(B_next) + " G");
            continue;
        }
        std::vector<int> newperm(n);
        for (int k = 0; k < n; ++k) newperm[k] = match[perm[k]];
        perm = newperm;
        prev = trial.vectors;
        cur = trial;
        B_prev = B_next;
        step = std::min(std::abs(step) * 2.0,
                        std::min(std::abs(B_G), 25.0)) *
               (B_G > 0 ? 1.0 : -1.0);
    }
    EigenSystem out;
    out.labels = zero.labels;
    out.energies_Hz.resize(n);
    out.vectors.resize(cur.vectors.rows(), n);
    for (int k = 0; k < n; ++k) {
        out.energies_Hz[k] = cur.energies_Hz[perm[k]];
        out.vectors.col(k) = cur.vectors.col(perm[k]);
    }
    return out;
}

ZeemanMap zeeman_map(const SpinSystem& sys, const std::vector<double>& B_G) {
    if (B_G.empty()) throw Error("empty-grid", "no field points");
    for (std::size_t i = 1; i < B_G.size(); ++i)
        if (B_G[i] <= B_G[i - 1])
            throw Error("grid-not-increasing", "field grid must increase");

    EigenSystem zero = eigensystem(sys, 0.0);
    int n = int(zero.energies_Hz.size());

    ZeemanMap map;
    map.B_G = B_G;
    map.labels = zero.labels;
    map.energies_Hz.resize(n, B_G.size());

    Eigen::MatrixXd prev = zero.vectors;
    std::vector<int> perm(n);  // branch -> eigenindex at current B
    for (int k = 0; k < n; ++k) perm[k] = k;

    double Bprev = 0.0;
    for (std::size_t i = 0; i < B_G.size(); ++i) {
        // refine in substeps so maximal-overlap continuation stays
        // unambiguous; halve the step where the assignment is uncertain
        double Btarget = B_G[i];
        EigenSystem cur = eigensystem(sys, Bprev);
        double dir = (Btarget >= Bprev) ? 1.0 : -1.0;
        double step = dir * std::min(std::abs(Btarget - Bprev), 25.0);
        const double min_step = std::max(std::abs(Btarget), 1.0) * 1e-6;
        while (Bprev != Btarget) {
            double Bx = (dir > 0) ? std::min(Bprev + step, Btarget)
                                  : std::max(Bprev + step, Btarget);
            EigenSystem trial = eigensystem(sys, Bx);
            std::vector<int> match = match_states(prev, trial.vectors);
            if (match.empty()) {
                step *= 0.5;
                if (std::abs(step) < min_step)
                    throw Error("tracking-failure",
                                "adiabatic continuation ambiguous near B = " +
                                    std::to_string(Bx) + " G");
                continue;
            }
            std::vector<int> newperm(n);
            for (int k = 0; k < n; ++k) newperm[k] = match[perm[k]];
            perm = newperm;
            prev = trial.vectors;
            cur = trial;
            Bprev = Bx;
            step = dir * std::min(std::abs(step) * 2.0, 25.0);
        }
        for (int k = 0; k < n; ++k)
            map.energies_Hz(k, i) = cur.energies_Hz[perm[k]];
    }
    return map;
}

double adiabatic_energy(const SpinSystem& sys, StateLabel state, double B_G) {
    EigenSystem zero = eigensystem(sys, 0.0);
    int idx = -1;
    for (std::size_t k = 0; k < zero.labels.size(); ++k)
        if (zero.labels[k] == state) idx = int(k);
    if (idx < 0) throw Error("unknown-state", "no such |F, mF> at B = 0");
    if (B_G == 0.0) return zero.energies_Hz[idx];
    ZeemanMap map = zeeman_map(sys, {B_G});
    return map.energies_Hz(idx, 0);
}

double find_magic_field(const SpinSystem& sys, StateLabel a, StateLabel b,
                        double Bmin_G, double Bmax_G) {
    if (a == b)
        throw Error("degenerate-states",
                    "differential shift identically zero for identical states");
    const double dB = 0.01;  // gauss, centered difference
    auto slope = [&](double B) {
        double up = adiabatic_energy(sys, a, B + dB) -
                    adiabatic_energy(sys, b, B + dB);
        double dn = adiabatic_energy(sys, a, B - dB) -
                    adiabatic_energy(sys, b, B - dB);
        return (up - dn) / (2 * dB);
    };
    double s0 = slope(Bmin_G), s1 = slope(Bmax_G);
    if (s0 * s1 > 0)
        throw Error("no-stationary-point",
                    "d(dE)/dB does not change sign in bracket");
    // golden-section on |slope|
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = Bmin_G, hi = Bmax_G;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = std::abs(slope(x1)), f2 = std::abs(slope(x2));
    while (hi - lo > 1e-3) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = std::abs(slope(x1));
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = std::abs(slope(x2));
        }
    }
    double B = 0.5 * (lo + hi);
    if (std::abs(slope(B)) > 1.0)
        throw Error("solver-tolerance",
                    "stationary point residual above 1 Hz/G");
    return B;
}

}  // namespace he3::zeeman
