#include "he3/fermion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

namespace he3::fermion {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_modes(int L) {
    if (L < 1 || L > kMaxModes)
        throw Error("bad-argument",
                    "mode count must be between 1 and " +
                        std::to_string(kMaxModes));
}

void check_mode_index(const FockSpace& space, int i) {
    if (i < 0 || i >= space.L)
        throw Error("bad-argument", "mode index out of range");
}

// Parity of occupied modes strictly between a and b (a < b) in basis state s.
int string_sign(std::uint64_t s, int a, int b) {
    std::uint64_t mask = ((std::uint64_t{1} << b) - 1) &
                         ~((std::uint64_t{1} << (a + 1)) - 1);
    return (std::popcount(s & mask) & 1) ? -1 : 1;
}

// Parity of occupied modes strictly below i.
int below_sign(std::uint64_t s, int i) {
    std::uint64_t mask = (std::uint64_t{1} << i) - 1;
    return (std::popcount(s & mask) & 1) ? -1 : 1;
}

}  // namespace

FockSpace::FockSpace(int modes) : L(modes) { check_modes(L); }

FockSpace::FockSpace(int modes, std::vector<ModeLabel> lab)
    : L(modes), labels(std::move(lab)) {
    check_modes(L);
    if (!labels.empty() && static_cast<int>(labels.size()) != L)
        throw Error("bad-argument", "label list size must match mode count");
}

ManyBodyOperator::ManyBodyOperator(Mat m, bool herm, bool unit)
    : matrix(std::move(m)), hermitian(herm), unitary(unit) {
    if (hermitian && (matrix - matrix.adjoint()).norm() > 1e-10)
        throw Error("not-hermitian", "operator flagged Hermitian is not");
    if (unitary) {
        Mat gram = matrix.adjoint() * matrix;
        gram -= Mat::Identity(matrix.rows(), matrix.cols());
        if (gram.norm() > 1e-10)
            throw Error("not-unitary", "operator flagged unitary is not");
    }
}

// ---------------------------------------------------------------------------
// Mode operators

Mat annihilation(const FockSpace& space, int i) {
    check_mode_index(space, i);
    const std::size_t dim = space.dim();
    Mat c = Mat::Zero(dim, dim);
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t s = 0; s < dim; ++s)
        if (s & bit) c(s ^ bit, s) = below_sign(s, i);
    return c;
}

Mat creation(const FockSpace& space, int i) {
    return annihilation(space, i).adjoint();
}

Mat number_op(const FockSpace& space, int i) {
    check_mode_index(space, i);
    const std::size_t dim = space.dim();
    Mat n = Mat::Zero(dim, dim);
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t s = 0; s < dim; ++s)
        if (s & bit) n(s, s) = 1.0;
    return n;
}

Mat total_number(const FockSpace& space) {
    const std::size_t dim = space.dim();
    Mat n = Mat::Zero(dim, dim);
    for (std::uint64_t s = 0; s < dim; ++s) n(s, s) = std::popcount(s);
    return n;
}

// ---------------------------------------------------------------------------
// Gate application

void apply_u_tun(const FockSpace& space, Vec& psi, int i, int j, double th1,
                 double th2, double th3) {
    check_mode_index(space, i);
    check_mode_index(space, j);
    if (i == j)
        throw Error("bad-argument",
                    "tunneling gate requires two distinct modes; the "
                    "single-mode phase gate is defined directly (z_gate)");
    const int a = std::min(i, j), b = std::max(i, j);
    const std::uint64_t ba = std::uint64_t{1} << a;
    const std::uint64_t bb = std::uint64_t{1} << b;
    const double half = std::sqrt(0.25 * th1 * th1 + 0.25 * th3 * th3);
    const double c = std::cos(half);
    const double sinc = (half > 0.0) ? std::sin(half) / half : 1.0;
    // Generator on the ordered pair basis (|1_i 0_j>, |0_i 1_j>):
    //   [[ th3/2,  (th1/2) s e^{-i th2}], [(th1/2) s e^{i th2}, -th3/2]]
    // with s the intervening-occupation parity; exp(-iG) in closed form.
    const cplx hop = 0.5 * th1 * std::exp(-kI * th2);
    const std::size_t dim = space.dim();
    for (std::uint64_t s = 0; s < dim; ++s) {
        const bool occ_a = s & ba, occ_b = s & bb;
        if (occ_a == occ_b) continue;      // diagonal: generator vanishes
        if (!occ_a) continue;              // visit each pair once, from |1_a 0_b>
        const std::uint64_t s2 = (s ^ ba) | bb;
        const double sg = string_sign(s, a, b);
        // Map pair-basis (|1_i 0_j>, |0_i 1_j>) onto (s, s2) respecting the
        // caller's (i, j) order: s has mode a occupied.
        const bool s_is_first = (i == a);
        const cplx off = hop * sg;
        const cplx d1 = 0.5 * th3, d2 = -0.5 * th3;
        cplx u11, u12, u21, u22;
        u11 = c - kI * sinc * d1;
        u22 = c - kI * sinc * d2;
        u12 = -kI * sinc * off;
        u21 = -kI * sinc * std::conj(off);
        if (!s_is_first) {
            std::swap(u11, u22);
            std::swap(u12, u21);
        }
        const cplx p = psi(s), q = psi(s2);
        psi(s) = u11 * p + u12 * q;
        psi(s2) = u21 * p + u22 * q;
    }
}

void apply_u_int(const FockSpace& space, Vec& psi, int i, int j,
                 double theta) {
    check_mode_index(space, i);
    check_mode_index(space, j);
    if (i == j)
        throw Error("bad-argument",
                    "interaction gate requires two distinct modes");
    const std::uint64_t mask =
        (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
    const cplx phase = std::exp(-kI * theta);
    const std::size_t dim = space.dim();
    for (std::uint64_t s = 0; s < dim; ++s)
        if ((s & mask) == mask) psi(s) *= phase;
}

void apply_site_phase(const FockSpace& space, Vec& psi, int i, double theta) {
    check_mode_index(space, i);
    const std::uint64_t bit = std::uint64_t{1} << i;
    const cplx phase = std::exp(-kI * theta);
    const std::size_t dim = space.dim();
    for (std::uint64_t s = 0; s < dim; ++s)
        if (s & bit) psi(s) *= phase;
}

namespace {

template <typename F>
Mat gate_matrix(const FockSpace& space, F&& apply) {
    const std::size_t dim = space.dim();
    Mat u = Mat::Identity(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        Vec v = u.col(col);
        apply(v);
        u.col(col) = v;
    }
    return u;
}

}  // namespace

Mat u_tun(const FockSpace& space, int i, int j, double th1, double th2,
          double th3) {
    return gate_matrix(space, [&](Vec& v) {
        apply_u_tun(space, v, i, j, th1, th2, th3);
    });
}

Mat u_int(const FockSpace& space, int i, int j, double theta) {
    return gate_matrix(space,
                       [&](Vec& v) { apply_u_int(space, v, i, j, theta); });
}

Mat z_gate(const FockSpace& space, int i) {
    const double pi = std::acos(-1.0);
    return gate_matrix(space, [&](Vec& v) {
        apply_site_phase(space, v, i, -pi / 4.0);  // exp(+i pi/4 n_i)
    });
}

Mat fswap(const FockSpace& space, int i, int j) {
    // u_tun(pi,0,0) composed with half-turn phases exp(i(pi/2) n) on both
    // modes: |01> <-> |10> with amplitude +1, |11> -> -|11>.  Note the
    // quarter-turn phase gates (z_gate) are not enough: composing
    // u_tun(-pi,0,0) with them leaves extra phases e^{i3pi/4} on the
    // swapped pair and +i on |11> (see convention_notes).
    const double pi = std::acos(-1.0);
    return gate_matrix(space, [&](Vec& v) {
        apply_site_phase(space, v, i, -pi / 2.0);
        apply_site_phase(space, v, j, -pi / 2.0);
        apply_u_tun(space, v, i, j, pi, 0.0, 0.0);
    });
}

Mat cz(const FockSpace& space, int i, int j) {
    const double pi = std::acos(-1.0);
    return u_int(space, i, j, pi);
}

Mat cz_quarter(const FockSpace& space, int i, int j) {
    const double pi = std::acos(-1.0);
    return u_int(space, i, j, pi / 2.0);
}

std::vector<std::string> convention_notes() {
    return {
        "phase-gate convention: the single-mode phase gate is defined "
        "directly as exp(i(pi/4) n_i); identifying it with a tunneling gate "
        "on a doubly repeated mode index is not reproducible because the "
        "two-mode generator vanishes identically at i == j",
        "controlled-phase convention: the quarter-turn interaction gate "
        "exp(-i(pi/2) n_i n_j) puts phase -i, not -1, on the doubly "
        "occupied state; the half-turn theta = pi (phase -1, squares to "
        "identity) is adopted as CZ and the quarter-turn is exposed "
        "separately as cz_quarter",
        "fermionic-swap convention: composing u_tun(-pi,0,0) with the "
        "quarter-turn phase gates leaves phases e^{i3pi/4} on the swapped "
        "pair and +i on the doubly occupied state; fswap is realized as "
        "u_tun(pi,0,0) with half-turn phases exp(i(pi/2) n) on both modes, "
        "which gives the clean |01><->|10>, |11> -> -|11> action"};
}

void emit_convention_warnings(std::ostream& os) {
    for (const auto& note : convention_notes()) os << "warning: " << note << "\n";
}

// ---------------------------------------------------------------------------
// Models

ModelSpec ModelSpec::empty(int L) {
    check_modes(L);
    ModelSpec m;
    m.L = L;
    m.one_body = Mat::Zero(L, L);
    m.density = Eigen::MatrixXd::Zero(L, L);
    return m;
}

ModelSpec fh_chain(int L_sites, double t, double U, double mu,
                   bool periodic) {
    ModelSpec m = ModelSpec::empty(2 * L_sites);
    m.labels.resize(2 * L_sites);
    for (int s = 0; s < 2; ++s)
        for (int i = 0; i < L_sites; ++i)
            m.labels[s * L_sites + i] = {i, s};
    for (int s = 0; s < 2; ++s) {
        const int o = s * L_sites;
        for (int i = 0; i + 1 < L_sites; ++i) {
            m.one_body(o + i, o + i + 1) = -t;
            m.one_body(o + i + 1, o + i) = -t;
        }
        if (periodic && L_sites > 2) {
            m.one_body(o, o + L_sites - 1) += -t;
            m.one_body(o + L_sites - 1, o) += -t;
        }
    }
    for (int i = 0; i < L_sites; ++i) m.density(i, L_sites + i) = U;
    m.one_body.diagonal().array() -= mu;
    return m;
}

ModelSpec tt_chain(int L_sites, double t, double tp, double U, double mu,
                   bool periodic) {
    ModelSpec m = fh_chain(L_sites, t, U, mu, periodic);
    for (int s = 0; s < 2; ++s) {
        const int o = s * L_sites;
        for (int i = 0; i + 2 < L_sites; ++i) {
            m.one_body(o + i, o + i + 2) += -tp;
            m.one_body(o + i + 2, o + i) += -tp;
        }
        if (periodic && L_sites > 4) {
            for (int i = L_sites - 2; i < L_sites; ++i) {
                const int j = (i + 2) % L_sites;
                m.one_body(o + i, o + j) += -tp;
                m.one_body(o + j, o + i) += -tp;
            }
        }
    }
    return m;
}

ModelSpec multiband_chain(int L_sites, const Eigen::Matrix2d& t,
                          const Eigen::Matrix2d& U, double mu) {
    // Modes: (band, spin) blocks of L_sites: b0s0, b0s1, b1s0, b1s1.
    ModelSpec m = ModelSpec::empty(4 * L_sites);
    m.labels.resize(4 * L_sites);
    auto mode = [&](int band, int spin, int site) {
        return (2 * band + spin) * L_sites + site;
    };
    for (int band = 0; band < 2; ++band)
        for (int spin = 0; spin < 2; ++spin)
            for (int i = 0; i < L_sites; ++i)
                m.labels[mode(band, spin, i)] = {i, 2 * band + spin};
    for (int spin = 0; spin < 2; ++spin)
        for (int b1 = 0; b1 < 2; ++b1)
            for (int b2 = 0; b2 < 2; ++b2)
                for (int i = 0; i + 1 < L_sites; ++i) {
                    const int p = mode(b1, spin, i), q = mode(b2, spin, i + 1);
                    m.one_body(p, q) += -t(b1, b2);
                    m.one_body(q, p) += -t(b1, b2);
                }
    for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2)
            for (int s1 = 0; s1 < 2; ++s1)
                for (int s2 = 0; s2 < 2; ++s2)
                    for (int i = 0; i < L_sites; ++i) {
                        const int p = mode(b1, s1, i), q = mode(b2, s2, i);
                        if (p < q) m.density(p, q) += U(b1, b2);
                    }
    m.one_body.diagonal().array() -= mu;
    return m;
}

ModelSpec pam_chain(int L_sites, double tc, double V, double eps_f,
                    double U) {
    // Modes: c_up, c_down, f_up, f_down blocks of L_sites.
    ModelSpec m = ModelSpec::empty(4 * L_sites);
    m.labels.resize(4 * L_sites);
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < L_sites; ++i)
            m.labels[k * L_sites + i] = {i, k};
    for (int spin = 0; spin < 2; ++spin) {
        const int oc = spin * L_sites;
        const int of = (2 + spin) * L_sites;
        for (int i = 0; i + 1 < L_sites; ++i) {
            m.one_body(oc + i, oc + i + 1) = -tc;
            m.one_body(oc + i + 1, oc + i) = -tc;
        }
        for (int i = 0; i < L_sites; ++i) {
            m.one_body(oc + i, of + i) = V;
            m.one_body(of + i, oc + i) = V;
            m.one_body(of + i, of + i) = eps_f;
        }
    }
    for (int i = 0; i < L_sites; ++i)
        m.density(2 * L_sites + i, 3 * L_sites + i) = U;
    return m;
}

ModelSpec molecular(int L, const Mat& one_body,
                    const std::vector<TwoBodyTerm>& two_body) {
    ModelSpec m = ModelSpec::empty(L);
    if (one_body.rows() != L || one_body.cols() != L)
        throw Error("bad-argument", "one-body matrix has wrong shape");
    if ((one_body - one_body.adjoint()).norm() > 1e-10)
        throw Error("bad-argument",
                    "one-body coupling matrix must be conjugate-symmetric");
    m.one_body = one_body;
    m.two_body = two_body;
    for (const auto& t : m.two_body) {
        if (t.i < 0 || t.i >= L || t.j < 0 || t.j >= L || t.k < 0 ||
            t.k >= L || t.l < 0 || t.l >= L)
            throw Error("bad-argument", "two-body term index out of range");
    }
    return m;
}

ManyBodyOperator build_hamiltonian(const ModelSpec& model) {
    check_modes(model.L);
    if ((model.one_body - model.one_body.adjoint()).norm() > 1e-10)
        throw Error("bad-argument",
                    "one-body coupling matrix must be conjugate-symmetric");
    const FockSpace space(model.L);
    const std::size_t dim = space.dim();
    Mat h = Mat::Zero(dim, dim);
    for (std::uint64_t s = 0; s < dim; ++s) {
        for (int i = 0; i < model.L; ++i)
            for (int j = 0; j < model.L; ++j) {
                const cplx t = model.one_body(i, j);
                if (t == cplx{}) continue;
                const std::uint64_t bi = std::uint64_t{1} << i;
                const std::uint64_t bj = std::uint64_t{1} << j;
                if (i == j) {
                    if (s & bi) h(s, s) += t;
                    continue;
                }
                if (!(s & bj) || (s & bi)) continue;
                const std::uint64_t s2 = (s ^ bj) | bi;
                h(s2, s) += t * double(string_sign(s, std::min(i, j),
                                                   std::max(i, j)));
            }
        for (int i = 0; i < model.L; ++i)
            for (int j = i + 1; j < model.L; ++j) {
                const double v = model.density(i, j) + model.density(j, i);
                if (v == 0.0) continue;
                const std::uint64_t mask =
                    (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
                if ((s & mask) == mask) h(s, s) += v;
            }
        for (const auto& term : model.two_body) {
            // t c_i^dag c_j^dag c_k c_l applied right to left, tracking the
            // Jordan-Wigner sign at each elementary operator.
            std::uint64_t st = s;
            double sign = 1.0;
            bool dead = false;
            const int ann[2] = {term.l, term.k};
            for (int a : ann) {
                const std::uint64_t bit = std::uint64_t{1} << a;
                if (!(st & bit)) { dead = true; break; }
                sign *= below_sign(st, a);
                st ^= bit;
            }
            if (dead) continue;
            const int cre[2] = {term.j, term.i};
            for (int a : cre) {
                const std::uint64_t bit = std::uint64_t{1} << a;
                if (st & bit) { dead = true; break; }
                sign *= below_sign(st, a);
                st |= bit;
            }
            if (dead) continue;
            h(st, s) += term.t * sign;
        }
    }
    return ManyBodyOperator(std::move(h), /*herm=*/true, /*unit=*/false);
}

// ---------------------------------------------------------------------------
// Schedules and Trotter evolution

void validate_schedule(const GateSchedule& schedule, int L) {
    for (const auto& layer : schedule.layers) {
        std::vector<bool> used(L, false);
        for (const auto& g : layer.gates) {
            if (g.i < 0 || g.i >= L || g.j < 0 || g.j >= L)
                throw Error("bad-argument", "gate mode index out of range");
            if (used[g.i] || (g.kind != GateKind::SitePhase && used[g.j]))
                throw Error("bad-argument",
                            "schedule layer has gates on overlapping modes");
            used[g.i] = true;
            if (g.kind != GateKind::SitePhase) used[g.j] = true;
        }
    }
}

GateSchedule default_schedule(const ModelSpec& model, double dtau) {
    struct Edge {
        int i, j;
        Gate gate;
    };
    std::vector<Edge> hops, ints;
    for (int i = 0; i < model.L; ++i)
        for (int j = i + 1; j < model.L; ++j) {
            const cplx t = model.one_body(i, j);
            if (t != cplx{}) {
                Gate g;
                g.kind = GateKind::Tunneling;
                g.i = i;
                g.j = j;
                g.th1 = 2.0 * dtau * std::abs(t);
                g.th2 = -std::arg(t);
                hops.push_back({i, j, g});
            }
            const double v = model.density(i, j) + model.density(j, i);
            if (v != 0.0) {
                Gate g;
                g.kind = GateKind::Interaction;
                g.i = i;
                g.j = j;
                g.th1 = dtau * v;
                ints.push_back({i, j, g});
            }
        }
    auto color = [&](std::vector<Edge>& edges, Zone zone,
                     std::vector<Layer>& out) {
        std::vector<bool> placed(edges.size(), false);
        std::size_t remaining = edges.size();
        while (remaining > 0) {
            Layer layer;
            layer.zone = zone;
            std::vector<bool> used(model.L, false);
            for (std::size_t e = 0; e < edges.size(); ++e) {
                if (placed[e] || used[edges[e].i] || used[edges[e].j])
                    continue;
                layer.gates.push_back(edges[e].gate);
                used[edges[e].i] = used[edges[e].j] = true;
                placed[e] = true;
                --remaining;
            }
            out.push_back(std::move(layer));
        }
    };
    GateSchedule sched;
    color(hops, Zone::Tunneling, sched.layers);
    // On-site potentials ride along in the tunneling zone as detuning phases.
    Layer phases;
    phases.zone = sched.layers.empty() ? Zone::Tunneling
                                       : sched.layers.back().zone;
    for (int i = 0; i < model.L; ++i) {
        const cplx e = model.one_body(i, i);
        if (e != cplx{}) {
            Gate g;
            g.kind = GateKind::SitePhase;
            g.i = g.j = i;
            g.th1 = dtau * e.real();
            phases.gates.push_back(g);
        }
    }
    if (!phases.gates.empty()) sched.layers.push_back(std::move(phases));
    color(ints, Zone::Interaction, sched.layers);
    validate_schedule(sched, model.L);
    return sched;
}

TrotterResult trotter_evolve(const ModelSpec& model, double tau, int n_steps,
                             const Vec& psi0, const GateSchedule* schedule) {
    if (n_steps < 1)
        throw Error("bad-argument", "step count must be at least 1");
    if (!model.two_body.empty())
        throw Error("bad-argument",
                    "Trotter evolution supports one-body plus "
                    "density-density models only");
    const FockSpace space(model.L);
    if (psi0.size() != static_cast<Eigen::Index>(space.dim()))
        throw Error("bad-argument", "state dimension does not match model");
    const double dtau = tau / n_steps;
    GateSchedule local;
    if (schedule) {
        validate_schedule(*schedule, model.L);
    } else {
        local = default_schedule(model, dtau);
        schedule = &local;
    }
    TrotterResult res;
    res.psi = psi0;
    res.steps = n_steps;
    long per_step = 0;
    for (const auto& layer : schedule->layers)
        per_step += static_cast<long>(layer.gates.size());
    res.gates_per_step = per_step;
    res.gate_count = per_step * n_steps;
    long moves = 0;
    const auto& layers = schedule->layers;
    for (std::size_t k = 0; k < layers.size(); ++k)
        if (layers[k].zone != layers[(k + 1) % layers.size()].zone) ++moves;
    res.rearrangements_per_step = moves;
    res.particle_number.reserve(n_steps);
    for (int step = 0; step < n_steps; ++step) {
        for (const auto& layer : layers)
            for (const auto& g : layer.gates) {
                switch (g.kind) {
                    case GateKind::Tunneling:
                        apply_u_tun(space, res.psi, g.i, g.j, g.th1, g.th2,
                                    g.th3);
                        break;
                    case GateKind::Interaction:
                        apply_u_int(space, res.psi, g.i, g.j, g.th1);
                        break;
                    case GateKind::SitePhase:
                        apply_site_phase(space, res.psi, g.i, g.th1);
                        break;
                }
            }
        double n_mean = 0.0;
        for (std::uint64_t s = 0; s < space.dim(); ++s)
            n_mean += std::norm(res.psi(s)) * std::popcount(s);
        res.particle_number.push_back(n_mean);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Variational ground-state search

Vec basis_state(const FockSpace& space, const std::vector<int>& occupied) {
    std::uint64_t s = 0;
    for (int m : occupied) {
        check_mode_index(space, m);
        const std::uint64_t bit = std::uint64_t{1} << m;
        if (s & bit) throw Error("bad-argument", "repeated mode in occupation");
        s |= bit;
    }
    Vec psi = Vec::Zero(space.dim());
    psi(s) = 1.0;
    return psi;
}

namespace {

// Ansatz: per layer, tunneling gates on every chain bond (3 angles each)
// followed by interaction gates on every bond (1 angle each).
void apply_ansatz(const FockSpace& space, Vec& psi, int layers,
                  const std::vector<double>& p) {
    const int bonds = space.L - 1;
    std::size_t k = 0;
    for (int layer = 0; layer < layers; ++layer) {
        for (int b = 0; b < bonds; ++b) {
            apply_u_tun(space, psi, b, b + 1, p[k], p[k + 1], p[k + 2]);
            k += 3;
        }
        for (int b = 0; b < bonds; ++b) {
            apply_u_int(space, psi, b, b + 1, p[k]);
            k += 1;
        }
    }
}

struct NmState {
    long evals = 0;
    double best = 0.0;
    std::vector<double> best_params;
    std::vector<double> trace;
};

}  // namespace

VqeResult vqe_minimize(const ModelSpec& model, const Vec& psi0,
                       const VqeOptions& opt) {
    if (model.L > 8)
        throw Error("bad-argument",
                    "variational solver limited to 8 modes");
    if (opt.layers < 0 || opt.budget < 1 || opt.restarts < 1)
        throw Error("bad-argument", "invalid optimizer options");
    const FockSpace space(model.L);
    if (psi0.size() != static_cast<Eigen::Index>(space.dim()))
        throw Error("bad-argument", "state dimension does not match model");
    const Mat h = build_hamiltonian(model).matrix;
    const int bonds = model.L - 1;
    const int npar = opt.layers * bonds * 4;

    NmState st;
    st.best = std::numeric_limits<double>::infinity();
    auto energy = [&](const std::vector<double>& p) {
        Vec psi = psi0;
        apply_ansatz(space, psi, opt.layers, p);
        const double e = (psi.adjoint() * h * psi)(0).real();
        ++st.evals;
        if (e < st.best) {
            st.best = e;
            st.best_params = p;
        }
        st.trace.push_back(st.best);
        return e;
    };

    bool converged_last = true;
    if (npar == 0) {
        energy({});
    } else {
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> uni(-M_PI, M_PI);
        for (int r = 0; r < opt.restarts && st.evals < opt.budget; ++r) {
            // First restart starts from the identity circuit; later ones
            // from the incumbent (polish) alternating with random points.
            std::vector<double> x0(npar, 0.0);
            if (r > 0) {
                if (r % 2 == 1 && !st.best_params.empty()) {
                    x0 = st.best_params;
                } else {
                    for (auto& v : x0) v = uni(rng);
                }
            }
            const double step = (r > 0 && r % 2 == 1) ? 0.05 : 0.5;
            // Nelder-Mead simplex.
            const int n = npar;
            std::vector<std::vector<double>> simplex(n + 1, x0);
            std::vector<double> f(n + 1);
            for (int k = 0; k < n; ++k) simplex[k + 1][k] += step;
            for (int k = 0; k <= n; ++k) f[k] = energy(simplex[k]);
            converged_last = false;
            while (st.evals < opt.budget) {
                std::vector<int> order(n + 1);
                std::iota(order.begin(), order.end(), 0);
                std::sort(order.begin(), order.end(),
                          [&](int a, int b) { return f[a] < f[b]; });
                if (f[order[n]] - f[order[0]] < opt.tol) {
                    converged_last = true;
                    break;
                }
                std::vector<double> centroid(n, 0.0);
                for (int k = 0; k < n; ++k)
                    for (int d = 0; d < n; ++d)
                        centroid[d] += simplex[order[k]][d] / n;
                auto blend = [&](double coef) {
                    std::vector<double> p(n);
                    const auto& worst = simplex[order[n]];
                    for (int d = 0; d < n; ++d)
                        p[d] = centroid[d] + coef * (centroid[d] - worst[d]);
                    return p;
                };
                auto xr = blend(1.0);
                const double fr = energy(xr);
                if (fr < f[order[0]]) {
                    auto xe = blend(2.0);
                    const double fe = energy(xe);
                    if (fe < fr) {
                        simplex[order[n]] = xe;
                        f[order[n]] = fe;
                    } else {
                        simplex[order[n]] = xr;
                        f[order[n]] = fr;
                    }
                } else if (fr < f[order[n - 1]]) {
                    simplex[order[n]] = xr;
                    f[order[n]] = fr;
                } else {
                    auto xc = blend(fr < f[order[n]] ? 0.5 : -0.5);
                    const double fc = energy(xc);
                    if (fc < std::min(fr, f[order[n]])) {
                        simplex[order[n]] = xc;
                        f[order[n]] = fc;
                    } else {
                        for (int k = 1; k <= n; ++k) {
                            auto& p = simplex[order[k]];
                            const auto& b0 = simplex[order[0]];
                            for (int d = 0; d < n; ++d)
                                p[d] = b0[d] + 0.5 * (p[d] - b0[d]);
                            f[order[k]] = energy(p);
                            if (st.evals >= opt.budget) break;
                        }
                    }
                }
            }
        }
    }

    VqeResult res;
    res.energy = st.best;
    res.params = st.best_params;
    res.trace = std::move(st.trace);
    res.evaluations = st.evals;
    res.stagnated = !converged_last;
    // Variational bound: the reported energy can never undercut the exact
    // ground energy of the dense Hamiltonian.
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    if (res.energy < es.eigenvalues()(0) - 1e-8)
        throw Error("internal-error", "variational bound violated");
    return res;
}

}  // namespace he3::fermion
