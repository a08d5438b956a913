#pragma once

// Exact statevector simulator for a register of spinless fermionic modes:
// native tunneling/interaction gates, derived single- and two-mode gate
// identities, lattice-model Hamiltonian builders over arbitrary edge lists,
// first-order Trotterized evolution with gate accounting, and a small
// variational ground-state solver.
//
// Modes are represented in the occupation-number basis with a fixed
// Jordan-Wigner ordering (bit k of the basis index is the occupation of
// mode k); all operators are dense complex matrices over the 2^L space.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "he3/error.hpp"

namespace he3::fermion {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cplx = std::complex<double>;

inline constexpr int kMaxModes = 14;

// ---------------------------------------------------------------------------
// Fock space and labelled modes

struct ModeLabel {
    int site = 0;     // spatial site index
    int flavor = 0;   // spin or orbital index
};

struct FockSpace {
    int L = 0;                      // number of modes, 1 <= L <= kMaxModes
    std::vector<ModeLabel> labels;  // optional, size 0 or L

    explicit FockSpace(int modes);
    FockSpace(int modes, std::vector<ModeLabel> lab);

    std::size_t dim() const { return std::size_t{1} << L; }
};

// Dense operator with verified structural flags.  Construction with
// hermitian/unitary set checks the corresponding property to 1e-10 and
// throws Error("not-hermitian"/"not-unitary") on failure.
struct ManyBodyOperator {
    Mat matrix;
    bool hermitian = false;
    bool unitary = false;

    ManyBodyOperator() = default;
    ManyBodyOperator(Mat m, bool herm, bool unit);
};

// ---------------------------------------------------------------------------
// Mode operators (Jordan-Wigner dense representation)

Mat annihilation(const FockSpace& space, int i);
Mat creation(const FockSpace& space, int i);
Mat number_op(const FockSpace& space, int i);
Mat total_number(const FockSpace& space);

// ---------------------------------------------------------------------------
// Native gates
//
// u_tun: exp{-i[(th1/2)(e^{-i th2} c_i^dag c_j + h.c.) + (th3/2)(n_i - n_j)]}
// u_int: exp{-i theta n_i n_j}
// Both conserve total particle number.  i == j throws Error("bad-argument"):
// the two-mode generator vanishes identically on the diagonal, so the
// single-mode phase gate is defined directly (z_gate below) instead of as a
// degenerate tunneling gate.

Mat u_tun(const FockSpace& space, int i, int j, double th1, double th2,
          double th3);
Mat u_int(const FockSpace& space, int i, int j, double theta);

// Single-mode phase gate Z_i = exp(i (pi/4) n_i).  Z^4 != 1, Z^8 = 1.
Mat z_gate(const FockSpace& space, int i);

// fSWAP_ij: |01> <-> |10> with amplitude +1, |11> -> -|11>.  Realized as
// u_tun(pi,0,0) composed with half-turn phases exp(i(pi/2) n) on both
// modes; see convention_notes() for why the quarter-turn phase gates do
// not suffice.
Mat fswap(const FockSpace& space, int i, int j);

// Controlled-phase conventions.  cz() uses theta = pi (phase -1 on |11>,
// squares to identity).  cz_quarter() is the quarter-turn u_int(pi/2),
// which puts phase -i (not -1) on |11>; it is exposed under its own name
// and satisfies cz_quarter^4 = identity instead.
Mat cz(const FockSpace& space, int i, int j);
Mat cz_quarter(const FockSpace& space, int i, int j);

// Human-readable notes on the two gate-convention ambiguities resolved by
// this artifact (the degenerate i==j tunneling-gate identification of the
// phase gate, and the quarter-turn vs half-turn controlled-phase).  Also
// printable to a stream as "warning: ..." lines.
std::vector<std::string> convention_notes();
void emit_convention_warnings(std::ostream& os);

// In-place fast gate application on a statevector (used by the Trotter and
// variational drivers; the dense gate builders above are thin wrappers).
void apply_u_tun(const FockSpace& space, Vec& psi, int i, int j, double th1,
                 double th2, double th3);
void apply_u_int(const FockSpace& space, Vec& psi, int i, int j, double theta);
void apply_site_phase(const FockSpace& space, Vec& psi, int i, double theta);

// ---------------------------------------------------------------------------
// Lattice models
//
// H = sum_ij one_body(i,j) c_i^dag c_j  +  sum_{i<j} density(i,j) n_i n_j
//   + sum over two_body terms t c_i^dag c_j^dag c_k c_l.
// one_body must be conjugate-symmetric (Error("bad-argument") otherwise);
// density is symmetrized; a diagonal one_body entry is an on-site potential.

struct TwoBodyTerm {
    int i, j, k, l;
    cplx t;
};

struct ModelSpec {
    int L = 0;
    Mat one_body;                       // L x L, conjugate-symmetric
    Eigen::MatrixXd density;            // L x L, used for i < j
    std::vector<TwoBodyTerm> two_body;  // general quartic terms (optional)
    std::vector<ModeLabel> labels;

    static ModelSpec empty(int L);
};

// Spinful Fermi-Hubbard chain: L_sites sites, 2*L_sites modes ordered
// spin-major (up = 0..L-1, down = L..2L-1); nearest-neighbor hopping -t,
// on-site density-density U, chemical potential -mu on every mode.
ModelSpec fh_chain(int L_sites, double t, double U, double mu = 0.0,
                   bool periodic = false);

// Fermi-Hubbard chain with an additional next-nearest-neighbor hopping -tp.
ModelSpec tt_chain(int L_sites, double t, double tp, double U,
                   double mu = 0.0, bool periodic = false);

// Two-band Fermi-Hubbard chain: modes ordered band-major then spin-major
// ((band,spin) blocks of L_sites).  t is a 2x2 matrix of nearest-neighbor
// hopping amplitudes between bands; U is a 2x2 matrix of on-site
// band-resolved density interactions.
ModelSpec multiband_chain(int L_sites, const Eigen::Matrix2d& t,
                          const Eigen::Matrix2d& U, double mu = 0.0);

// Periodic Anderson chain: itinerant band (hopping -tc) locally hybridized
// (amplitude V) with localized orbitals at energy eps_f carrying on-site U.
// Modes: c_up, c_down, f_up, f_down blocks of L_sites each.
ModelSpec pam_chain(int L_sites, double tc, double V, double eps_f, double U);

// General molecular Hamiltonian with complex couplings: arbitrary one-body
// matrix plus arbitrary quartic terms; hermiticity of the assembled dense
// matrix is verified (Error("bad-argument") if violated).
ModelSpec molecular(int L, const Mat& one_body,
                    const std::vector<TwoBodyTerm>& two_body);

// Dense Hermitian Hamiltonian for a model (verified Hermitian on return).
ManyBodyOperator build_hamiltonian(const ModelSpec& model);

// ---------------------------------------------------------------------------
// Gate schedules and Trotter evolution

enum class GateKind { Tunneling, Interaction, SitePhase };
enum class Zone { Tunneling, Interaction };

struct Gate {
    GateKind kind;
    int i = 0, j = 0;
    double th1 = 0.0, th2 = 0.0, th3 = 0.0;  // th1 holds theta for u_int
};

struct Layer {
    Zone zone = Zone::Tunneling;
    std::vector<Gate> gates;  // must act on disjoint mode pairs
};

struct GateSchedule {
    std::vector<Layer> layers;  // one Trotter step
};

// Greedy edge-coloring layering of the model's hopping and density terms
// for a time slice dtau (even/odd bond layers on chains).  Throws
// Error("bad-argument") if a supplied schedule has overlapping pairs.
GateSchedule default_schedule(const ModelSpec& model, double dtau);
void validate_schedule(const GateSchedule& schedule, int L);

struct TrotterResult {
    Vec psi;
    int steps = 0;
    long gate_count = 0;          // total gates applied
    long gates_per_step = 0;
    long rearrangements_per_step = 0;  // zone changes per step (constant in L)
    std::vector<double> particle_number;  // <N> after each step
};

// First-order Trotter evolution of |psi0> under the model for time tau in
// n_steps slices.  If schedule is null the default layering is used.
TrotterResult trotter_evolve(const ModelSpec& model, double tau, int n_steps,
                             const Vec& psi0,
                             const GateSchedule* schedule = nullptr);

// ---------------------------------------------------------------------------
// Variational ground-state search
//
// Layered number-conserving ansatz on the mode chain 0-1-...-L-1: per layer,
// tunneling gates on every bond (three angles each) followed by interaction
// gates on every bond (one angle each).  Minimized with a derivative-free
// Nelder-Mead simplex with seeded random restarts.

struct VqeOptions {
    int layers = 2;
    int restarts = 6;
    int budget = 20000;    // total energy evaluations across restarts
    std::uint64_t seed = 0;
    double tol = 1e-12;    // simplex size convergence tolerance
};

struct VqeResult {
    double energy = 0.0;
    std::vector<double> params;
    std::vector<double> trace;  // best energy after each evaluation
    long evaluations = 0;
    bool stagnated = false;     // budget exhausted before simplex converged
};

VqeResult vqe_minimize(const ModelSpec& model, const Vec& psi0,
                       const VqeOptions& opt);

// Occupation-basis product state with the given modes filled.
Vec basis_state(const FockSpace& space, const std::vector<int>& occupied);

}  // namespace he3::fermion
