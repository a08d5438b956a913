#pragma once

#include <Eigen/Dense>
#include <vector>

namespace he3::rydberg {

// Radial dipole integral <nu' l'| r |nu l> (a.u.) between bound Coulomb
// (Whittaker-type) wavefunctions of effective quantum number nu, computed
// by inward Numerov integration with an inner cutoff.
double radial_integral(double nu, int l, double nup, int lp);

// One Rydberg electron state in the uncoupled orbital basis; the stretched
// spin part (core f_c = 1, triplet) is a spectator of the dipole-dipole
// interaction and only enters through the series energies.
struct AtomState {
    double nu = 0.0;   // effective quantum number w.r.t. the f_c=1 threshold
    int l = 0;
    int m = 0;
    double E_GHz = 0.0;  // relative to the degeneracy-weighted core average
};

// Triplet-series state energy from the quantum-defect fit (the
// single-channel stretched-F symmetry of the given l).
AtomState series_state(int n, int l, int m);

struct PairState {
    AtomState a, b;
    int M() const { return a.m + b.m; }
    double E_GHz() const { return a.E_GHz + b.E_GHz; }
};

// <bra| V_dd |ket> R^3 for the internuclear axis along z, in GHz um^3.
// Zero unless both atoms change l by +-1 and total M is conserved.
double c3_element(const PairState& bra, const PairState& ket);

struct C6Policy {
    int dn = 2;                         // |n - n'| cap for intermediates
    double degeneracy_floor_GHz = 0.010;  // Forster-resonance guard
};

struct C6Result {
    double GHz_um6 = 0.0;
    double au = 0.0;         // GHz um^6 / 1.44e-19
    double scaled_au = 0.0;  // C6 / nu^11 in a.u.
    double nu = 0.0;         // of one pair atom
};

// Second-order C6 of a stretched pair: both atoms in the triplet-series
// (n, l) state with m = l. l = 0 is the ns F=3/2 + ns F=3/2 pair; l = 2 is
// the stretched nd pair estimate (the near-degenerate high-l manifold is
// not included and a warning is emitted).
C6Result c6_stretched_pair(int n, int l, const C6Policy& policy = {});

// Second-order C6 of the ns F=3/2 + ns F=3/2 pair (M stretched).
C6Result c6_s_pair(int n, const C6Policy& policy = {});

// Same machinery for an eigenstate of the two-channel ns F=1/2 series;
// branch 0/1 selects the lower/upper root adjacent to n.
C6Result c6_s12_pair(int n, int branch, const C6Policy& policy = {});

// Generic second-order sum over an explicit intermediate list (used for
// closed-form and invariance tests).
double c6_second_order(const PairState& target,
                       const std::vector<PairState>& intermediates,
                       double degeneracy_floor_GHz = 0.010);

struct CurvePolicy {
    int dn = 2;
    int lmax = 3;
    bool check_convergence = false;  // re-run with dn+1 at the smallest R
};

struct PairCurves {
    std::vector<PairState> basis;
    std::vector<double> R_um;
    // energies(branch, i): adiabatically tracked curve over R_um
    Eigen::MatrixXd energies_GHz;
    int target_branch = -1;  // branch connecting to ns+ns at large R
    // Per branch, at the largest R: basis index with maximum weight and
    // that weight (|overlap|^2).
    std::vector<int> dominant_basis;
    std::vector<double> dominant_weight;
};

// Diagonalized pair potential curves at fixed orbital M.
PairCurves pair_potential_curves(int n, int M, const std::vector<double>& R_um,
                                 const CurvePolicy& policy = {});

// Smallest grid radius beyond which the tracked branch stays within 10% of
// E_inf + C6/R^6 (the van der Waals validity radius); throws
// Error("no-convergence") if no grid point qualifies.
double vdw_radius(const PairCurves& curves, int branch, double E_inf_GHz,
                  double C6_GHz_um6);

}  // namespace he3::rydberg
