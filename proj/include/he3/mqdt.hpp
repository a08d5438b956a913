#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace he3::mqdt {

// Energy-dependent quantum defect mu(eps) = mu0 + mu1 eps + ... with
// eps = Ry(3He)/nu^2 in atomic units (hartree).
struct DefectFit {
    std::string series;  // e.g. "3S1" (2S+1, L letter, J)
    double mu[5] = {0, 0, 0, 0, 0};
    double eval(double eps_au) const;
};

// Fit for one series label; throws Error("unknown-series") otherwise.
const DefectFit& defect_fit(const std::string& series);

// mu(eps); warns and extrapolates when eps is outside the fitted range
// (|eps| <= Ry/25, i.e. nu >= 5).
double quantum_defect(const std::string& series, double eps_au);

// Hyperfine ionization thresholds relative to the degeneracy-weighted
// average of the core doublet (GHz).
inline constexpr double kThresholdF1_GHz = -2.16641246644;
inline constexpr double kThresholdF0_GHz = +6.49923739933;
inline constexpr double kCoreSplitting_GHz = 8.66564986577;

struct LongRangeChannel {
    int tfc = 0;  // doubled core f_c
    int tje = 0;  // doubled electron j_e
    double threshold_GHz = 0.0;
};

struct ShortRangeChannel {
    int tS = 0;  // doubled total spin
    int L = 0;
    int tJ = 0;  // doubled J
    std::string series;  // Table label used for the defect fit
};

// The coupled channels of one (l, F) symmetry, with the real orthogonal
// frame transformation U between the short-range (LS)J channels and the
// long-range (core f_c, electron j_e) channels.
struct ChannelSet {
    int l = 0;
    int tF = 0;
    std::vector<LongRangeChannel> lr;
    std::vector<ShortRangeChannel> sr;
    Eigen::MatrixXd U;  // lr x sr
};

ChannelSet make_channel_set(int l, int tF);
Eigen::MatrixXd frame_transformation(int l, int tF);

// Short-range reaction matrix diag(tan pi mu_S(eps)) rotated into the
// long-range frame: K = U K_LSJ U^T.
Eigen::MatrixXd k_matrix(const ChannelSet& cs, double eps_au);

struct BoundState {
    double E_GHz = 0.0;
    std::vector<double> nu;         // effective quantum number per channel
    std::vector<double> fractions;   // channel admixture, sums to 1
    std::vector<double> amplitudes;  // signed sqrt of fractions
};

struct BoundOptions {
    double nu_step = 0.002;      // sign-change scan step in nu(lowest)
    bool zero_coupling = false;  // drop off-diagonal K (diagnostic)
};

// All bound states with E in [Emin, Emax] (GHz); the window must lie
// below the lowest threshold.
std::vector<BoundState> bound_states(const ChannelSet& cs, double Emin_GHz,
                                     double Emax_GHz,
                                     const BoundOptions& opts = {});

// Convenience: window covering effective quantum numbers [nu_min, nu_max]
// w.r.t. the lowest threshold.
std::vector<BoundState> bound_states_nu(const ChannelSet& cs, double nu_min,
                                        double nu_max,
                                        const BoundOptions& opts = {});

struct LuFanoPoint {
    double nu_lower = 0.0;      // nu w.r.t. the lower (f_c=1) threshold
    double nu_upper_mod1 = 0.0; // nu w.r.t. the upper threshold, mod 1
};

std::vector<LuFanoPoint> lu_fano(const ChannelSet& cs, double nu_min,
                                 double nu_max,
                                 const BoundOptions& opts = {});

}  // namespace he3::mqdt
