#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "he3/catalog.hpp"

namespace he3::polarizability {

// A hyperfine Zeeman state of a catalog level. F and m_F are doubled
// integers (twice the spin value), matching the angular-momentum API.
struct HfState {
    std::string level_key;  // catalog key, e.g. "1s2s 3S1"
    int tF = 0;
    int tmF = 0;
    bool operator==(const HfState&) const = default;
};

// Which form of the perturbative sum to use per transition line.
enum class SumPath {
    Auto,               // hyperfine-resolved near a manifold, J-basis far away
    HyperfineResolved,  // always resolve the F' structure of each manifold
    LargeDetuning,      // always collapse each manifold to its J level
};

struct Options {
    // Half-width of the hard exclusion window around each resonance (rad/s).
    double exclusion_halfwidth_rad = 2.0 * 3.14159265358979323846 * 10e9;
    // Auto path switches to the J-basis when the detuning from a manifold
    // exceeds this multiple of its hyperfine spread.
    double jbasis_threshold = 100.0;
    SumPath path = SumPath::Auto;
    int tI = 1;  // doubled nuclear spin
    // (level_key, tF) -> offset of that hyperfine level from the catalog
    // J-level energy, Hz. Levels absent from the map are treated as unsplit.
    std::map<std::pair<std::string, int>, double> hf_offsets_Hz;

    Options();  // populates hf_offsets_Hz with the known helium constants
};

// Scalar / vector / tensor polarizabilities, SI (C m^2 / V).
struct Components {
    double alpha0 = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
};

Components alpha_components(const Catalog& cat, const HfState& state,
                            double omega_rad, const Options& opts = {});

// alpha0 + alpha2 * angle factor * m_F weight (vector part dropped: linear
// polarization). theta is the angle between polarization and quantization
// axis.
double alpha_total(const Catalog& cat, const HfState& state, double omega_rad,
                   double theta_rad, const Options& opts = {});

// (3 cos^2 theta - 1)/2; zero at theta = arccos(1/sqrt(3)).
double tensor_angle_factor(double theta_rad);
// (3 m_F^2 - F(F+1)) / (F(2F-1)); defined as 0 for F = 1/2.
double tensor_state_weight(int tF, int tmF);

// Root of alpha_A(lambda) - alpha_B(lambda) on [lambda_lo, lambda_hi] (m).
// Poles inside the bracket are fenced off by the exclusion window and the
// root is looked for on the pole-free segments.
double find_magic_wavelength(const Catalog& cat, const HfState& a,
                             const HfState& b, double lambda_lo_m,
                             double lambda_hi_m, double theta_rad = 0.0,
                             const Options& opts = {});

struct TrapParameters {
    double depth_Hz = 0.0;     // U0 / h
    double omega_r_rad = 0.0;  // radial trap frequency
    double omega_z_rad = 0.0;  // axial trap frequency
};

// Gaussian-beam trap from power P (W) and waist w0 (m) at wavelength
// lambda (m): U0 = alpha I0 / (2 eps0 c), I0 = 2P/(pi w0^2).
TrapParameters trap_from_power(const Catalog& cat, const HfState& state,
                               double P_W, double w0_m, double lambda_m,
                               double mass_kg, double theta_rad = 0.0,
                               const Options& opts = {});

// Photon scattering rate Gamma (s/2) / (1 + (2 Delta/Gamma)^2 + s).
double scattering_rate(double s, double Delta_rad, double Gamma_rad);

// Rescale a two-photon ionization rate by (s_t/s_ref)^2 (Delta_ref/Delta_t)^2.
double two_photon_rate_rescale(double rate_ref, double s_ref,
                               double Delta_ref, double s_target,
                               double Delta_target);

// Polarizability vs wavelength; grid points falling inside an exclusion
// window are dropped, so the grid stays strictly increasing and pole-free.
struct Curve {
    HfState state;
    double theta_rad = 0.0;
    std::vector<double> lambda_m;
    std::vector<double> alpha0, alpha1, alpha2, total;  // SI
};

Curve polarizability_curve(const Catalog& cat, const HfState& state,
                           double lambda_min_m, double lambda_max_m,
                           int points, double theta_rad,
                           const Options& opts = {});

}  // namespace he3::polarizability
