#pragma once

#include <string>
#include <vector>

#include "he3/zeeman.hpp"

namespace he3::raman {

enum class Pol : int { SigmaMinus = -1, Pi = 0, SigmaPlus = +1 };

// A two-beam stimulated-Raman configuration between two hyperfine ground
// states through one excited manifold.
struct Configuration {
    std::string species;  // "he3", "li6", "na23", "yb171"
    zeeman::StateLabel g1, g2;
    Pol q1 = Pol::SigmaPlus, q2 = Pol::SigmaPlus;
    double B_G = 0.0;
};

Configuration he3_config(double B_G, Pol q1, Pol q2);
Configuration li6_config(double B_G);
Configuration na23_config(double B_G);
Configuration yb171_config();

// Individual Rabi frequencies in units of the reduced dipole element times
// the field factor (which cancel in |beta|), one entry per excited
// hyperfine state, ordered by increasing zero-field energy.
struct Dipoles {
    std::vector<double> omega1, omega2;
    std::vector<double> E0_Hz;  // zero-field excited energies (manifold scale)
    std::vector<double> EB_Hz;  // adiabatically tracked energies at B
    double gamma_Hz = 0.0;      // natural linewidth of the manifold, 1/(2 pi s)
};

Dipoles transition_dipoles(const Configuration& cfg);

struct BetaResult {
    double omega_R;    // effective two-photon Rabi frequency (relative units)
    double gamma_ine;  // inelastic scattering rate (same relative units)
    double beta;       // |omega_R / gamma_ine|
    double fidelity;   // 1 - 1/|beta|
};

// Delta < 0: red detuning, measured from the lowest excited hyperfine
// state; Delta > 0: blue, measured from the highest.
BetaResult beta_ratio(const Configuration& cfg, double Delta_Hz);
BetaResult beta_ratio(const Dipoles& d, double Delta_Hz);

struct ScanPoint {
    double Delta_Hz;
    double beta;
    double fidelity;
};

struct Scan {
    std::vector<ScanPoint> points;
    std::vector<ScanPoint> maxima;  // interior local maxima, refined
};

Scan beta_scan(const Configuration& cfg, double Dmin_Hz, double Dmax_Hz,
               int npoints);

}  // namespace he3::raman
