#pragma once

#include <complex>
#include <vector>

namespace he3::motional {

// Bound spectrum of the 1D radial cut of a Gaussian tweezer,
// U(x) = depth * (1 - exp(-2 x^2 / w0^2)), minimum at 0.
struct WellSpectrum {
    double depth_Hz = 0.0;
    double w0_m = 0.0;
    double mass_kg = 0.0;
    std::vector<double> E_Hz;  // bound levels, ascending, < depth_Hz
    std::vector<std::vector<double>> states;  // normalized, on grid
    std::vector<double> x_m;                  // grid
    double anharmonicity = 0.0;               // (E1-E0)/(E2-E1) - 1

    double f01_Hz() const { return E_Hz[1] - E_Hz[0]; }
};

WellSpectrum well_spectrum(double depth_Hz, double w0_m, double mass_kg,
                           int n_grid = 1024, double box_w0 = 10.0);

// Rectangular-envelope position modulation x -> x - A sin(2 pi f t).
struct DriveProtocol {
    double amplitude_m = 0.0;   // antisymmetric: position modulation
    double depth_mod = 0.0;     // symmetric: relative depth modulation
    double freq_Hz = 0.0;
    double duration_s = 0.0;
    int steps_per_cycle = 200;  // time step <= 1 / (steps_per_cycle * f01)
};

struct DriveResult {
    std::vector<double> t_s;
    std::vector<double> P0, P1, P2, Pleak;
    double norm_drift = 0.0;  // max | ||psi|| - 1 |
};

// Split-step propagation of the driven 1D well from bound state
// |initial_state>; populations projected on the lowest three levels.
DriveResult drive_dynamics(const WellSpectrum& well,
                           const DriveProtocol& protocol,
                           int initial_state = 0, int samples = 200);

struct PiPulsePoint {
    double amplitude_m = 0.0;
    double depth_Hz = 0.0;
    double fidelity = 0.0;   // peak P1 over the duration scan
    double Omega_Hz = 0.0;   // Rabi frequency from the first P1 peak
    double t_pi_s = 0.0;
};

PiPulsePoint pi_pulse(double amplitude_m, double depth_Hz, double w0_m,
                      double mass_kg);

std::vector<PiPulsePoint> pi_pulse_fidelity_map(
    const std::vector<double>& amplitudes_m,
    const std::vector<double>& depths_Hz, double w0_m, double mass_kg);

}  // namespace he3::motional
