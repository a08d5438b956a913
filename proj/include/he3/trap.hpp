#pragma once

#include <vector>

namespace he3::trap {

// Gaussian-beam tweezer described by its depth (in Hz, i.e. U0/h), waist,
// wavelength, and the trapped species' mass.
struct TrapGeometry {
    double U0_Hz = 0.0;
    double w0_m = 0.0;
    double lambda_m = 0.0;
    double mass_kg = 0.0;

    double rayleigh_m() const;  // z_R = pi w0^2 / lambda
    double omega_r() const;     // sqrt(4 U0 / (m w0^2)), rad/s
    double omega_z() const;     // sqrt(2 U0 / (m z_R^2)), rad/s
};

enum class Axis { Radial, Axial };

struct LambDicke {
    double eta = 0.0;      // x0 k with x0 = sqrt(hbar / (2 m omega))
    double eta_eff = 0.0;  // eta sqrt(2 nbar + 1)
};

LambDicke lamb_dicke(const TrapGeometry& trap, double lambda_photon_m,
                     Axis axis, double nbar = 0.0);

struct GroundStateFom {
    double fom = 0.0;     // (1 - eta_r^2)^2 (1 - eta_z^2)
    double fom_r3 = 0.0;  // (1 - eta_r^2)^3
};

// Probability-style figure of merit for staying in the motional ground
// state during an optical-pumping photon scatter.
GroundStateFom ground_state_fom(const TrapGeometry& trap,
                                double lambda_photon_m);

struct DressedPoint {
    double Delta_Hz = 0.0;
    double ratio = 0.0;     // good-to-bad decay ratio (inf when no bad channel)
    double gamma_gg = 0.0;  // good-decay photon rate, 1/s
};

// Two-level dressed-state optical-pumping model: ground state trapped with
// polarizability alpha_g, excited state scaled by alpha_ratio = alpha_e /
// alpha_g. Decay branches to the dressed states with their squared
// amplitudes; a decay is "bad" when it lands on an anti-trapped dressed
// potential. Rabi frequency, detunings, and linewidth in Hz (not angular).
std::vector<DressedPoint> dressed_op_ratio(double alpha_ratio,
                                           const std::vector<double>& Delta_Hz,
                                           double Omega_Hz, double Gamma_Hz);

// Adiabaticity parameter J^2 / rate for an auxiliary-tweezer depth sweep;
// J in Hz, rate = d(U - U_aux)/dt in Hz/s.
double aux_adiabaticity(double J_Hz, double rate_Hz_per_s);
bool aux_sweep_ok(double J_Hz, double rate_Hz_per_s, double threshold = 10.0);

}  // namespace he3::trap
