#include "he3/trap.hpp"

#include <cmath>
#include <limits>

#include "he3/constants.hpp"
#include "he3/error.hpp"

namespace he3::trap {
namespace {
constexpr double pi = 3.14159265358979323846;

void validate(const TrapGeometry& t) {
    if (t.U0_Hz <= 0.0 || t.w0_m <= 0.0 || t.lambda_m <= 0.0 ||
        t.mass_kg <= 0.0) {
        throw Error("bad-argument", "trap parameters must be positive");
    }
}
}  // namespace

double TrapGeometry::rayleigh_m() const { return pi * w0_m * w0_m / lambda_m; }

double TrapGeometry::omega_r() const {
    return std::sqrt(4.0 * U0_Hz * constants::h / (mass_kg * w0_m * w0_m));
}

double TrapGeometry::omega_z() const {
    const double zr = rayleigh_m();
    return std::sqrt(2.0 * U0_Hz * constants::h / (mass_kg * zr * zr));
}

LambDicke lamb_dicke(const TrapGeometry& trap, double lambda_photon_m,
                     Axis axis, double nbar) {
    validate(trap);
    if (lambda_photon_m <= 0.0) {
        throw Error("bad-argument", "photon wavelength must be positive");
    }
    if (nbar < 0.0) throw Error("bad-argument", "nbar must be nonnegative");
    const double omega =
        axis == Axis::Radial ? trap.omega_r() : trap.omega_z();
    const double x0 =
        std::sqrt(constants::hbar / (2.0 * trap.mass_kg * omega));
    LambDicke ld;
    ld.eta = x0 * 2.0 * pi / lambda_photon_m;
    ld.eta_eff = ld.eta * std::sqrt(2.0 * nbar + 1.0);
    return ld;
}

GroundStateFom ground_state_fom(const TrapGeometry& trap,
                                double lambda_photon_m) {
    const double er = lamb_dicke(trap, lambda_photon_m, Axis::Radial).eta;
    const double ez = lamb_dicke(trap, lambda_photon_m, Axis::Axial).eta;
    if (er >= 1.0 || ez >= 1.0) {
        throw Error("lamb-dicke-lost", "eta >= 1 on some axis");
    }
    GroundStateFom f;
    const double r = 1.0 - er * er;
    f.fom = r * r * (1.0 - ez * ez);
    f.fom_r3 = r * r * r;
    return f;
}

std::vector<DressedPoint> dressed_op_ratio(double alpha_ratio,
                                           const std::vector<double>& Delta_Hz,
                                           double Omega_Hz, double Gamma_Hz) {
    if (Omega_Hz <= 0.0 || Gamma_Hz <= 0.0) {
        throw Error("bad-argument", "Rabi and linewidth must be positive");
    }
    std::vector<DressedPoint> out;
    out.reserve(Delta_Hz.size());
    for (const double D : Delta_Hz) {
        if (D == 0.0) throw Error("zero-detuning", "degenerate dressing");
        DressedPoint p;
        p.Delta_Hz = D;
        // excited-state admixture of the mostly-ground dressed state
        const double W = std::sqrt(D * D + Omega_Hz * Omega_Hz);
        const double sin2 = 0.5 * (1.0 - std::abs(D) / W);
        const double cos2 = 1.0 - sin2;
        // two-level scattering rate with s = 2 Omega^2 / Gamma^2
        const double s = 2.0 * Omega_Hz * Omega_Hz / (Gamma_Hz * Gamma_Hz);
        const double x = 2.0 * D / Gamma_Hz;
        const double rate =
            pi * Gamma_Hz * s / (1.0 + s + x * x);  // (Gamma/2) in rad/s
        p.gamma_gg = rate * cos2;
        // the mostly-excited dressed potential curvature decides whether
        // the minority branch is trapped
        const double curv_e = sin2 * 1.0 + cos2 * alpha_ratio;
        p.ratio = curv_e > 0.0
                      ? std::numeric_limits<double>::infinity()
                      : cos2 / sin2;
        out.push_back(p);
    }
    return out;
}

double aux_adiabaticity(double J_Hz, double rate_Hz_per_s) {
    if (J_Hz <= 0.0 || rate_Hz_per_s <= 0.0) {
        throw Error("bad-argument", "J and sweep rate must be positive");
    }
    return J_Hz * J_Hz / rate_Hz_per_s;
}

bool aux_sweep_ok(double J_Hz, double rate_Hz_per_s, double threshold) {
    return aux_adiabaticity(J_Hz, rate_Hz_per_s) > threshold;
}

}  // namespace he3::trap
