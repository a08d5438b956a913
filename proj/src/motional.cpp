#include "he3/motional.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <fftw3.h>

#include "he3/constants.hpp"
#include "he3/error.hpp"

namespace he3::motional {

namespace constants = he3::constants;

namespace {

double well_potential(double depth_Hz, double w0_m, double x) {
    return depth_Hz * (1.0 - std::exp(-2.0 * x * x / (w0_m * w0_m)));
}

}  // namespace

WellSpectrum well_spectrum(double depth_Hz, double w0_m, double mass_kg,
                           int n_grid, double box_w0) {
    if (depth_Hz <= 0.0 || w0_m <= 0.0 || mass_kg <= 0.0 || n_grid < 16 ||
        box_w0 <= 0.0)
        throw Error("bad-argument", "motional: invalid well parameters");

    WellSpectrum ws;
    ws.depth_Hz = depth_Hz;
    ws.w0_m = w0_m;
    ws.mass_kg = mass_kg;

    const double L = box_w0 * w0_m;
    const double dx = L / n_grid;  // periodic-compatible grid, no endpoint
    ws.x_m.resize(std::size_t(n_grid));
    for (int i = 0; i < n_grid; ++i)
        ws.x_m[std::size_t(i)] = -0.5 * L + i * dx;

    const double t =
        constants::hbar * constants::hbar / (2.0 * mass_kg * constants::h);
    const double c = t / (dx * dx);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n_grid, n_grid);
    for (int i = 0; i < n_grid; ++i) {
        H(i, i) = 2.0 * c + well_potential(depth_Hz, w0_m, ws.x_m[std::size_t(i)]);
        if (i > 0) H(i, i - 1) = H(i - 1, i) = -c;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);

    for (int i = 0; i < n_grid; ++i) {
        const double e = es.eigenvalues()(i);
        if (e >= depth_Hz) break;
        ws.E_Hz.push_back(e);
        std::vector<double> v(std::size_t(n_grid), 0.0);
        // Fix the sign convention: positive at the left turning point side.
        const double s =
            es.eigenvectors()(n_grid / 2, i) >= 0.0 ? 1.0 : -1.0;
        for (int j = 0; j < n_grid; ++j)
            v[std::size_t(j)] = s * es.eigenvectors()(j, i) / std::sqrt(dx);
        ws.states.push_back(std::move(v));
    }
    if (ws.E_Hz.size() < 2)
        throw Error("too-few-bound", "motional: fewer than 2 bound states");
    if (ws.E_Hz.size() >= 3)
        ws.anharmonicity =
            (ws.E_Hz[1] - ws.E_Hz[0]) / (ws.E_Hz[2] - ws.E_Hz[1]) - 1.0;
    else
        ws.anharmonicity = std::numeric_limits<double>::quiet_NaN();
    return ws;
}

DriveResult drive_dynamics(const WellSpectrum& well,
                           const DriveProtocol& protocol, int initial_state,
                           int samples) {
    const int n = int(well.x_m.size());
    if (initial_state < 0 || initial_state >= int(well.states.size()))
        throw Error("bad-argument", "motional: no such bound state");
    if (protocol.freq_Hz <= 0.0 || protocol.duration_s <= 0.0 ||
        protocol.amplitude_m < 0.0 || samples < 2)
        throw Error("bad-argument", "motional: invalid drive protocol");
    if (protocol.steps_per_cycle < 20)
        throw Error("unstable-step",
                    "motional: time step too coarse for the drive phase");
    if (protocol.amplitude_m > 0.1 * well.w0_m)
        throw Error("bad-argument",
                    "motional: modulation amplitude not small against waist");
    if (std::abs(protocol.depth_mod) > 0.5)
        throw Error("bad-argument",
                    "motional: depth modulation not perturbative");

    const double dx = well.x_m[1] - well.x_m[0];
    const double f_fast = std::max(protocol.freq_Hz, well.f01_Hz());
    const double dt = 1.0 / (protocol.steps_per_cycle * f_fast);
    const long nsteps = std::lround(std::ceil(protocol.duration_s / dt));
    const double dt_eff = protocol.duration_s / double(nsteps);

    // Kinetic phases on the FFT frequency grid.
    const double tcoef =
        constants::hbar * constants::hbar / (2.0 * well.mass_kg * constants::h);
    std::vector<std::complex<double>> kin(std::size_t(n), std::complex<double>(0.0, 0.0));
    const double L = n * dx;
    for (int i = 0; i < n; ++i) {
        const int m = (i <= n / 2) ? i : i - n;
        const double k = 2.0 * M_PI * m / L;
        kin[std::size_t(i)] =
            std::exp(std::complex<double>(0.0, -2.0 * M_PI * tcoef * k * k *
                                                   dt_eff));
    }

    std::vector<std::complex<double>> psi(std::size_t(n), std::complex<double>(0.0, 0.0));
    for (int i = 0; i < n; ++i)
        psi[std::size_t(i)] =
            well.states[std::size_t(initial_state)][std::size_t(i)] *
            std::sqrt(dx);

    fftw_plan fwd = fftw_plan_dft_1d(
        n, reinterpret_cast<fftw_complex*>(psi.data()),
        reinterpret_cast<fftw_complex*>(psi.data()), FFTW_FORWARD,
        FFTW_ESTIMATE);
    fftw_plan bwd = fftw_plan_dft_1d(
        n, reinterpret_cast<fftw_complex*>(psi.data()),
        reinterpret_cast<fftw_complex*>(psi.data()), FFTW_BACKWARD,
        FFTW_ESTIMATE);

    DriveResult out;
    const long stride = std::max(1L, nsteps / samples);

    auto record = [&](double time) {
        std::complex<double> a0 = 0, a1 = 0, a2 = 0;
        double nrm = 0.0;
        for (int i = 0; i < n; ++i) {
            const std::complex<double> p = psi[std::size_t(i)];
            nrm += std::norm(p);
            a0 += well.states[0][std::size_t(i)] * std::sqrt(dx) * p;
            if (well.states.size() > 1)
                a1 += well.states[1][std::size_t(i)] * std::sqrt(dx) * p;
            if (well.states.size() > 2)
                a2 += well.states[2][std::size_t(i)] * std::sqrt(dx) * p;
        }
        out.t_s.push_back(time);
        out.P0.push_back(std::norm(a0));
        out.P1.push_back(std::norm(a1));
        out.P2.push_back(std::norm(a2));
        out.Pleak.push_back(
            std::max(0.0, nrm - std::norm(a0) - std::norm(a1) - std::norm(a2)));
        out.norm_drift =
            std::max(out.norm_drift, std::abs(std::sqrt(nrm) - 1.0));
    };

    record(0.0);
    std::vector<double> vhalf(std::size_t(n), 0.0);
    for (long step = 0; step < nsteps; ++step) {
        const double t0 = step * dt_eff, t1 = (step + 1) * dt_eff;
        auto shift = [&](double time) {
            return protocol.amplitude_m *
                   std::sin(2.0 * M_PI * protocol.freq_Hz * time);
        };
        auto depth_scale = [&](double time) {
            return 1.0 + protocol.depth_mod *
                             std::sin(2.0 * M_PI * protocol.freq_Hz * time);
        };
        // Strang splitting: half potential, kinetic, half potential,
        // with the drive shift evaluated at the interval endpoints.
        for (int i = 0; i < n; ++i)
            vhalf[std::size_t(i)] =
                depth_scale(t0) *
                well_potential(well.depth_Hz, well.w0_m,
                               well.x_m[std::size_t(i)] - shift(t0));
        for (int i = 0; i < n; ++i)
            psi[std::size_t(i)] *= std::exp(std::complex<double>(
                0.0, -M_PI * vhalf[std::size_t(i)] * dt_eff));
        fftw_execute(fwd);
        for (int i = 0; i < n; ++i) psi[std::size_t(i)] *= kin[std::size_t(i)];
        fftw_execute(bwd);
        const double inv = 1.0 / n;
        for (int i = 0; i < n; ++i) psi[std::size_t(i)] *= inv;
        for (int i = 0; i < n; ++i)
            vhalf[std::size_t(i)] =
                depth_scale(t1) *
                well_potential(well.depth_Hz, well.w0_m,
                               well.x_m[std::size_t(i)] - shift(t1));
        for (int i = 0; i < n; ++i)
            psi[std::size_t(i)] *= std::exp(std::complex<double>(
                0.0, -M_PI * vhalf[std::size_t(i)] * dt_eff));
        if ((step + 1) % stride == 0 || step + 1 == nsteps) record(t1);
    }

    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    return out;
}

PiPulsePoint pi_pulse(double amplitude_m, double depth_Hz, double w0_m,
                      double mass_kg) {
    const WellSpectrum ws = well_spectrum(depth_Hz, w0_m, mass_kg);
    if (ws.states.size() < 3)
        throw Error("too-few-bound", "motional: need three bound states");

    // Perturbative Rabi estimate from the drive matrix element to bound
    // the duration scan.
    const double dx = ws.x_m[1] - ws.x_m[0];
    double me = 0.0;
    for (std::size_t i = 1; i + 1 < ws.x_m.size(); ++i) {
        const double dv = (well_potential(depth_Hz, w0_m, ws.x_m[i + 1]) -
                           well_potential(depth_Hz, w0_m, ws.x_m[i - 1])) /
                          (2.0 * dx);
        me += ws.states[0][i] * dv * ws.states[1][i] * dx;
    }
    const double Omega_est = std::max(amplitude_m * std::abs(me), 1e-3);

    DriveProtocol p;
    p.amplitude_m = amplitude_m;
    p.freq_Hz = ws.f01_Hz();
    p.duration_s = 1.6 / Omega_est;  // a few Rabi fringes
    const DriveResult r = drive_dynamics(ws, p, 0, 1200);

    PiPulsePoint out;
    out.amplitude_m = amplitude_m;
    out.depth_Hz = depth_Hz;
    // Fidelity: best transfer anywhere in the duration scan.  The Rabi
    // frequency comes from the first fringe maximum.
    std::size_t first_peak = 0;
    for (std::size_t i = 1; i + 1 < r.P1.size(); ++i) {
        if (first_peak == 0 && r.P1[i] > 0.5 && r.P1[i] >= r.P1[i - 1] &&
            r.P1[i] > r.P1[i + 1])
            first_peak = i;
        out.fidelity = std::max(out.fidelity, r.P1[i]);
    }
    if (first_peak == 0)
        throw Error("no-convergence", "motional: no Rabi fringe found");
    out.t_pi_s = r.t_s[first_peak];
    out.Omega_Hz = 0.5 / out.t_pi_s;
    return out;
}

std::vector<PiPulsePoint> pi_pulse_fidelity_map(
    const std::vector<double>& amplitudes_m,
    const std::vector<double>& depths_Hz, double w0_m, double mass_kg) {
    std::vector<PiPulsePoint> out;
    for (double d : depths_Hz)
        for (double a : amplitudes_m)
            out.push_back(pi_pulse(a, d, w0_m, mass_kg));
    return out;
}

}  // namespace he3::motional
