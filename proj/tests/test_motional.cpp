#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "he3/constants.hpp"
#include "he3/error.hpp"
#include "he3/motional.hpp"

namespace constants = he3::constants;
using he3::motional::DriveProtocol;
using he3::motional::WellSpectrum;

namespace {

// Peak 0->1 transfer of a resonantly driven three-level ladder in the
// rotating frame; delta_Hz is the anharmonic shift of the third level.
double three_level_peak(double Omega_Hz, double delta_Hz, double t_max_s) {
    Eigen::Matrix3d H;
    const double g01 = 0.5 * Omega_Hz, g12 = 0.5 * std::sqrt(2.0) * Omega_Hz;
    H << 0.0, g01, 0.0, g01, 0.0, g12, 0.0, g12, -delta_Hz;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(H);
    const Eigen::Vector3d psi0 = es.eigenvectors().row(0);
    double peak = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double t = t_max_s * i / 4000.0;
        std::complex<double> a1 = 0.0;
        for (int k = 0; k < 3; ++k)
            a1 += es.eigenvectors()(1, k) * psi0(k) *
                  std::exp(std::complex<double>(
                      0.0, -2.0 * M_PI * es.eigenvalues()(k) * t));
        peak = std::max(peak, std::norm(a1));
    }
    return peak;
}

}  // namespace

TEST_CASE("shallow-well spectrum and anharmonicity") {
    const double m = constants::m_He3, w0 = 1e-6;

    const WellSpectrum ws = he3::motional::well_spectrum(75e3, w0, m);
    CHECK(ws.E_Hz.size() == 4);
    for (std::size_t i = 0; i < ws.E_Hz.size(); ++i) {
        CHECK(ws.E_Hz[i] < ws.depth_Hz);  // bound below the asymptote
        CHECK(ws.E_Hz[i] > 0.0);
        if (i > 0) CHECK(ws.E_Hz[i] > ws.E_Hz[i - 1]);
    }
    CHECK(ws.anharmonicity == doctest::Approx(0.30).epsilon(0.06 / 0.30));
    CHECK(ws.anharmonicity == doctest::Approx(0.304247).epsilon(1e-3));
    CHECK(ws.f01_Hz() == doctest::Approx(26365.0).epsilon(1e-3));

    // Deeper well: more bound states, weaker anharmonicity.
    const WellSpectrum w6 = he3::motional::well_spectrum(600e3, w0, m);
    CHECK(w6.E_Hz.size() == 11);
    CHECK(w6.anharmonicity == doctest::Approx(0.067389).epsilon(1e-3));
    CHECK(w6.anharmonicity < ws.anharmonicity);

    // Deep-well harmonic limit of the level spacing.
    const WellSpectrum wd = he3::motional::well_spectrum(5e7, w0, m, 2048);
    const double omega_r =
        std::sqrt(4.0 * 5e7 * constants::h / (m * w0 * w0)) / (2.0 * M_PI);
    CHECK(wd.f01_Hz() == doctest::Approx(omega_r).epsilon(0.01));
    CHECK(wd.anharmonicity < 0.01);

    CHECK_THROWS_AS((void)he3::motional::well_spectrum(-1.0, w0, m),
                    he3::Error);
    // A well this shallow binds only one state.
    CHECK_THROWS_AS((void)he3::motional::well_spectrum(200.0, w0, m),
                    he3::Error);
}

TEST_CASE("parity selection rules") {
    const double m = constants::m_He3, w0 = 1e-6;
    const WellSpectrum ws = he3::motional::well_spectrum(75e3, w0, m);

    const double dx = ws.x_m[1] - ws.x_m[0];
    double x02 = 0.0, x01 = 0.0;
    for (std::size_t i = 0; i < ws.x_m.size(); ++i) {
        x02 += ws.states[0][i] * ws.x_m[i] * ws.states[2][i] * dx;
        x01 += ws.states[0][i] * ws.x_m[i] * ws.states[1][i] * dx;
    }
    CHECK(std::abs(x02) < 1e-12 * w0);  // even-even coupling vanishes
    CHECK(std::abs(x01) > 1e-2 * w0);

    // Symmetric (depth) modulation at f01 transfers nothing to |1> and
    // stays off-resonant from |2>.
    DriveProtocol p;
    p.depth_mod = 0.01;
    p.freq_Hz = ws.f01_Hz();
    p.duration_s = 3.3e-3;
    const auto r = he3::motional::drive_dynamics(ws, p, 0, 800);
    double p1 = 0.0, p2 = 0.0;
    for (std::size_t i = 0; i < r.P1.size(); ++i) {
        p1 = std::max(p1, r.P1[i]);
        p2 = std::max(p2, r.P2[i]);
    }
    CHECK(p2 < 1e-4);
    CHECK(p1 < 1e-10);
    CHECK(r.norm_drift < 1e-8);
}

TEST_CASE("resonant pi pulse at the operating point") {
    const double m = constants::m_He3, w0 = 1e-6;
    const auto pp = he3::motional::pi_pulse(8.5e-9, 75e3, w0, m);

    CHECK(pp.fidelity >= 0.998);
    CHECK(pp.fidelity == doctest::Approx(0.998866).epsilon(5e-4));
    CHECK(pp.Omega_Hz == doctest::Approx(489.6).epsilon(0.02));

    // Undriven well: populations frozen.
    const WellSpectrum ws = he3::motional::well_spectrum(75e3, w0, m);
    DriveProtocol still;
    still.amplitude_m = 0.0;
    still.freq_Hz = ws.f01_Hz();
    still.duration_s = 5e-4;
    const auto r = he3::motional::drive_dynamics(ws, still, 0, 40);
    for (std::size_t i = 0; i < r.P0.size(); ++i) {
        CHECK(r.P0[i] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(r.P1[i] < 1e-12);
    }
    CHECK(r.norm_drift < 1e-8);

    CHECK_THROWS_AS(
        (void)he3::motional::drive_dynamics(ws, DriveProtocol{}, 0, 40),
        he3::Error);
    DriveProtocol coarse = still;
    coarse.steps_per_cycle = 5;
    CHECK_THROWS_AS((void)he3::motional::drive_dynamics(ws, coarse, 0, 40),
                    he3::Error);
}

TEST_CASE("rabi frequency linear in modulation amplitude") {
    const double m = constants::m_He3, w0 = 1e-6;
    const WellSpectrum ws = he3::motional::well_spectrum(75e3, w0, m);

    // Drive matrix element <0|dU/dx|1> by central differences.
    const double dx = ws.x_m[1] - ws.x_m[0];
    auto U = [&](double x) {
        return 75e3 * (1.0 - std::exp(-2.0 * x * x / (w0 * w0)));
    };
    double me = 0.0;
    for (std::size_t i = 1; i + 1 < ws.x_m.size(); ++i)
        me += ws.states[0][i] * (U(ws.x_m[i + 1]) - U(ws.x_m[i - 1])) /
              (2.0 * dx) * ws.states[1][i] * dx;
    me = std::abs(me);

    const auto p1 = he3::motional::pi_pulse(1e-9, 75e3, w0, m);
    const auto p2 = he3::motional::pi_pulse(2e-9, 75e3, w0, m);
    CHECK(p1.Omega_Hz == doctest::Approx(1e-9 * me).epsilon(0.05));
    CHECK(p2.Omega_Hz == doctest::Approx(2e-9 * me).epsilon(0.05));
    CHECK(p2.Omega_Hz / p1.Omega_Hz == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("propagation error control") {
    const double m = constants::m_He3, w0 = 1e-6;
    const WellSpectrum ws = he3::motional::well_spectrum(75e3, w0, m);

    DriveProtocol p;
    p.amplitude_m = 8.5e-9;
    p.freq_Hz = ws.f01_Hz();
    p.duration_s = 1e-3;
    p.steps_per_cycle = 1600;
    const auto a = he3::motional::drive_dynamics(ws, p, 0, 50);
    p.steps_per_cycle = 3200;
    const auto b = he3::motional::drive_dynamics(ws, p, 0, 50);

    CHECK(std::abs(a.P1.back() - b.P1.back()) < 1e-6);
    CHECK(std::abs(a.P0.back() - b.P0.back()) < 1e-6);
    CHECK(a.norm_drift < 1e-8);
    CHECK(b.norm_drift < 1e-8);
}

TEST_CASE("qubit frequency tuning and leakage model") {
    const double m = constants::m_He3, w0 = 1e-6;

    // f01 strictly monotone in depth: the depth acts as a z-control.
    double prev = 0.0;
    for (double depth : {50e3, 100e3, 200e3, 400e3, 600e3}) {
        const WellSpectrum ws = he3::motional::well_spectrum(depth, w0, m);
        CHECK(ws.f01_Hz() > prev);
        prev = ws.f01_Hz();
    }

    // Three-level ladder: the anharmonic shift protects the transfer;
    // with equal spacings the same drive leaks badly.
    const WellSpectrum ws = he3::motional::well_spectrum(75e3, w0, m);
    const double gap = ws.f01_Hz() - (ws.E_Hz[2] - ws.E_Hz[1]);
    CHECK(gap > 5e3);
    const double Omega = 489.6;
    CHECK(three_level_peak(Omega, gap, 3.0 / Omega) > 0.99);
    CHECK(three_level_peak(Omega, 0.0, 3.0 / Omega) < 0.9);
}

TEST_CASE("fidelity map over amplitude") {
    const double m = constants::m_He3, w0 = 1e-6;
    const auto map = he3::motional::pi_pulse_fidelity_map({6e-9, 8.5e-9},
                                                          {75e3}, w0, m);
    REQUIRE(map.size() == 2);
    CHECK(map[0].fidelity > 0.99);
    CHECK(map[1].fidelity > 0.99);
    CHECK(map[1].Omega_Hz > map[0].Omega_Hz);  // Omega grows with amplitude
    CHECK(map[0].amplitude_m == 6e-9);
    CHECK(map[1].depth_Hz == 75e3);
}
