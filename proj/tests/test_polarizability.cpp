#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "he3/catalog.hpp"
#include "he3/constants.hpp"
#include "he3/error.hpp"
#include "he3/polarizability.hpp"

using namespace he3;
using namespace he3::polarizability;

namespace {

const double pi = 3.14159265358979323846;

Catalog full_catalog() {
    return load_atomic_tables(std::string(HE3_SOURCE_DIR) +
                              "/data/he3_levels_lines.csv");
}

double omega_of_nm(double lam_nm) {
    return 2.0 * pi * constants::c / (lam_nm * 1e-9);
}

double in_au(double alpha_si) { return alpha_si / constants::alpha_au; }

const HfState kG{"1s2s 3S1", 3, -1};   // trapped qubit state
const HfState kE{"1s2p 3P2", 3, -3};   // optical-pumping excited state
const HfState kP{"1s3p 3P2", 5, -5};   // fluorescence probe state

// Two-level catalog: one J=0 lower level, one J=1 upper level, one line.
Catalog two_level(double nu0_Hz, double S_au) {
    Catalog cat;
    cat.add_level({"1xa", "3P0", 0, 0.0});
    cat.add_level({"2xa", "3S1", 2, nu0_Hz});
    cat.add_line({"1xa 3P0", "2xa 3S1", S_au, {}});
    return cat;
}

Options no_hf() {
    Options o;
    o.hf_offsets_Hz.clear();
    return o;
}

}  // namespace

TEST_CASE("state polarizability ratios at the trapping wavelengths") {
    Catalog cat = full_catalog();
    const double w1150 = omega_of_nm(1150.0), w1013 = omega_of_nm(1013.0);

    const double g1150 = alpha_total(cat, kG, w1150, 0.0);
    const double e1150 = alpha_total(cat, kE, w1150, 0.0);
    CHECK(e1150 / g1150 == doctest::Approx(-0.04).epsilon(0.25));
    CHECK(std::abs(e1150 / g1150 + 0.04) < 0.01);

    const double g1013 = alpha_total(cat, kG, w1013, 0.0);
    const double e1013 = alpha_total(cat, kE, w1013, 0.0);
    CHECK(std::abs(e1013 / g1013 + 0.18) < 0.03);

    // red-detuned trapping state is trapped, probe state anti-trapped there
    CHECK(g1150 > 0.0);
    CHECK(alpha_total(cat, kP, w1150, 0.0) < 0.0);
    // static limit of the metastable level
    CHECK(in_au(alpha_total(cat, kG, omega_of_nm(1e7), 0.0)) ==
          doctest::Approx(315.0).epsilon(0.03));
}

TEST_CASE("tensor shifts: differential polarizability of the qubit states") {
    Catalog cat = full_catalog();
    const double w = omega_of_nm(1150.0);
    const double a_g = alpha_total(cat, kG, w, 0.0);
    const double a_q = alpha_total(cat, {"1s2s 3S1", 1, -1}, w, 0.0);
    const double a_s = alpha_total(cat, {"1s2s 3S1", 3, -3}, w, 0.0);
    const double d_qubit = std::abs(a_g - a_q) / std::abs(a_g);
    const double d_stretch = std::abs(a_g - a_s) / std::abs(a_g);
    CHECK(d_qubit == doctest::Approx(0.00015).epsilon(0.5));
    CHECK(d_stretch == doctest::Approx(0.00031).epsilon(0.5));
    CHECK(d_stretch / d_qubit == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("magic wavelength of the g/p pair") {
    Catalog cat = full_catalog();
    const double lam =
        find_magic_wavelength(cat, kG, kP, 1015e-9, 1040e-9);
    CHECK(lam * 1e9 == doctest::Approx(1025.6).epsilon(1.0 / 1025.6));
    const double w = 2.0 * pi * constants::c / lam;
    const double aA = alpha_total(cat, kG, w, 0.0);
    const double aB = alpha_total(cat, kP, w, 0.0);
    CHECK(std::abs(aA - aB) <= 1e-6 * std::max(std::abs(aA), std::abs(aB)));

    CHECK_THROWS_AS(find_magic_wavelength(cat, kG, kG, 1015e-9, 1040e-9),
                    Error);
    // g trapped, p anti-trapped throughout: no crossing on this bracket
    CHECK_THROWS_AS(find_magic_wavelength(cat, kG, kP, 1140e-9, 1160e-9),
                    Error);
}

TEST_CASE("trap depth and frequencies from beam power") {
    Catalog cat = full_catalog();
    const double m = constants::m_He3;
    const auto tp =
        trap_from_power(cat, kG, 1.23e-3, 1e-6, 1150e-9, m);
    CHECK(tp.depth_Hz == doctest::Approx(10e6).epsilon(0.1));

    const auto zero = trap_from_power(cat, kG, 0.0, 1e-6, 1150e-9, m);
    CHECK(zero.depth_Hz == 0.0);
    CHECK(zero.omega_r_rad == 0.0);
    CHECK(zero.omega_z_rad == 0.0);

    const auto dbl =
        trap_from_power(cat, kG, 2.46e-3, 1e-6, 1150e-9, m);
    CHECK(dbl.depth_Hz == doctest::Approx(2.0 * tp.depth_Hz).epsilon(1e-12));
    CHECK(dbl.omega_r_rad ==
          doctest::Approx(std::sqrt(2.0) * tp.omega_r_rad).epsilon(1e-12));

    // anti-trapped state cannot form a trap of this kind
    CHECK_THROWS_AS(trap_from_power(cat, kP, 1e-3, 1e-6, 1150e-9, m), Error);
}

TEST_CASE("two-level catalog matches the closed form") {
    const double nu0 = 3.0e14, S = 1.7;
    Catalog cat = two_level(nu0, S);
    const HfState st{"1xa 3P0", 1, 1};
    const double w0 = 2.0 * pi * nu0;
    const double d2 =
        S * constants::dipole_au * constants::dipole_au;  // 2J+1 = 1
    Options opts = no_hf();
    for (double lam_nm : {400.0, 700.0, 900.0, 1100.0, 2500.0, 1e6}) {
        const double w = omega_of_nm(lam_nm);
        const double expect =
            2.0 * w0 * d2 / (3.0 * constants::hbar * (w0 * w0 - w * w));
        const auto a = alpha_components(cat, st, w, opts);
        CHECK(a.alpha0 ==
              doctest::Approx(expect).epsilon(1e-10));
        // F = 1/2: tensor part absent from the total at any angle
        CHECK(alpha_total(cat, st, w, 0.7, opts) ==
              doctest::Approx(a.alpha0).epsilon(1e-12));
    }
}

TEST_CASE("pole fencing and sign flip across an isolated resonance") {
    const double nu0 = 3.0e14;
    Catalog cat = two_level(nu0, 1.0);
    const HfState st{"1xa 3P0", 1, 1};
    Options opts = no_hf();
    opts.exclusion_halfwidth_rad = 2.0 * pi * 1e9;
    const double w0 = 2.0 * pi * nu0;
    const double edge = 2.0 * pi * 2e9;
    const double below = alpha_components(cat, st, w0 - edge, opts).alpha0;
    const double above = alpha_components(cat, st, w0 + edge, opts).alpha0;
    CHECK(below > 0.0);
    CHECK(above < 0.0);
    CHECK_THROWS_AS(alpha_components(cat, st, w0 + 0.1 * edge, opts), Error);
    // continuity on a pole-free interval: small steps, small changes
    double prev = alpha_components(cat, st, w0 * 0.5, opts).alpha0;
    for (int i = 1; i <= 50; ++i) {
        const double cur =
            alpha_components(cat, st, w0 * (0.5 + 0.004 * i), opts).alpha0;
        CHECK(std::abs(cur - prev) < 0.2 * std::abs(prev));
        prev = cur;
    }
}

TEST_CASE("angle factor and vector/tensor weights") {
    CHECK(tensor_angle_factor(std::acos(1.0 / std::sqrt(3.0))) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tensor_angle_factor(0.0) == doctest::Approx(1.0));
    CHECK(tensor_state_weight(1, 1) == 0.0);  // F = 1/2 has no tensor term

    // sphere average of (3 cos^2 t - 1)/2 vanishes
    const int n = 20000;
    double acc = 0.0, norm = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = pi * (i + 0.5) / n;
        acc += tensor_angle_factor(t) * std::sin(t);
        norm += std::sin(t);
    }
    CHECK(std::abs(acc / norm) < 1e-8);

    // total with the magic-angle factor reduces to the scalar part
    Catalog cat = full_catalog();
    const double w = omega_of_nm(1150.0);
    const auto a = alpha_components(cat, kG, w);
    CHECK(alpha_total(cat, kG, w, std::acos(1.0 / std::sqrt(3.0))) ==
          doctest::Approx(a.alpha0).epsilon(1e-12));

    // vector part is m_F-independent; its m_F/F energy weight is odd, so
    // the vector shift summed over an m_F -> -m_F pair cancels
    const auto ap = alpha_components(cat, {"1s2s 3S1", 3, 1}, w);
    const auto am = alpha_components(cat, {"1s2s 3S1", 3, -1}, w);
    CHECK(ap.alpha1 == doctest::Approx(am.alpha1).epsilon(1e-14));
    CHECK(ap.alpha1 * (0.5 / 1.5) + am.alpha1 * (-0.5 / 1.5) ==
          doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("hyperfine-resolved and collapsed sums agree") {
    Catalog cat = full_catalog();
    Options hf, jb;
    hf.path = SumPath::HyperfineResolved;
    jb.path = SumPath::LargeDetuning;

    // with no hyperfine splittings the two forms are identical (6j sum rules)
    Options hf0 = no_hf(), jb0 = no_hf();
    hf0.path = SumPath::HyperfineResolved;
    jb0.path = SumPath::LargeDetuning;
    for (double lam_nm : {600.0, 1013.0, 1150.0}) {
        const double w = omega_of_nm(lam_nm);
        const auto a = alpha_components(cat, kG, w, hf0);
        const auto b = alpha_components(cat, kG, w, jb0);
        CHECK(a.alpha0 == doctest::Approx(b.alpha0).epsilon(1e-10));
        CHECK(a.alpha1 == doctest::Approx(b.alpha1).epsilon(1e-9));
        CHECK(a.alpha2 == doctest::Approx(b.alpha2).epsilon(1e-9));
    }

    // with the real splittings, agreement within 1% at the path crossover:
    // detuning from the 1083-nm manifold equal to 100x its hyperfine spread
    const double nu0 = cat.level("1s2p 3P2").energy_Hz -
                       cat.level("1s2s 3S1").energy_Hz;
    const double spread = 2.153160e9 - 0.373270e9;
    const double w = 2.0 * pi * (nu0 - 100.0 * spread);
    const double ah = alpha_total(cat, kG, w, 0.0, hf);
    const double aj = alpha_total(cat, kG, w, 0.0, jb);
    CHECK(ah == doctest::Approx(aj).epsilon(0.01));
}

TEST_CASE("synthetic crossing matches the analytic root") {
    // two independent two-level systems with an analytic alpha_A = alpha_B
    Catalog cat;
    cat.add_level({"1xa", "3P0", 0, 0.0});
    cat.add_level({"1xb", "3P0", 0, 0.0});
    const double nuA = 3.0e14, nuB = 5.0e14, SA = 2.0, SB = 1.0;
    cat.add_level({"2xa", "3S1", 2, nuA});
    cat.add_level({"2xb", "3S1", 2, nuB});
    cat.add_line({"1xa 3P0", "2xa 3S1", SA, {}});
    cat.add_line({"1xb 3P0", "2xb 3S1", SB, {}});
    const double wA = 2.0 * pi * nuA, wB = 2.0 * pi * nuB;
    // 2 wA SA / (wA^2 - w^2) = 2 wB SB / (wB^2 - w^2)
    const double w2 = (wA * SA * wB * wB - wB * SB * wA * wA) /
                      (wA * SA - wB * SB);
    const double lam_expect = 2.0 * pi * constants::c / std::sqrt(w2);
    Options opts = no_hf();
    // the crossing sits above both resonances (wavelengths 999.3, 599.6 nm)
    const double lam = find_magic_wavelength(cat, {"1xa 3P0", 1, 1},
                                             {"1xb 3P0", 1, 1}, 250e-9,
                                             500e-9, 0.0, opts);
    CHECK(lam == doctest::Approx(lam_expect).epsilon(1e-6));
}

TEST_CASE("probe scattering rate") {
    const double Gamma = 2.0 * pi * 1.6e6;
    const double R = scattering_rate(10.0, -2.0 * pi * 10e6, Gamma);
    CHECK(R / (2.0 * pi) == doctest::Approx(48e3).epsilon(0.02));
    CHECK(scattering_rate(0.0, 1.0, Gamma) == 0.0);
    CHECK(scattering_rate(1e12, 0.0, Gamma) ==
          doctest::Approx(Gamma / 2.0).epsilon(1e-6));
    CHECK_THROWS_AS(scattering_rate(-1.0, 0.0, Gamma), Error);
}

TEST_CASE("two-photon rate rescaling") {
    CHECK(two_photon_rate_rescale(0.07, 40.0, -35e6, 40.0, -35e6) ==
          doctest::Approx(0.07).epsilon(1e-12));
    // the plain s^2/Delta^2 scaling gives ~5.4e-2 1/s for the probe settings
    CHECK(two_photon_rate_rescale(0.07, 40.0, -35e6, 10.0, -10e6) ==
          doctest::Approx(0.05359375).epsilon(1e-9));
    const double r1 = two_photon_rate_rescale(0.07, 40.0, -35e6, 20.0, -5e6);
    const double r2 = two_photon_rate_rescale(0.07, 40.0, -35e6, 10.0, -5e6);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(1e-12));
    CHECK_THROWS_AS(two_photon_rate_rescale(0.07, 40.0, 0.0, 10.0, -5e6),
                    Error);
}

TEST_CASE("wavelength curve drops fenced points and stays consistent") {
    Catalog cat = full_catalog();
    // fine grid straddling the 1083-nm pole; its exclusion windows are
    // ~0.04 nm half-width, so only a dense grid loses points to them
    const auto c =
        polarizability_curve(cat, kG, 1082e-9, 1085e-9, 3001, 0.0);
    CHECK(c.lambda_m.size() == c.alpha0.size());
    CHECK(c.lambda_m.size() == c.alpha1.size());
    CHECK(c.lambda_m.size() == c.alpha2.size());
    CHECK(c.lambda_m.size() == c.total.size());
    CHECK(c.lambda_m.size() < 3001);  // pole region removed
    CHECK(c.lambda_m.size() > 2000);
    for (size_t i = 1; i < c.lambda_m.size(); ++i)
        CHECK(c.lambda_m[i] > c.lambda_m[i - 1]);
    for (size_t i = 0; i < c.lambda_m.size(); ++i) {
        const double w = 2.0 * pi * constants::c / c.lambda_m[i];
        CHECK(c.total[i] ==
              doctest::Approx(alpha_total(cat, kG, w, 0.0)).epsilon(1e-12));
    }
}

TEST_CASE("argument validation") {
    Catalog cat = full_catalog();
    CHECK_THROWS_AS(alpha_components(cat, {"1s9q 3Q7", 1, 1}, 1e15), Error);
    CHECK_THROWS_AS(alpha_components(cat, {"1s2s 3S1", 7, 1}, 1e15), Error);
    CHECK_THROWS_AS(alpha_components(cat, {"1s2s 3S1", 1, 3}, 1e15), Error);
    // inside the exclusion window of the 1083-nm line
    const double nu0 = cat.level("1s2p 3P2").energy_Hz -
                       cat.level("1s2s 3S1").energy_Hz;
    CHECK_THROWS_AS(alpha_components(cat, kG, 2.0 * pi * nu0), Error);
}
