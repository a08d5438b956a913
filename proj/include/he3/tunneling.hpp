#pragma once

#include <vector>

namespace he3::tunneling {

// Two Gaussian-beam tweezers separated by d along x.
struct DoubleWellSpec {
    double lambda_m = 0.0;
    double NA = 0.0;     // when > 0, waist = 0.61 lambda / NA
    double w0_m = 0.0;   // explicit waist (used when NA == 0)
    double V0_Hz = 0.0;  // per-tweezer peak depth, positive
    double d_m = 0.0;    // tweezer separation
    double mass_kg = 0.0;

    enum class Sign { Red, Blue };
    // Trapping sign. The blue case is the inverted ("anti-tweezer")
    // intensity profile; its uniform bright background is a constant
    // offset and is dropped, leaving the same two-well shape.
    Sign sign = Sign::Red;

    // Finite-difference grid: box 5.6 d x 4.2 w0 x 4.6 z_R.
    int nx = 161, ny = 97, nz = 97;
    double box_x = 5.6, box_y = 4.2, box_z = 4.6;

    double waist_m() const;
    double rayleigh_m() const;
    double recoil_Hz() const;  // E_R / h = h / (2 m lambda^2)
};

// Double-well dipole potential in Hz; symmetric under x -> -x.
double potential(const DoubleWellSpec& spec, double x, double y, double z);

struct SpectrumResult {
    std::vector<double> E_Hz;       // sorted ascending
    std::vector<double> residual;   // relative eigenpair residuals
    std::vector<int> parity;        // +1 even / -1 odd under x -> -x
    double J_Hz = 0.0;              // (E1 - E0) / 2
    double barrier_Hz = 0.0;        // potential at the inter-well saddle
    bool merged = false;            // barrier below E1: J not meaningful
    int nx = 0, ny = 0, nz = 0;     // grid used
    double dx_m = 0.0, dy_m = 0.0, dz_m = 0.0;
};

// k lowest eigenpairs (k <= 4) of the discretized 3D Hamiltonian, using
// x-parity splitting and a two-pass Lanczos iteration.
SpectrumResult lowest_eigenpairs(const DoubleWellSpec& spec, int k = 2);

struct JMapEntry {
    double V0_Hz = 0.0, d_m = 0.0, J_Hz = 0.0;
    bool merged = false;
};

std::vector<JMapEntry> j_map(const DoubleWellSpec& base,
                             const std::vector<double>& V0_Hz,
                             const std::vector<double>& d_m);

// Lowest k eigenvalues (Hz) of a 1D potential sampled on a uniform grid,
// via the same Lanczos core as the 3D solver (Dirichlet boundaries).
std::vector<double> lowest_eigen_1d(const std::vector<double>& V_Hz,
                                    double dx_m, double mass_kg, int k);

}  // namespace he3::tunneling
