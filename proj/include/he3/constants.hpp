#pragma once

namespace he3::constants {

// CODATA 2018 values, SI.
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double h = 6.62607015e-34;           // J s
inline constexpr double c = 2.99792458e8;             // m/s
inline constexpr double eps0 = 8.8541878128e-12;      // F/m
inline constexpr double mu_B = 9.2740100783e-24;      // J/T
inline constexpr double k_B = 1.380649e-23;           // J/K
inline constexpr double e_charge = 1.602176634e-19;   // C
inline constexpr double m_e = 9.1093837015e-31;       // kg
inline constexpr double a0 = 5.29177210903e-11;       // m
inline constexpr double E_h = 4.3597447222071e-18;    // J (hartree)
inline constexpr double Ry_inf_Hz = 3.2898419602508e15;  // Hz

// Atomic masses (kg).
inline constexpr double amu = 1.66053906660e-27;
inline constexpr double m_He3 = 3.0160293 * amu;
inline constexpr double m_He4 = 4.002602 * amu;
inline constexpr double m_Li6 = 6.0151228 * amu;
inline constexpr double m_Na23 = 22.9897693 * amu;

// Mass-corrected Rydberg for 3He: Ry(3He)/Ry_inf = 0.9998181118795.
inline constexpr double Ry_He3_ratio = 0.9998181118795;
inline constexpr double Ry_He3_Hz = Ry_inf_Hz * Ry_He3_ratio;

// Atomic unit of polarizability and of electric dipole.
inline constexpr double alpha_au = 1.64877727436e-41;  // C m^2/V
inline constexpr double dipole_au = e_charge * a0;     // C m

// 1 a.u. of C6 expressed in GHz um^6.
inline constexpr double C6_au_to_GHz_um6 = 1.44e-19;

// Unit conversions.
inline constexpr double cm1_to_Hz = 2.99792458e10;  // c in cm/s
inline constexpr double gauss_to_tesla = 1e-4;

}  // namespace he3::constants
