#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "he3/spinops.hpp"

namespace he3::zeeman {

enum class Scheme {
    GeneralLSI,      // (m_L, m_S, m_I) product basis, composite S
    IntermediateJI,  // (m_I, m_J) basis within one fine-structure level
    HeP2Effective,   // 1s2p manifold of He with explicit (m_L, m_s1, m_s2, m_I)
};

// Constants for one atomic level treated by one of the three schemes.
// All coefficient energies in Hz.
struct SpinSystem {
    Scheme scheme = Scheme::GeneralLSI;
    std::string name;

    int tL = 0, tS = 0, tI = 0;  // GeneralLSI / HeP2Effective
    int tJ = 0;                  // IntermediateJI

    double gL = 0, gS = 0, gI = 0;  // GeneralLSI / HeP2Effective
    double gJ = 0;                  // IntermediateJI (gI shared)

    double cf_Hz = 0, chf1_Hz = 0, chf2_Hz = 0;  // GeneralLSI
    double chf_Hz = 0;                           // IntermediateJI

    // HeP2Effective hyperfine constants and manifold offsets.
    double C_Hz = 0, Cp_Hz = 0, D_Hz = 0, E_Hz = 0, Ep_Hz = 0;
    double EJ2_Hz = 0, EJ1_Hz = 0, EJ0_Hz = 0;  // triplet fine structure
    double Esinglet_Hz = 0;                     // exchange offset of the 1P1 block
};

// Canonical parameter sets (constants quoted in Hz).
SpinSystem he3_2s3S();    // metastable ground level, L=0 S=1 I=1/2
SpinSystem he3_2p3P();    // 1s2p manifold, effective-Hamiltonian scheme
SpinSystem li6_2s();      // L=0 S=1/2 I=1
SpinSystem li6_2p();      // L=1 S=1/2 I=1
SpinSystem na23_3s();     // J=1/2 intermediate scheme, I=3/2
SpinSystem na23_3p12();   // J=1/2
SpinSystem na23_3p32();   // J=3/2

// Basis kets the Hamiltonian is written in (order fixed and documented by
// ProductBasis). GeneralLSI: slots (L, S, I); HeP2Effective: (L, s1, s2, I);
// IntermediateJI: slots (J, I).
spinops::ProductBasis basis_of(const SpinSystem& sys);

// Hamiltonian in Hz at field B (gauss), B along z. Hermitian (real symmetric).
Eigen::MatrixXd build_hamiltonian(const SpinSystem& sys, double B_G);

// Adiabatic label of a branch, identified at B=0.
struct StateLabel {
    int tF = 0;   // twice F
    int tmF = 0;  // twice m_F
    bool operator==(const StateLabel&) const = default;
};

struct EigenSystem {
    std::vector<double> energies_Hz;  // ascending
    Eigen::MatrixXd vectors;          // columns, gauge: largest component > 0
    std::vector<StateLabel> labels;   // only set when labeled from B=0
};

// Diagonalize at one field. Deterministic gauge.
EigenSystem eigensystem(const SpinSystem& sys, double B_G);

// Eigensystem at B with branch order and labels carried over adiabatically
// from the B=0 spectrum.
EigenSystem adiabatic_eigensystem(const SpinSystem& sys, double B_G);

struct ZeemanMap {
    std::vector<double> B_G;
    // energies(branch, i) follows branch `branch` adiabatically across B_G[i];
    // branch order and labels fixed by the B=0 spectrum (ascending).
    Eigen::MatrixXd energies_Hz;
    std::vector<StateLabel> labels;
};

// Breit-Rabi map over an increasing grid, maximal-overlap continuation
// seeded from B=0.
ZeemanMap zeeman_map(const SpinSystem& sys, const std::vector<double>& B_G);

// Energy of the branch that connects adiabatically to |F, mF> at B=0.
double adiabatic_energy(const SpinSystem& sys, StateLabel state, double B_G);

// Field in [Bmin, Bmax] where d(E_A - E_B)/dB vanishes.
double find_magic_field(const SpinSystem& sys, StateLabel a, StateLabel b,
                        double Bmin_G, double Bmax_G);

}  // namespace he3::zeeman
