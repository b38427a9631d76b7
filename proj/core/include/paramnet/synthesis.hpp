#pragma once

#include <array>
#include <string>

#include "paramnet/scattering.hpp"
#include "paramnet/types.hpp"

namespace paramnet {

// General solution families for 4-port fully directional phase-preserving
// amplifiers. Port 1 is the input, port 2 the output; directionality imposes
// S11 = S12 = S22 = 0 with |S21|^2 > 1. Two mode bases admit solutions:
//
//   T family: basis (a1, a2, a3, a4^dag),      signature (+,+,+,-)
//   C family: basis (a1, a2^dag, a3, a4^dag),  signature (+,-,+,-)
//
// Each family is parameterized by (G1, G2, alpha1) plus phases; alpha2 is
// never free, it is fixed by the para-unitarity constraint.

enum class Family { T, C };

struct GeneralFamilyParams {
    double g1 = 1.0;      // |S21|^2, >= 1
    double g2 = 0.0;      // secondary gain parameter, >= 0
    double alpha1 = 0.0;  // |S33|^2, >= 0
    std::array<double, 6> thetas{};  // theta_1..theta_6
    std::array<double, 2> phis{};    // phi_1, phi_2
    Family family = Family::T;
};

enum class FeasibilityStatus { Feasible, Infeasible, CirculatorOnly };

struct FeasibilityVerdict {
    ConjugationSignature basis;
    FeasibilityStatus status = FeasibilityStatus::Infeasible;
    std::string witness;  // violated relation, or the certificate residual
};

struct NoiseReport {
    double n_ba = 0.0;   // photons sent back toward the source; 1/2 = vacuum floor
    double n_add = 0.0;  // added noise referred to the input; 1/2 = quantum limit
    double delta = 0.0;  // detuning of evaluation, rad/s
};

/// Solves the family constraint for alpha2:
///   T: sqrt((a1 + G1 G2)(a2 - G1(G2+1))) = sqrt(a1 a2)
///   C: sqrt((a1 + G1(G2+1))(a2 - G1 G2)) = sqrt(a1 a2)
/// Throws UnsolvableLimit for the T family at G2 = 0 with alpha1 > 0.
double derive_alpha2(const GeneralFamilyParams& p);

/// Full 4x4 family matrix with phases applied; para-unitary by construction.
/// Throws DomainError for inconsistent parameters (negative radicand beyond
/// -1e-12, or a phase assignment violating the binding constraint).
ScatteringMatrix general_family_S(const GeneralFamilyParams& p);

/// Minimal forms, parameterized by the forward-idler gain G >= 0:
///   C: rows [0,0,1,0], [sqrt(G),0,0,sqrt(G+1)], [sqrt(G+1),0,0,sqrt(G)], [0,1,0,0]
///   T: rows [0,0,1,0], [sqrt(G+1),0,0,sqrt(G)], [0,1,0,0], [sqrt(G),0,0,sqrt(G+1)]
ScatteringMatrix minimal_S(Family family, double g);

/// Screens a 4-mode basis (s1 = +1) against the directional zero pattern
/// using the column-1/column-2 diagonal para-unitarity relations, plus the
/// unitary argument for the all-plus basis. Feasible bases are certified by
/// constructing a family solution.
FeasibilityVerdict basis_feasibility(const ConjugationSignature& sig);

/// N^ba = 1/2 sum_{p=3,4} |S1p|^2, N^add = 1/2 sum_{p=3,4} |S2p|^2 / |S21|^2,
/// for a directional 4-port matrix. Throws DegenerateGain if |S21| < 1e-9.
NoiseReport noise_figures_general(const ScatteringMatrix& s);

}  // namespace paramnet
