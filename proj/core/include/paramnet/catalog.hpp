#pragma once

#include <array>
#include <vector>

#include "paramnet/network.hpp"
#include "paramnet/synthesis.hpp"

namespace paramnet {

// Concrete device builders. Coupling strengths are written as
// g = beta * sqrt(kappa_m kappa_n) / 2; beta = 1 is perfect conversion for a
// converter pair and the oscillation threshold for a squeezer pair.

struct AmpParams {
    double g_refl = 1.0;             // per-coupling standalone reflection photon gain G >= 1
    double conv_eff = 1.0;           // per-coupling standalone conversion efficiency C in (0,1]
    std::array<double, 4> kappas{};  // linewidths, rad/s
};

/// One parametric drive line: pump at |omega_m - omega_n| (conversion) or
/// omega_m + omega_n (gain).
struct PumpLine {
    std::size_t m = 0;
    std::size_t n = 0;
    CouplingKind kind = CouplingKind::Conversion;
    double magnitude = 0.0;       // rad/s
    double phase = 0.0;           // radians
    double pump_frequency = 0.0;  // Omega_mn, rad/s
};

/// beta with standalone reflection amplitude gain (1+beta^2)/(1-beta^2) = sqrt(G).
double beta_from_gain(double g);

/// beta <= 1 with standalone transmission photon efficiency 4 beta^2/(1+beta^2)^2 = C.
double beta_from_conversion(double c);

/// Per-coupling gain that yields forward photon gain g_fwd at conv_eff = 1:
/// g_fwd for the T-amp, g_fwd + 1 for the C-amp.
double per_coupling_gain_for_forward(Family family, double g_fwd);

/// Default preset mode frequencies: omega/2pi = 4, 6, 8, ... GHz.
std::vector<double> default_mode_frequencies(std::size_t n);
/// Default preset linewidth: kappa/2pi = 100 MHz.
double default_kappa();
AmpParams default_amp_params(double g_refl, double conv_eff = 1.0);

/// T-amp: conversion edges (1,2),(1,3),(2,3); gain edges (1,4),(2,4),(3,4);
/// signature (+,+,+,-). At conv_eff = 1 the coupling matrix is the model
/// matrix M_T exactly, and scattering at resonance is the minimal T matrix
/// with forward photon gain g_refl.
ModeNetwork build_T(const AmpParams& params);

/// C-amp: conversion edges (1,3),(2,4); gain edges (1,2),(1,4),(2,3),(3,4);
/// signature (+,-,+,-). Gain-edge strength (sqrt(G)+1)/sqrt(G-1) *
/// sqrt(kappa_m kappa_n)/2 exceeds the standalone threshold by design;
/// stability is a network property. Requires g_refl > 1. Forward photon gain
/// at resonance is g_refl - 1 for conv_eff = 1.
ModeNetwork build_C(const AmpParams& params);

/// Two-mode converter with standalone transmission efficiency C.
ModeNetwork build_converter(double conv_eff, double kappa1, double kappa2);

/// Two-mode squeezer with reflection photon gain G (transmission G-1).
ModeNetwork build_squeezer(double g_refl, double kappa1, double kappa2);

/// Ideal 3-port circulator (|S21|=|S32|=|S13|=1), synthesized from the cyclic
/// permutation matrix through the inverse coupling map.
ModeNetwork build_circulator3(const std::array<double, 3>& kappas);

/// 2-port reference amplifier: amplitude sqrt(G+1) in reflection, sqrt(G) in
/// transmission.
ModeNetwork build_2pa(double g, double kappa1, double kappa2);

/// One pump line per edge; magnitude and phase copied from the edge,
/// frequency from the kind rule.
std::vector<PumpLine> pump_schedule(const ModeNetwork& net);

}  // namespace paramnet
