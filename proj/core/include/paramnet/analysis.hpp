#pragma once

#include <optional>
#include <string>
#include <vector>

#include "paramnet/catalog.hpp"
#include "paramnet/scattering.hpp"

namespace paramnet {

/// Geometric mean of the mode linewidths; detunings are reported in units of
/// this scale.
double kappa_bar(const ModeNetwork& net);

/// Scattering matrices over a detuning grid. Grid values are dimensionless
/// delta = Delta / kappa_bar. Points where the solve is near-singular are
/// recorded, not fatal.
struct SweepResult {
    std::vector<double> grid;
    std::vector<ScatteringMatrix> matrices;
    std::vector<bool> near_singular;
    double kappa_bar = 0.0;  // rad/s
};

SweepResult sweep(const ModeNetwork& net, double delta_min, double delta_max, int points);

/// Closed-form transfer functions for the uniform-linewidth, perfect-conversion
/// amplifiers, as polynomials in the normalized detuning delta = Delta/kappa.
/// These are the analytic oracle for the numerical pipeline; G is the
/// per-coupling gain.
struct ClosedFormPoint {
    Complex s11;  // = s22
    Complex s12;
    Complex s21;
};

ClosedFormPoint closed_form_T(double delta, double g);
ClosedFormPoint closed_form_C(double delta, double g);

/// Noise figures of a directional 4-port network at a given detuning.
NoiseReport noise_report(const ModeNetwork& net, double delta);

/// Bandwidth conditions: |S11|^2, |S22|^2 <= match_max; |S12|^2 <= 1/G;
/// |S21|^2 >= G/2, with G the forward photon gain at resonance. Conditions
/// can be disabled individually (a reflection amplifier fails matching at
/// resonance by construction, and is compared on the gain condition alone).
struct BandwidthCriteria {
    std::optional<double> match_max = 0.01;
    bool check_isolation = true;
    bool check_gain = true;
    double g_fwd = 0.0;

    double delta_span = 2.0;  // grid over [-span, span] * kappa_bar
    int grid_points = 801;
    double refine_tol = 1e-6;
};

struct ConditionBand {
    std::string condition;               // "match" | "isolation" | "gain"
    Interval main;                       // maximal interval containing delta = 0
    std::vector<Interval> disconnected;  // other satisfying regions (grid resolution)
};

struct BandwidthReport {
    std::vector<ConditionBand> per_condition;
    Interval overall;   // intersection of the main intervals
    double gbp = 0.0;   // gain-interval width * sqrt(g_fwd), in kappa_bar units
    double g_fwd = 0.0;
    double kappa_bar = 0.0;
};

/// Per-condition maximal intervals around resonance (dense grid + bisection
/// refinement). Throws ConditionFailsAtResonance if an enabled condition is
/// violated at delta = 0, DomainError if criteria.g_fwd is not the measured
/// |S21(0)|^2 within 1%.
BandwidthReport bandwidth(const ModeNetwork& net, const BandwidthCriteria& criteria);

/// Resonant scattering powers versus per-coupling gain at fixed conversion
/// efficiency.
struct GainSweepRow {
    double g = 0.0;  // per-coupling gain
    double s11_sq = 0.0;
    double s22_sq = 0.0;
    double s12_sq = 0.0;
    double s21_sq = 0.0;
    bool near_singular = false;
};

std::vector<GainSweepRow> gain_sweep(Family family, const std::vector<double>& g_list,
                                     double conv_eff);

}  // namespace paramnet
