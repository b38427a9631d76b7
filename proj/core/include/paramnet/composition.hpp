#pragma once

#include <vector>

#include "paramnet/network.hpp"
#include "paramnet/scattering.hpp"

namespace paramnet {

/// Passive load on one port, |r| <= 1.
struct PortTermination {
    std::size_t port = 0;  // 0-based index
    Complex r;             // complex reflection coefficient
};

/// Standard load reduction over the terminated ports B:
///   S_eff = S_AA + S_AB R (I - S_BB R)^{-1} S_BA.
/// With all r = 0 this is exact block extraction. Throws UnstableLoop when
/// (I - S_BB R) is near-singular (self-oscillation onset).
ScatteringMatrix terminate(const ScatteringMatrix& s, const std::vector<PortTermination>& terms);

/// Redheffer-type star product: connects ports_a of `a` pairwise to ports_b
/// of `b` and returns the scattering matrix over all unconnected ports
/// (a's external ports first, then b's). Throws SignatureMismatch when a
/// connected pair joins an a-line to an a^dag-line, UnstableLoop on an
/// ill-conditioned connection loop.
ScatteringMatrix cascade(const ScatteringMatrix& a, const std::vector<std::size_t>& ports_a,
                         const ScatteringMatrix& b, const std::vector<std::size_t>& ports_b);

struct StabilityGrid {
    double delta_span = 10.0;  // in kappa_bar units
    int points = 4001;
};

/// Frequency-domain loop criterion: max over the grid of the spectral radius
/// of S_BB(delta) * R. Margin < 1 declares the terminated network stable.
double stability_margin(const ModeNetwork& net, const std::vector<PortTermination>& terms,
                        const StabilityGrid& grid = {});

}  // namespace paramnet
