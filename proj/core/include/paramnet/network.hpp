#pragma once

#include <string>
#include <vector>

#include "paramnet/types.hpp"

namespace paramnet {

/// One port-coupled mode. kappa is the full amplitude-damping linewidth
/// kappa_n (rad/s); the damping matrix carries kappa_n/2.
struct ModeSpec {
    std::string name;
    double omega = 0.0;       // angular frequency, rad/s
    double kappa = 0.0;       // linewidth, rad/s
    bool conjugated = false;  // true if the mode enters the reduced basis as a^dag
};

enum class CouplingKind { Conversion, Gain };

/// Parametric coupling between modes m and n (indices into ModeNetwork::modes,
/// stored with m < n). Conversion couples like-signature modes (pump at
/// |omega_m - omega_n|), gain couples opposite-signature modes (pump at
/// omega_m + omega_n).
struct CouplingEdge {
    std::size_t m = 0;
    std::size_t n = 0;
    CouplingKind kind = CouplingKind::Conversion;
    double magnitude = 0.0;  // |g_mn|, rad/s
    double phase = 0.0;      // radians
};

/// An N-port N-mode parametrically coupled network; the single source of
/// truth for a device.
struct ModeNetwork {
    std::vector<ModeSpec> modes;
    std::vector<CouplingEdge> edges;

    std::size_t size() const { return modes.size(); }

    ConjugationSignature signature() const {
        std::vector<int> s;
        s.reserve(modes.size());
        for (const auto& m : modes) s.push_back(m.conjugated ? -1 : +1);
        return ConjugationSignature(std::move(s));
    }
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks every ModeNetwork invariant; returns an empty report iff valid.
ValidationReport validate_network(const ModeNetwork& net);

/// Throws DomainError listing all violations if the network is invalid.
void require_valid(const ModeNetwork& net);

}  // namespace paramnet
