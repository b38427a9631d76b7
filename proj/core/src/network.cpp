#include "paramnet/network.hpp"

#include <set>
#include <sstream>

#include "paramnet/errors.hpp"

namespace paramnet {

ValidationReport validate_network(const ModeNetwork& net) {
    ValidationReport report;
    auto fail = [&report](const std::string& msg) { report.violations.push_back(msg); };

    std::set<std::string> names;
    for (std::size_t i = 0; i < net.modes.size(); ++i) {
        const auto& m = net.modes[i];
        if (m.name.empty()) fail("mode " + std::to_string(i + 1) + " has an empty name");
        if (!names.insert(m.name).second) fail("duplicate mode name '" + m.name + "'");
        if (!(m.omega > 0.0)) fail("mode '" + m.name + "' requires omega > 0");
        if (!(m.kappa > 0.0)) fail("mode '" + m.name + "' requires kappa > 0");
    }
    if (!net.modes.empty() && net.modes.front().conjugated)
        fail("mode 1 must be unconjugated (s1 = +1 convention)");

    const auto sig = net.signature();
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& e : net.edges) {
        if (e.m >= net.size() || e.n >= net.size()) {
            std::ostringstream os;
            os << "edge (" << e.m + 1 << "," << e.n + 1 << ") references a missing mode";
            fail(os.str());
            continue;
        }
        std::ostringstream label;
        label << "edge (" << e.m + 1 << "," << e.n + 1 << ")";
        if (e.m == e.n) {
            fail(label.str() + " couples a mode to itself");
            continue;
        }
        auto key = std::minmax(e.m, e.n);
        if (!pairs.insert(key).second) fail("duplicate " + label.str());
        if (e.magnitude < 0.0) fail(label.str() + " has negative magnitude");

        const int product = sig[e.m] * sig[e.n];
        if (e.kind == CouplingKind::Gain && product != -1)
            fail(label.str() + ": gain edge requires opposite signatures");
        if (e.kind == CouplingKind::Conversion && product != +1)
            fail(label.str() + ": conversion edge requires equal signatures");
    }
    return report;
}

void require_valid(const ModeNetwork& net) {
    const auto report = validate_network(net);
    if (report.ok()) return;
    std::string msg = "invalid network:";
    for (const auto& v : report.violations) msg += " [" + v + "]";
    throw DomainError(msg);
}

}  // namespace paramnet
