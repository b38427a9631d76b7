#include "paramnet/catalog.hpp"

#include <cmath>

#include "paramnet/errors.hpp"
#include "paramnet/scattering.hpp"

namespace paramnet {

namespace {

constexpr double half_pi = pi / 2.0;

ModeNetwork four_mode_skeleton(const AmpParams& p, const std::array<int, 4>& signs) {
    ModeNetwork net;
    const auto omegas = default_mode_frequencies(4);
    for (std::size_t i = 0; i < 4; ++i) {
        if (!(p.kappas[i] > 0.0)) throw DomainError("amp preset: kappas must be positive");
        net.modes.push_back(
            ModeSpec{"a" + std::to_string(i + 1), omegas[i], p.kappas[i], signs[i] < 0});
    }
    return net;
}

CouplingEdge edge(const ModeNetwork& net, std::size_t m, std::size_t n, CouplingKind kind,
                  double beta, double phase) {
    const double mag = beta * std::sqrt(net.modes[m].kappa * net.modes[n].kappa) / 2.0;
    return CouplingEdge{m, n, kind, mag, phase};
}

}  // namespace

double beta_from_gain(double g) {
    if (g < 1.0) throw DomainError("beta_from_gain: requires G >= 1");
    return std::sqrt((std::sqrt(g) - 1.0) / (std::sqrt(g) + 1.0));
}

double beta_from_conversion(double c) {
    if (!(c > 0.0) || c > 1.0) throw DomainError("beta_from_conversion: requires 0 < C <= 1");
    return (1.0 - std::sqrt(1.0 - c)) / std::sqrt(c);
}

double per_coupling_gain_for_forward(Family family, double g_fwd) {
    if (g_fwd < 1.0) throw DomainError("per_coupling_gain_for_forward: requires G_fwd >= 1");
    return family == Family::T ? g_fwd : g_fwd + 1.0;
}

std::vector<double> default_mode_frequencies(std::size_t n) {
    std::vector<double> omegas(n);
    for (std::size_t k = 0; k < n; ++k) omegas[k] = two_pi * (4.0 + 2.0 * k) * 1e9;
    return omegas;
}

double default_kappa() { return two_pi * 100e6; }

AmpParams default_amp_params(double g_refl, double conv_eff) {
    AmpParams p;
    p.g_refl = g_refl;
    p.conv_eff = conv_eff;
    p.kappas = {default_kappa(), default_kappa(), default_kappa(), default_kappa()};
    return p;
}

ModeNetwork build_T(const AmpParams& p) {
    if (p.g_refl < 1.0) throw DomainError("build_T: requires g_refl >= 1");
    const double bg = beta_from_gain(p.g_refl);
    const double bc = beta_from_conversion(p.conv_eff);

    ModeNetwork net = four_mode_skeleton(p, {+1, +1, +1, -1});
    net.edges = {
        edge(net, 0, 1, CouplingKind::Conversion, bc, +half_pi),
        edge(net, 0, 2, CouplingKind::Conversion, bc, -half_pi),
        edge(net, 1, 2, CouplingKind::Conversion, bc, +half_pi),
        edge(net, 0, 3, CouplingKind::Gain, bg, -half_pi),
        edge(net, 1, 3, CouplingKind::Gain, bg, -half_pi),
        edge(net, 2, 3, CouplingKind::Gain, bg, +half_pi),
    };
    return net;
}

ModeNetwork build_C(const AmpParams& p) {
    if (p.g_refl <= 1.0)
        throw DomainError("build_C: requires g_refl > 1 (gain-edge strength diverges at G = 1)");
    const double xi = (std::sqrt(p.g_refl) + 1.0) / std::sqrt(p.g_refl - 1.0);
    const double bc = beta_from_conversion(p.conv_eff);

    ModeNetwork net = four_mode_skeleton(p, {+1, -1, +1, -1});
    net.edges = {
        edge(net, 0, 1, CouplingKind::Gain, xi, +half_pi),
        edge(net, 0, 2, CouplingKind::Conversion, bc, -half_pi),
        edge(net, 0, 3, CouplingKind::Gain, xi, -half_pi),
        edge(net, 1, 2, CouplingKind::Gain, xi, -half_pi),
        edge(net, 1, 3, CouplingKind::Conversion, bc, +half_pi),
        edge(net, 2, 3, CouplingKind::Gain, xi, +half_pi),
    };
    return net;
}

ModeNetwork build_converter(double conv_eff, double kappa1, double kappa2) {
    if (!(kappa1 > 0.0) || !(kappa2 > 0.0)) throw DomainError("build_converter: kappas must be positive");
    const auto omegas = default_mode_frequencies(2);
    ModeNetwork net;
    net.modes = {ModeSpec{"a1", omegas[0], kappa1, false}, ModeSpec{"a2", omegas[1], kappa2, false}};
    net.edges = {edge(net, 0, 1, CouplingKind::Conversion, beta_from_conversion(conv_eff), +half_pi)};
    return net;
}

ModeNetwork build_squeezer(double g_refl, double kappa1, double kappa2) {
    if (!(kappa1 > 0.0) || !(kappa2 > 0.0)) throw DomainError("build_squeezer: kappas must be positive");
    const auto omegas = default_mode_frequencies(2);
    ModeNetwork net;
    net.modes = {ModeSpec{"a1", omegas[0], kappa1, false}, ModeSpec{"a2", omegas[1], kappa2, true}};
    net.edges = {edge(net, 0, 1, CouplingKind::Gain, beta_from_gain(g_refl), -half_pi)};
    return net;
}

ModeNetwork build_circulator3(const std::array<double, 3>& kappas) {
    for (double k : kappas)
        if (!(k > 0.0)) throw DomainError("build_circulator3: kappas must be positive");
    Matrix s = Matrix::Zero(3, 3);
    s(1, 0) = 1.0;
    s(2, 1) = 1.0;
    s(0, 2) = 1.0;
    const ConjugationSignature sig({+1, +1, +1});
    RealVector diag(3);
    for (int i = 0; i < 3; ++i) diag[i] = kappas[static_cast<std::size_t>(i)] / 2.0;
    const DampingMatrix sigma{diag};
    const auto m = synthesize_couplings(ScatteringMatrix{s, sig, 0.0}, sigma);
    ModeNetwork net = network_from_coupling_matrix(m, sigma, sig);
    const auto omegas = default_mode_frequencies(3);
    for (std::size_t i = 0; i < 3; ++i) net.modes[i].omega = omegas[i];
    return net;
}

ModeNetwork build_2pa(double g, double kappa1, double kappa2) {
    if (g < 0.0) throw DomainError("build_2pa: requires G >= 0");
    return build_squeezer(g + 1.0, kappa1, kappa2);
}

std::vector<PumpLine> pump_schedule(const ModeNetwork& net) {
    require_valid(net);
    std::vector<PumpLine> schedule;
    schedule.reserve(net.edges.size());
    for (const auto& e : net.edges) {
        const double wm = net.modes[e.m].omega;
        const double wn = net.modes[e.n].omega;
        PumpLine line;
        line.m = e.m;
        line.n = e.n;
        line.kind = e.kind;
        line.magnitude = e.magnitude;
        line.phase = e.phase;
        line.pump_frequency = e.kind == CouplingKind::Gain ? wm + wn : std::abs(wm - wn);
        schedule.push_back(line);
    }
    return schedule;
}

}  // namespace paramnet
