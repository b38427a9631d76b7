#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "paramnet/catalog.hpp"
#include "paramnet/errors.hpp"
#include "paramnet/scattering.hpp"
#include "support/generators.hpp"

using namespace paramnet;
using testsupport::NetworkGen;

namespace {

ModeNetwork single_mode(double kappa) {
    ModeNetwork net;
    net.modes = {ModeSpec{"a1", two_pi * 4e9, kappa, false}};
    return net;
}

Matrix model_matrix_T(double g, double kappa) {
    const double eta = std::sqrt(g - 1.0) / (std::sqrt(g) + 1.0);
    Matrix m(4, 4);
    m << 0, 1, -1, -eta,
        -1, 0, 1, -eta,
        1, -1, 0, eta,
        -eta, -eta, eta, 0;
    return 0.5 * kappa * m;
}

Matrix model_matrix_C(double g, double kappa) {
    const double xi = (std::sqrt(g) + 1.0) / std::sqrt(g - 1.0);
    Matrix m(4, 4);
    m << 0, xi, -1, -xi,
        xi, 0, -xi, 1,
        1, -xi, 0, xi,
        -xi, -1, xi, 0;
    return 0.5 * kappa * m;
}

double wrapped_phase_diff(double a, double b) {
    double d = std::fmod(a - b + pi, two_pi);
    if (d < 0) d += two_pi;
    return std::abs(d - pi);
}

}  // namespace

TEST_CASE("damping matrix is kappa/2 in mode order") {
    CHECK(damping_matrix(single_mode(2.0)).diag[0] == 1.0);

    AmpParams p = default_amp_params(4.0);
    p.kappas = {1.0, 1.0, 1.0, 1.0};
    const auto d4 = damping_matrix(build_T(p));
    for (int i = 0; i < 4; ++i) CHECK(d4.diag[i] == 0.5);

    p.kappas = {1.0, 2.0, 3.0, 4.0};
    const auto dm = damping_matrix(build_T(p));
    CHECK(dm.diag[0] == 0.5);
    CHECK(dm.diag[1] == 1.0);
    CHECK(dm.diag[2] == 1.5);
    CHECK(dm.diag[3] == 2.0);
}

TEST_CASE("dynamical matrix: no edges, zero detuning") {
    ModeNetwork net;
    net.modes = {ModeSpec{"a1", 1.0, 1.0, false}, ModeSpec{"a2", 2.0, 1.0, false}};
    CHECK(dynamical_matrix(net, 0.0).entries.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dynamical matrix reproduces the T-amp model matrix") {
    for (double g : {10.0, 100.0}) {
        AmpParams p = default_amp_params(g);
        p.kappas = {1.0, 1.0, 1.0, 1.0};
        const auto m = dynamical_matrix(build_T(p), 0.0);
        const Matrix target = model_matrix_T(g, 1.0);
        CHECK((m.entries - target).cwiseAbs().maxCoeff() < 1e-15);
        // spot value: entry (1,4) = -(sqrt(G-1)/(sqrt(G)+1)) * kappa/2
        CHECK(std::abs(m.entries(0, 3) - Complex(-std::sqrt(g - 1.0) / (std::sqrt(g) + 1.0) / 2.0, 0)) <
              1e-15);
    }
}

TEST_CASE("dynamical matrix reproduces the C-amp model matrix") {
    AmpParams p = default_amp_params(101.0);
    p.kappas = {1.0, 1.0, 1.0, 1.0};
    const auto m = dynamical_matrix(build_C(p), 0.0);
    CHECK((m.entries - model_matrix_C(101.0, 1.0)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("every reduced row carries -i*delta, conjugated or not") {
    auto net = build_squeezer(9.0, 1.0, 1.0);  // mode 2 conjugated
    const auto m = dynamical_matrix(net, 0.3);
    CHECK(m.entries(0, 0) == Complex(0.0, -0.3));
    CHECK(m.entries(1, 1) == Complex(0.0, -0.3));
}

TEST_CASE("single mode reflects with unit magnitude at any detuning") {
    const auto net = single_mode(1.0);
    for (double d : {-3.0, -0.4, 0.0, 0.7, 5.0}) {
        const auto s = scattering(net, d);
        CHECK(std::abs(std::abs(s.entries(0, 0)) - 1.0) < 1e-14);
    }
}

TEST_CASE("two-mode converter at beta = 1 converts perfectly") {
    const auto net = build_converter(1.0, 1.0, 1.0);
    const auto s = scattering(net, 0.0);
    CHECK(std::abs(std::abs(s.entries(1, 0)) - 1.0) < 1e-14);
    CHECK(std::abs(s.entries(0, 0)) < 1e-14);
}

TEST_CASE("T-amp preset hits its target forward gain") {
    const auto net = build_T(default_amp_params(100.0));
    const auto s = scattering(net, 0.0);
    CHECK(std::norm(s.entries(1, 0)) == Catch::Approx(100.0).epsilon(1e-12));
    CHECK(std::abs(s.entries(0, 0)) < 1e-10);
    CHECK(std::abs(s.entries(1, 1)) < 1e-10);
    CHECK(std::abs(s.entries(0, 1)) < 1e-10);
    CHECK(std::abs(std::abs(s.entries(0, 2)) - 1.0) < 1e-10);
    CHECK(std::norm(s.entries(1, 3)) == Catch::Approx(99.0).epsilon(1e-12));
}

TEST_CASE("synthesis: identity target needs no couplings") {
    ScatteringMatrix s;
    s.entries = Matrix::Identity(3, 3);
    s.signature = ConjugationSignature({+1, +1, +1});
    RealVector diag(3);
    diag.setConstant(0.5);
    const auto m = synthesize_couplings(s, DampingMatrix{diag});
    CHECK(m.entries.cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("synthesis: minimal T matrix yields the model coupling matrix") {
    ScatteringMatrix s;
    s.entries = Matrix::Zero(4, 4);
    const double g = 100.0;  // per-coupling gain; forward gain g, idler g-1
    s.entries(0, 2) = 1.0;
    s.entries(1, 0) = std::sqrt(g);
    s.entries(1, 3) = std::sqrt(g - 1.0);
    s.entries(2, 1) = 1.0;
    s.entries(3, 0) = std::sqrt(g - 1.0);
    s.entries(3, 3) = std::sqrt(g);
    s.signature = ConjugationSignature({+1, +1, +1, -1});
    RealVector diag(4);
    diag.setConstant(0.5);
    const auto m = synthesize_couplings(s, DampingMatrix{diag});
    CHECK((m.entries - model_matrix_T(g, 1.0)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("synthesis rejects targets with an eigenvalue at -1") {
    ScatteringMatrix s;
    s.entries = -Matrix::Identity(2, 2);
    s.signature = ConjugationSignature({+1, +1});
    RealVector diag(2);
    diag.setConstant(0.5);
    CHECK_THROWS_AS(synthesize_couplings(s, DampingMatrix{diag}), NearSingular);
}

TEST_CASE("network recovery: zero matrix has no edges") {
    DynamicalMatrix m{Matrix::Zero(3, 3), 0.0};
    RealVector diag(3);
    diag.setConstant(0.5);
    const auto net = network_from_coupling_matrix(m, DampingMatrix{diag},
                                                  ConjugationSignature({+1, +1, +1}));
    CHECK(net.edges.empty());
}

TEST_CASE("network recovery: C-amp model matrix gives the six table couplings") {
    const double g = 101.0;
    const double xi = (std::sqrt(g) + 1.0) / std::sqrt(g - 1.0);
    DynamicalMatrix m{model_matrix_C(g, 1.0), 0.0};
    RealVector diag(4);
    diag.setConstant(0.5);
    const auto net = network_from_coupling_matrix(m, DampingMatrix{diag},
                                                  ConjugationSignature({+1, -1, +1, -1}));
    REQUIRE(net.edges.size() == 6);

    auto find_edge = [&](std::size_t a, std::size_t b) {
        for (const auto& e : net.edges)
            if (e.m == a && e.n == b) return e;
        FAIL("edge not found");
        return CouplingEdge{};
    };
    // conversion pair (1,3): amplitude kappa/2, phase -pi/2
    auto e13 = find_edge(0, 2);
    CHECK(e13.kind == CouplingKind::Conversion);
    CHECK(e13.magnitude == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(wrapped_phase_diff(e13.phase, -pi / 2) < 1e-12);

    auto e12 = find_edge(0, 1);
    CHECK(e12.kind == CouplingKind::Gain);
    CHECK(e12.magnitude == Catch::Approx(0.5 * xi).epsilon(1e-12));
    CHECK(wrapped_phase_diff(e12.phase, pi / 2) < 1e-12);

    auto e34 = find_edge(2, 3);
    CHECK(e34.kind == CouplingKind::Gain);
    CHECK(wrapped_phase_diff(e34.phase, pi / 2) < 1e-12);

    CHECK(find_edge(1, 3).kind == CouplingKind::Conversion);
}

TEST_CASE("network recovery rejects broken symmetry") {
    Matrix m = model_matrix_T(9.0, 1.0);
    m(1, 0) *= 1.5;
    RealVector diag(4);
    diag.setConstant(0.5);
    CHECK_THROWS_AS(network_from_coupling_matrix(DynamicalMatrix{m, 0.0}, DampingMatrix{diag},
                                                 ConjugationSignature({+1, +1, +1, -1})),
                    InconsistentSymmetry);
}

TEST_CASE("round trip: network -> M -> network") {
    NetworkGen gen(0x5eed0001);
    for (int trial = 0; trial < 25; ++trial) {
        const auto net = gen.next();
        const auto m = dynamical_matrix(net, 0.0);
        const auto sigma = damping_matrix(net);
        const auto back = network_from_coupling_matrix(m, sigma, net.signature());
        REQUIRE(back.edges.size() == net.edges.size());
        for (std::size_t k = 0; k < net.edges.size(); ++k) {
            // generator emits edges in (m,n) sorted order, as does recovery
            const auto& a = net.edges[k];
            const auto& b = back.edges[k];
            CHECK(a.m == b.m);
            CHECK(a.n == b.n);
            CHECK(a.kind == b.kind);
            CHECK(b.magnitude == Catch::Approx(a.magnitude).margin(1e-12));
            CHECK(wrapped_phase_diff(a.phase, b.phase) < 1e-9);
        }
    }
}

TEST_CASE("round trip: S -> M -> S and M -> S -> M") {
    NetworkGen gen(0x5eed0002);
    for (int trial = 0; trial < 25; ++trial) {
        const auto net = gen.next();
        const auto sigma = damping_matrix(net);
        const auto s = scattering(net, 0.0);
        const auto m = synthesize_couplings(s, sigma);
        CHECK((m.entries - dynamical_matrix(net, 0.0).entries).cwiseAbs().maxCoeff() < 1e-9);

        const auto net2 = network_from_coupling_matrix(m, sigma, net.signature());
        const auto s2 = scattering(net2, 0.0);
        CHECK((s2.entries - s.entries).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("para-unitarity holds across random networks and detunings") {
    NetworkGen gen(0x5eed0003);
    const auto probes = testsupport::probe_detunings();
    for (int trial = 0; trial < 40; ++trial) {
        const auto net = gen.next();
        const double kb = kappa_bar(net);
        for (double d : probes) {
            const auto s = scattering(net, d * kb);
            CHECK(check_paraunitary(s) < 1e-10);
        }
    }
}

TEST_CASE("symplectic residual vanishes at resonance for random networks") {
    NetworkGen gen(0x5eed0004);
    for (int trial = 0; trial < 40; ++trial) {
        const auto net = gen.next();
        const auto gs = generalized_scattering(scattering(net, 0.0));
        CHECK(check_symplectic(gs) < 1e-10);
    }
}

TEST_CASE("zero-coupling limit: unit reflections everywhere") {
    ModeNetwork net;
    for (int i = 0; i < 3; ++i)
        net.modes.push_back(ModeSpec{"a" + std::to_string(i + 1), two_pi * (4e9 + i * 2e9),
                                     two_pi * (50e6 + 20e6 * i), false});
    for (double d : {-1.0, 0.0, 0.3, 2.0}) {
        const auto s = scattering(net, d * kappa_bar(net));
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(std::abs(s.entries(i, i)) - 1.0) < 1e-12);
            for (int j = 0; j < 3; ++j)
                if (i != j) CHECK(std::abs(s.entries(i, j)) == 0.0);
        }
    }
}

TEST_CASE("generalized scattering of a 1x1 identity is the 2x2 identity") {
    ScatteringMatrix s;
    s.entries = Matrix::Identity(1, 1);
    s.signature = ConjugationSignature({+1});
    const auto gs = generalized_scattering(s);
    CHECK((gs.entries - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(check_symplectic(gs) == 0.0);
}

TEST_CASE("check_symplectic flags a corrupted matrix") {
    auto net = build_T(default_amp_params(25.0));
    auto s = scattering(net, 0.0);
    s.entries(1, 0) *= 1.1;
    CHECK(check_symplectic(generalized_scattering(s)) > 0.01);
    CHECK(check_paraunitary(s) > 0.01);
}

TEST_CASE("unitary permutation with all-plus signature is para-unitary") {
    ScatteringMatrix s;
    s.entries = Matrix::Zero(3, 3);
    s.entries(1, 0) = 1.0;
    s.entries(2, 1) = 1.0;
    s.entries(0, 2) = 1.0;
    s.signature = ConjugationSignature({+1, +1, +1});
    CHECK(check_paraunitary(s) == 0.0);
}

TEST_CASE("scattering raises NearSingular at the oscillation threshold") {
    // squeezer driven exactly at beta = 1
    auto net = build_squeezer(4.0, 1.0, 1.0);
    net.edges[0].magnitude = 0.5;  // beta = 1: (Sigma + M) singular at delta = 0
    CHECK_THROWS_AS(scattering(net, 0.0), NearSingular);
}
