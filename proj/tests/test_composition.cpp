#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "paramnet/analysis.hpp"
#include "paramnet/composition.hpp"
#include "paramnet/errors.hpp"
#include "support/generators.hpp"

using namespace paramnet;
using testsupport::NetworkGen;

namespace {

ScatteringMatrix ideal_circulator3() {
    ScatteringMatrix s;
    s.entries = Matrix::Zero(3, 3);
    s.entries(1, 0) = 1.0;
    s.entries(2, 1) = 1.0;
    s.entries(0, 2) = 1.0;
    s.signature = ConjugationSignature({+1, +1, +1});
    return s;
}

}  // namespace

TEST_CASE("matched loads reduce to exact block extraction") {
    const auto net = build_T(default_amp_params(100.0));
    const auto s = scattering(net, 0.4 * kappa_bar(net));
    const auto reduced = terminate(s, {{2, 0.0}, {3, 0.0}});
    REQUIRE(reduced.size() == 2);
    CHECK(reduced.entries(0, 0) == s.entries(0, 0));
    CHECK(reduced.entries(0, 1) == s.entries(0, 1));
    CHECK(reduced.entries(1, 0) == s.entries(1, 0));
    CHECK(reduced.entries(1, 1) == s.entries(1, 1));
    CHECK(reduced.signature.signs == std::vector<int>{+1, +1});
}

TEST_CASE("minimal T-amp with matched auxiliary loads") {
    const auto s = scattering(build_T(default_amp_params(100.0)), 0.0);
    const auto block = terminate(s, {{2, 0.0}, {3, 0.0}});
    CHECK(std::abs(block.entries(0, 0)) < 1e-12);
    CHECK(std::abs(block.entries(0, 1)) < 1e-12);
    CHECK(std::abs(block.entries(1, 1)) < 1e-12);
    CHECK(std::abs(block.entries(1, 0)) == Catch::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("termination validates its loads") {
    const auto s = scattering(build_T(default_amp_params(25.0)), 0.0);
    CHECK_THROWS_AS(terminate(s, {{9, 0.0}}), DomainError);
    CHECK_THROWS_AS(terminate(s, {{2, 0.0}, {2, 0.1}}), DomainError);
    CHECK_THROWS_AS(terminate(s, {{2, Complex(1.2, 0.0)}}), DomainError);
}

TEST_CASE("terminating with a reflective load can hit the oscillation onset") {
    // squeezer idler port reflected with 1/|S22|: loop gain exactly one
    const auto s = scattering(build_squeezer(101.0, 1.0, 1.0), 0.0);
    const double s22 = std::abs(s.entries(1, 1));
    CHECK_THROWS_AS(terminate(s, {{1, 1.0 / s22}}), UnstableLoop);
    CHECK_NOTHROW(terminate(s, {{1, 0.5 / s22}}));
}

TEST_CASE("terminate agrees with cascading a one-port load") {
    NetworkGen gen(0x5eed2001);
    for (int trial = 0; trial < 10; ++trial) {
        const auto net = gen.next(3, 5);
        const auto s = scattering(net, 0.0);
        const Complex r{gen.uniform(-0.6, 0.6), gen.uniform(-0.6, 0.6)};
        const std::size_t port = net.size() - 1;

        ScatteringMatrix load;
        load.entries = Matrix::Constant(1, 1, r);
        load.signature = ConjugationSignature({s.signature[port]});
        const auto via_cascade = cascade(s, {port}, load, {0});
        const auto via_terminate = terminate(s, {{port, r}});
        CHECK((via_cascade.entries - via_terminate.entries).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("two circulators sharing a port form a 4-port router") {
    const auto c = ideal_circulator3();
    const auto combined = cascade(c, {1}, c, {0});
    REQUIRE(combined.size() == 4);
    for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index j = 0; j < 4; ++j) {
            const double mag = std::abs(combined.entries(i, j));
            CHECK((mag < 1e-14 || std::abs(mag - 1.0) < 1e-14));
        }
    // lossless composition stays para-unitary
    CHECK(check_paraunitary(combined) < 1e-14);
}

TEST_CASE("cascade with no connections is block-diagonal juxtaposition") {
    const auto c = ideal_circulator3();
    const auto joined = cascade(c, {}, c, {});
    REQUIRE(joined.size() == 6);
    CHECK(joined.entries.topRightCorner(3, 3).cwiseAbs().maxCoeff() == 0.0);
    CHECK((joined.entries.topLeftCorner(3, 3) - c.entries).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cascade rejects inconsistent connections") {
    const auto c = ideal_circulator3();
    const auto sq = scattering(build_squeezer(9.0, 1.0, 1.0), 0.0);
    CHECK_THROWS_AS(cascade(c, {0}, sq, {1}), SignatureMismatch);  // a to a-dagger
    CHECK_THROWS_AS(cascade(c, {0, 1}, sq, {0}), DomainError);
    CHECK_THROWS_AS(cascade(c, {0, 0}, sq, {0, 0}), DomainError);
    auto shifted = sq;
    shifted.delta = 1.0;
    CHECK_THROWS_AS(cascade(c, {0}, shifted, {0}), DomainError);
}

TEST_CASE("circulator + reflection 2PA + circulator reproduces the T-amp block") {
    const double kappa = default_kappa();
    const auto circ = scattering(build_circulator3({kappa, kappa, kappa}), 0.0);
    const auto pa = scattering(build_2pa(99.0, kappa, kappa), 0.0);

    const auto stage = cascade(circ, {1}, pa, {0});  // ports: c1.1, c1.3, pa.2
    const auto full = cascade(stage, {1}, circ, {0});  // ports: c1.1, pa.2, c2.2, c2.3

    // external 2-port block over (input, output)
    const auto s_t = scattering(build_T(default_amp_params(100.0)), 0.0);
    const auto want = terminate(s_t, {{2, 0.0}, {3, 0.0}});
    Matrix got(2, 2);
    got << full.entries(0, 0), full.entries(0, 2), full.entries(2, 0), full.entries(2, 2);
    CHECK((got - want.entries).cwiseAbs().maxCoeff() < 1e-9);

    // the idler line of the equivalent construction is conjugated, as in the
    // T-amp basis
    CHECK(full.signature.signs == std::vector<int>{+1, -1, +1, +1});
}

TEST_CASE("stability margin of the terminated T-amp") {
    const auto net = build_T(default_amp_params(100.0));

    CHECK(stability_margin(net, {{2, 0.0}, {3, 0.0}}) == 0.0);

    const double r = 0.9 / std::sqrt(100.0);
    const double margin = stability_margin(net, {{2, r}, {3, r}});
    CHECK(margin < 1.0);
    CHECK(margin == Catch::Approx(0.9).margin(1e-6));

    // full reflection on the output port: still stable (isolation rule)
    CHECK(stability_margin(net, {{1, 1.0}}) < 1.0);
}
