#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "paramnet/analysis.hpp"
#include "paramnet/errors.hpp"
#include "paramnet/io.hpp"

using namespace paramnet;

TEST_CASE("fmt17 round-trips doubles") {
    for (double v : {0.0, 1.0, -2.5, 1.0 / 3.0, 6.283185307179586e8, 1e-300}) {
        CHECK(std::strtod(io::fmt17(v).c_str(), nullptr) == v);
    }
}

TEST_CASE("network JSON round trip") {
    const auto net = build_T(default_amp_params(100.0, 0.99));
    const auto text = io::network_to_json(net);
    const auto back = io::network_from_json(text);
    REQUIRE(back.modes.size() == net.modes.size());
    REQUIRE(back.edges.size() == net.edges.size());
    for (std::size_t i = 0; i < net.modes.size(); ++i) {
        CHECK(back.modes[i].name == net.modes[i].name);
        CHECK(back.modes[i].omega == Catch::Approx(net.modes[i].omega).epsilon(1e-15));
        CHECK(back.modes[i].kappa == Catch::Approx(net.modes[i].kappa).epsilon(1e-15));
        CHECK(back.modes[i].conjugated == net.modes[i].conjugated);
    }
    for (std::size_t i = 0; i < net.edges.size(); ++i) {
        CHECK(back.edges[i].m == net.edges[i].m);
        CHECK(back.edges[i].n == net.edges[i].n);
        CHECK(back.edges[i].kind == net.edges[i].kind);
        CHECK(back.edges[i].magnitude == Catch::Approx(net.edges[i].magnitude).epsilon(1e-15));
        CHECK(back.edges[i].phase == net.edges[i].phase);
    }
}

TEST_CASE("network JSON rejects malformed input") {
    CHECK_THROWS_AS(io::network_from_json("{"), ParseError);
    CHECK_THROWS_AS(io::network_from_json(R"({"modes": [], "bogus": 1})"), ParseError);
    CHECK_THROWS_AS(io::network_from_json(
                        R"({"modes": [{"name":"a1","omega_ghz":4,"kappa_mhz":100,"color":"red"}]})"),
                    ParseError);
    CHECK_THROWS_AS(
        io::network_from_json(
            R"({"modes": [{"name":"a1","omega_ghz":4,"kappa_mhz":100},
                          {"name":"a2","omega_ghz":6,"kappa_mhz":100}],
                "couplings": [{"a":"a1","b":"a2","kind":"squeeze","magnitude_mhz":1,"phase_rad":0}]})"),
        ParseError);
    // parses but fails validation: gain edge between unconjugated modes
    CHECK_THROWS_AS(
        io::network_from_json(
            R"({"modes": [{"name":"a1","omega_ghz":4,"kappa_mhz":100},
                          {"name":"a2","omega_ghz":6,"kappa_mhz":100}],
                "couplings": [{"a":"a1","b":"a2","kind":"gain","magnitude_mhz":1,"phase_rad":0}]})"),
        DomainError);
}

TEST_CASE("sweep CSV round trip is byte-identical") {
    const auto net = build_squeezer(25.0, 1.0, 2.0);
    const auto result = sweep(net, -1.0, 1.0, 21);
    const auto text = io::sweep_to_csv(result);
    auto parsed = io::sweep_from_csv(text);
    parsed.kappa_bar = result.kappa_bar;
    const auto text2 = io::sweep_to_csv(parsed);
    CHECK(text == text2);

    // header shape: 1 + 3*N^2 columns
    const auto header = text.substr(0, text.find('\n'));
    CHECK(std::count(header.begin(), header.end(), ',') == 3 * 4);
    CHECK(header.substr(0, 17) == "delta,S11_re,S11_");
}

TEST_CASE("sweep CSV parse rejects damaged input") {
    CHECK_THROWS_AS(io::sweep_from_csv(""), ParseError);
    CHECK_THROWS_AS(io::sweep_from_csv("delta,S11_re\n0,1\n"), ParseError);
    CHECK_THROWS_AS(io::sweep_from_csv("delta,S11_re,S11_im,S11_db\n0,1\n"), ParseError);
}

TEST_CASE("touchstone export and reimport preserve values exactly") {
    const auto net = build_T(default_amp_params(100.0));
    const auto result = sweep(net, -0.5, 0.5, 11);
    const auto text = io::sweep_to_touchstone(result, net);

    CHECK(text.find("# GHz S RI R 50") != std::string::npos);
    CHECK(text.find("! port 1 carrier 4 GHz (a)") != std::string::npos);
    CHECK(text.find("! port 4 carrier 10 GHz (a-dagger)") != std::string::npos);

    const auto back = io::sweep_from_touchstone(text, 4);
    REQUIRE(back.grid.size() == result.grid.size());
    for (std::size_t k = 0; k < back.grid.size(); ++k) {
        CHECK(back.grid[k] == result.grid[k] * result.kappa_bar / (two_pi * 1e9));
        CHECK((back.matrices[k].entries - result.matrices[k].entries).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("touchstone 2-port uses the standard S11 S21 S12 S22 order") {
    const auto net = build_squeezer(25.0, 1.0, 1.0);
    const auto result = sweep(net, 0.0, 1.0, 2);
    const auto text = io::sweep_to_touchstone(result, net);

    std::istringstream is(text);
    std::string line;
    std::vector<double> first_data;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '!' || line[0] == '#') continue;
        std::istringstream row(line);
        double v;
        while (row >> v) first_data.push_back(v);
        break;
    }
    REQUIRE(first_data.size() == 9);
    const auto& m = result.matrices[0].entries;
    CHECK(first_data[1] == m(0, 0).real());
    CHECK(first_data[3] == m(1, 0).real());  // S21 before S12
    CHECK(first_data[5] == m(0, 1).real());
    CHECK(first_data[7] == m(1, 1).real());

    const auto back = io::sweep_from_touchstone(text, 2);
    CHECK((back.matrices[0].entries - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("touchstone parse rejects a wrong option line") {
    CHECK_THROWS_AS(io::sweep_from_touchstone("# MHz S RI R 50\n0 1 0\n", 1), ParseError);
    CHECK_THROWS_AS(io::sweep_from_touchstone("0 1 0\n", 1), ParseError);
}

TEST_CASE("scattering matrix JSON round trip") {
    const auto net = build_C(default_amp_params(101.0));
    const auto s = scattering(net, 0.3 * kappa_bar(net));
    const auto back = io::smatrix_from_json(io::smatrix_to_json(s));
    CHECK(back.signature == s.signature);
    CHECK(back.delta == s.delta);
    CHECK((back.entries - s.entries).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(io::smatrix_from_json(R"({"re": [[0]], "im": [[0]], "signature": [2]})"),
                    ParseError);
    CHECK_THROWS_AS(io::smatrix_from_json(R"({"re": [[0,1]], "im": [[0,1]]})"), ParseError);
}
