// paramnet command-line front end: build preset or user-specified mode
// networks, run sweeps / bandwidth / noise / synthesis / composition, and
// emit CSV, JSON, or Touchstone data.

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "paramnet/analysis.hpp"
#include "paramnet/catalog.hpp"
#include "paramnet/composition.hpp"
#include "paramnet/errors.hpp"
#include "paramnet/io.hpp"
#include "paramnet/scattering.hpp"
#include "paramnet/synthesis.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace paramnet;

struct NetworkOptions {
    std::string preset;
    std::string spec_path;
    double gain_db = 20.0;
    double conversion = 1.0;
    double kappa_mhz = 100.0;
};

void add_network_options(CLI::App* cmd, NetworkOptions& opts) {
    cmd->add_option("--preset", opts.preset,
                    "one of: t-amp | c-amp | squeezer | converter | circulator3 | 2pa")
        ->check(CLI::IsMember({"t-amp", "c-amp", "squeezer", "converter", "circulator3", "2pa"}));
    cmd->add_option("--spec", opts.spec_path, "network spec JSON file");
    cmd->add_option("--gain-db", opts.gain_db,
                    "forward photon gain target, dB (squeezer: reflection gain; 2pa: transmission gain)");
    cmd->add_option("--conversion", opts.conversion, "conversion efficiency C in (0, 1]");
    cmd->add_option("--kappa-mhz", opts.kappa_mhz, "uniform linewidth kappa/2pi, MHz");
}

ModeNetwork resolve_network(const NetworkOptions& opts) {
    if (!opts.spec_path.empty()) return io::load_network(opts.spec_path);
    if (opts.preset.empty()) throw DomainError("provide --preset or --spec");
    const double kappa = two_pi * opts.kappa_mhz * 1e6;
    const double g_lin = std::pow(10.0, opts.gain_db / 10.0);
    if (opts.preset == "t-amp" || opts.preset == "c-amp") {
        const Family fam = opts.preset == "t-amp" ? Family::T : Family::C;
        AmpParams p;
        p.g_refl = per_coupling_gain_for_forward(fam, g_lin);
        p.conv_eff = opts.conversion;
        p.kappas = {kappa, kappa, kappa, kappa};
        return fam == Family::T ? build_T(p) : build_C(p);
    }
    if (opts.preset == "squeezer") return build_squeezer(g_lin, kappa, kappa);
    if (opts.preset == "converter") return build_converter(opts.conversion, kappa, kappa);
    if (opts.preset == "circulator3") return build_circulator3({kappa, kappa, kappa});
    return build_2pa(g_lin, kappa, kappa);  // 2pa
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        io::write_file(out_path, text);
}

std::pair<std::size_t, Complex> parse_termination(const std::string& text) {
    // "port=re,im" with a 1-based port
    const auto eq = text.find('=');
    const auto comma = text.find(',', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || comma == std::string::npos)
        throw ParseError("--terminate expects 'port=r_re,r_im', got '" + text + "'");
    const int port = std::stoi(text.substr(0, eq));
    if (port < 1) throw ParseError("--terminate: ports are 1-based");
    const double re = std::stod(text.substr(eq + 1, comma - eq - 1));
    const double im = std::stod(text.substr(comma + 1));
    return {static_cast<std::size_t>(port - 1), Complex(re, im)};
}

json interval_json(const Interval& iv) {
    return json{{"lo", iv.lo}, {"hi", iv.hi}, {"width", iv.width()}};
}

int run(int argc, char** argv) {
    CLI::App app{"parametrically coupled mode network simulator and synthesis toolkit"};
    app.require_subcommand(1);

    // ---- build ----
    NetworkOptions build_opts;
    std::string build_out;
    auto* cmd_build = app.add_subcommand("build", "construct a preset or load a spec, emit network JSON");
    add_network_options(cmd_build, build_opts);
    cmd_build->add_option("--out", build_out, "output file (default: stdout)");

    // ---- sweep ----
    NetworkOptions sweep_opts;
    std::string sweep_out, sweep_format = "csv";
    double delta_min = -2.0, delta_max = 2.0;
    int sweep_points = 801;
    auto* cmd_sweep = app.add_subcommand("sweep", "scattering matrix over a detuning grid");
    add_network_options(cmd_sweep, sweep_opts);
    cmd_sweep->add_option("--delta-min", delta_min, "grid start, units of kappa_bar");
    cmd_sweep->add_option("--delta-max", delta_max, "grid end, units of kappa_bar");
    cmd_sweep->add_option("--points", sweep_points, "grid points");
    cmd_sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"csv", "json", "touchstone"}));
    cmd_sweep->add_option("--out", sweep_out, "output file (default: stdout)");

    // ---- gainsweep ----
    std::string gs_family = "t-amp", gs_out, gs_format = "csv";
    double gs_min_db = 3.0, gs_max_db = 40.0, gs_conversion = 0.99;
    int gs_points = 75;
    auto* cmd_gs = app.add_subcommand("gainsweep", "resonant S powers versus per-coupling gain");
    cmd_gs->add_option("--family", gs_family)->check(CLI::IsMember({"t-amp", "c-amp"}));
    cmd_gs->add_option("--gmin-db", gs_min_db, "per-coupling gain sweep start, dB");
    cmd_gs->add_option("--gmax-db", gs_max_db, "per-coupling gain sweep end, dB");
    cmd_gs->add_option("--points", gs_points);
    cmd_gs->add_option("--conversion", gs_conversion, "conversion efficiency C");
    cmd_gs->add_option("--format", gs_format)->check(CLI::IsMember({"csv", "json"}));
    cmd_gs->add_option("--out", gs_out);

    // ---- bandwidth ----
    NetworkOptions bw_opts;
    std::string bw_out;
    bool bw_gain_only = false;
    double bw_match_max = 0.01, bw_span = 2.0;
    int bw_points = 801;
    auto* cmd_bw = app.add_subcommand("bandwidth", "per-condition bandwidth intervals and gain-bandwidth product");
    add_network_options(cmd_bw, bw_opts);
    cmd_bw->add_flag("--gain-only", bw_gain_only, "only the |S21|^2 >= G/2 condition (reference amplifiers)");
    cmd_bw->add_option("--match-max", bw_match_max, "reflection power ceiling");
    cmd_bw->add_option("--span", bw_span, "half-width of the search grid, kappa_bar units");
    cmd_bw->add_option("--points", bw_points, "grid points (odd)");
    cmd_bw->add_option("--out", bw_out);

    // ---- noise ----
    NetworkOptions noise_opts;
    std::string noise_out;
    double noise_delta = 0.0;
    auto* cmd_noise = app.add_subcommand("noise", "back-action and added-noise photon numbers");
    add_network_options(cmd_noise, noise_opts);
    cmd_noise->add_option("--delta", noise_delta, "detuning, kappa_bar units");
    cmd_noise->add_option("--out", noise_out);

    // ---- synth ----
    std::string synth_matrix, synth_out;
    double synth_kappa_mhz = 100.0;
    auto* cmd_synth = app.add_subcommand("synth", "coupling matrix (and network) realizing a target S matrix");
    cmd_synth->add_option("--s-matrix", synth_matrix, "scattering matrix JSON file")->required();
    cmd_synth->add_option("--kappa-mhz", synth_kappa_mhz, "uniform linewidth kappa/2pi, MHz");
    cmd_synth->add_option("--out", synth_out);

    // ---- terminate ----
    NetworkOptions term_opts;
    std::string term_out;
    double term_delta = 0.0;
    std::vector<std::string> term_specs;
    auto* cmd_term = app.add_subcommand("terminate", "reduce ports with complex loads");
    add_network_options(cmd_term, term_opts);
    cmd_term->add_option("--delta", term_delta, "detuning, kappa_bar units");
    cmd_term->add_option("--terminate", term_specs, "load 'port=r_re,r_im' (repeatable, 1-based port)")
        ->required();
    cmd_term->add_option("--out", term_out);

    // ---- cascade ----
    std::string casc_a, casc_b, casc_connect, casc_out;
    double casc_delta = 0.0;
    auto* cmd_casc = app.add_subcommand("cascade", "star-product composition of two networks");
    cmd_casc->add_option("--spec-a", casc_a, "first network spec JSON")->required();
    cmd_casc->add_option("--spec-b", casc_b, "second network spec JSON")->required();
    cmd_casc->add_option("--connect", casc_connect, "connections 'pa:pb[,pa:pb...]' (1-based)")->required();
    cmd_casc->add_option("--delta", casc_delta, "detuning, kappa_bar units of network A");
    cmd_casc->add_option("--out", casc_out);

    // ---- feasibility ----
    std::string feas_out;
    auto* cmd_feas = app.add_subcommand("feasibility", "directional-amplifier verdict for each 4-mode basis");
    cmd_feas->add_option("--out", feas_out);

    // ---- pumps ----
    NetworkOptions pump_opts;
    std::string pump_out, pump_format = "csv";
    auto* cmd_pumps = app.add_subcommand("pumps", "parametric drive schedule for a network");
    add_network_options(cmd_pumps, pump_opts);
    cmd_pumps->add_option("--format", pump_format)->check(CLI::IsMember({"csv", "json"}));
    cmd_pumps->add_option("--out", pump_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // --help exits 0, bad usage exits 2
    }

    if (cmd_build->parsed()) {
        emit(build_out, io::network_to_json(resolve_network(build_opts)));
        return 0;
    }

    if (cmd_sweep->parsed()) {
        const auto net = resolve_network(sweep_opts);
        const auto result = sweep(net, delta_min, delta_max, sweep_points);
        if (sweep_format == "csv")
            emit(sweep_out, io::sweep_to_csv(result));
        else if (sweep_format == "json")
            emit(sweep_out, io::sweep_to_json(result));
        else
            emit(sweep_out, io::sweep_to_touchstone(result, net));
        return 0;
    }

    if (cmd_gs->parsed()) {
        const Family fam = gs_family == "t-amp" ? Family::T : Family::C;
        std::vector<double> gs;
        for (int k = 0; k < gs_points; ++k) {
            const double t = gs_points == 1 ? 0.0 : static_cast<double>(k) / (gs_points - 1);
            gs.push_back(std::pow(10.0, std::lerp(gs_min_db, gs_max_db, t) / 10.0));
        }
        const auto rows = gain_sweep(fam, gs, gs_conversion);
        if (gs_format == "csv") {
            std::string text = "g,s11_sq,s22_sq,s12_sq,s21_sq,near_singular\n";
            for (const auto& r : rows) {
                text += io::fmt17(r.g) + "," + io::fmt17(r.s11_sq) + "," + io::fmt17(r.s22_sq) + "," +
                        io::fmt17(r.s12_sq) + "," + io::fmt17(r.s21_sq) + "," +
                        (r.near_singular ? "1" : "0") + "\n";
            }
            emit(gs_out, text);
        } else {
            json doc = json::array();
            for (const auto& r : rows)
                doc.push_back(json{{"g", r.g},
                                   {"s11_sq", r.s11_sq},
                                   {"s22_sq", r.s22_sq},
                                   {"s12_sq", r.s12_sq},
                                   {"s21_sq", r.s21_sq},
                                   {"near_singular", r.near_singular}});
            emit(gs_out, doc.dump(2) + "\n");
        }
        return 0;
    }

    if (cmd_bw->parsed()) {
        const auto net = resolve_network(bw_opts);
        const auto s0 = scattering(net, 0.0);
        BandwidthCriteria crit;
        crit.g_fwd = std::norm(s0.entries(1, 0));
        crit.match_max = bw_match_max;
        crit.delta_span = bw_span;
        crit.grid_points = bw_points;
        if (bw_gain_only || net.size() < 4) {
            crit.match_max.reset();
            crit.check_isolation = false;
        }
        const auto report = bandwidth(net, crit);
        json doc;
        doc["g_fwd"] = report.g_fwd;
        doc["kappa_bar_rad_s"] = report.kappa_bar;
        doc["overall"] = interval_json(report.overall);
        doc["gbp"] = report.gbp;
        doc["per_condition"] = json::object();
        for (const auto& band : report.per_condition) {
            json b;
            b["main"] = interval_json(band.main);
            b["disconnected"] = json::array();
            for (const auto& iv : band.disconnected) b["disconnected"].push_back(interval_json(iv));
            doc["per_condition"][band.condition] = std::move(b);
        }
        emit(bw_out, doc.dump(2) + "\n");
        return 0;
    }

    if (cmd_noise->parsed()) {
        const auto net = resolve_network(noise_opts);
        const auto report = noise_report(net, noise_delta * kappa_bar(net));
        json doc{{"n_ba", report.n_ba}, {"n_add", report.n_add}, {"delta_rad_s", report.delta}};
        emit(noise_out, doc.dump(2) + "\n");
        return 0;
    }

    if (cmd_synth->parsed()) {
        const auto target = io::load_smatrix(synth_matrix);
        RealVector diag(target.size());
        diag.setConstant(two_pi * synth_kappa_mhz * 1e6 / 2.0);
        const DampingMatrix sigma{diag};
        const auto m = synthesize_couplings(target, sigma);
        json doc;
        doc["coupling_matrix"] = json::parse(io::coupling_matrix_to_json(m));
        try {
            const auto net = network_from_coupling_matrix(m, sigma, target.signature);
            doc["network"] = json::parse(io::network_to_json(net));
        } catch (const Error& e) {
            doc["network_error"] = e.what();
        }
        emit(synth_out, doc.dump(2) + "\n");
        return 0;
    }

    if (cmd_term->parsed()) {
        const auto net = resolve_network(term_opts);
        std::vector<PortTermination> terms;
        for (const auto& t : term_specs) {
            const auto [port, r] = parse_termination(t);
            terms.push_back(PortTermination{port, r});
        }
        const auto s = scattering(net, term_delta * kappa_bar(net));
        emit(term_out, io::smatrix_to_json(terminate(s, terms)));
        return 0;
    }

    if (cmd_casc->parsed()) {
        const auto net_a = io::load_network(casc_a);
        const auto net_b = io::load_network(casc_b);
        std::vector<std::size_t> ports_a, ports_b;
        std::stringstream ss(casc_connect);
        std::string pair;
        while (std::getline(ss, pair, ',')) {
            const auto colon = pair.find(':');
            if (colon == std::string::npos)
                throw ParseError("--connect expects 'pa:pb[,pa:pb...]', got '" + pair + "'");
            const int pa = std::stoi(pair.substr(0, colon));
            const int pb = std::stoi(pair.substr(colon + 1));
            if (pa < 1 || pb < 1) throw ParseError("--connect: ports are 1-based");
            ports_a.push_back(static_cast<std::size_t>(pa - 1));
            ports_b.push_back(static_cast<std::size_t>(pb - 1));
        }
        const double delta_rad = casc_delta * kappa_bar(net_a);
        const auto sa = scattering(net_a, delta_rad);
        const auto sb = scattering(net_b, delta_rad);
        emit(casc_out, io::smatrix_to_json(cascade(sa, ports_a, sb, ports_b)));
        return 0;
    }

    if (cmd_feas->parsed()) {
        std::string text;
        for (const auto& signs : std::vector<std::vector<int>>{{1, 1, 1, 1},
                                                               {1, 1, 1, -1},
                                                               {1, -1, 1, 1},
                                                               {1, 1, -1, -1},
                                                               {1, -1, 1, -1},
                                                               {1, -1, -1, -1}}) {
            const auto v = basis_feasibility(ConjugationSignature(signs));
            std::string basis = "(a1";
            for (int i = 1; i < 4; ++i)
                basis += std::string(", a") + std::to_string(i + 1) +
                         (signs[static_cast<std::size_t>(i)] < 0 ? "*" : "");
            basis += ")";
            const char* status = v.status == FeasibilityStatus::Feasible       ? "FEASIBLE"
                                 : v.status == FeasibilityStatus::Infeasible   ? "INFEASIBLE"
                                                                               : "CIRCULATOR_ONLY";
            text += basis + ": " + status + "  [" + v.witness + "]\n";
        }
        emit(feas_out, text);
        return 0;
    }

    if (cmd_pumps->parsed()) {
        const auto net = resolve_network(pump_opts);
        const auto schedule = pump_schedule(net);
        if (pump_format == "csv") {
            std::string text = "mode_a,mode_b,kind,magnitude_mhz,phase_rad,pump_frequency_ghz\n";
            for (const auto& line : schedule) {
                text += net.modes[line.m].name + "," + net.modes[line.n].name + "," +
                        (line.kind == CouplingKind::Gain ? "gain" : "conversion") + "," +
                        io::fmt17(line.magnitude / (two_pi * 1e6)) + "," + io::fmt17(line.phase) + "," +
                        io::fmt17(line.pump_frequency / (two_pi * 1e9)) + "\n";
            }
            emit(pump_out, text);
        } else {
            json doc = json::array();
            for (const auto& line : schedule)
                doc.push_back(json{{"mode_a", net.modes[line.m].name},
                                   {"mode_b", net.modes[line.n].name},
                                   {"kind", line.kind == CouplingKind::Gain ? "gain" : "conversion"},
                                   {"magnitude_mhz", line.magnitude / (two_pi * 1e6)},
                                   {"phase_rad", line.phase},
                                   {"pump_frequency_ghz", line.pump_frequency / (two_pi * 1e9)}});
            emit(pump_out, doc.dump(2) + "\n");
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError&) {
        std::cerr << "error: bad command line; see --help\n";
        return 2;
    } catch (const paramnet::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const paramnet::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
