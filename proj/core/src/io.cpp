#include "paramnet/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "paramnet/errors.hpp"

namespace paramnet::io {

using json = nlohmann::ordered_json;

namespace {

void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ParseError("unknown key '" + key + "' in " + where);
    }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_number())
        throw ParseError("missing numeric '" + key + "' in " + where);
    return obj[key].get<double>();
}

double sij_db(const Complex& v) { return 10.0 * std::log10(std::norm(v)); }

json matrix_to_json_parts(const Matrix& m) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row_re = json::array(), row_im = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row_re.push_back(m(i, j).real());
            row_im.push_back(m(i, j).imag());
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json_parts(const json& obj, const std::string& where) {
    if (!obj.contains("re") || !obj.contains("im")) throw ParseError(where + ": missing re/im");
    const auto& re = obj["re"];
    const auto& im = obj["im"];
    if (!re.is_array() || !im.is_array() || re.size() != im.size())
        throw ParseError(where + ": re/im must be arrays of equal shape");
    const auto n = static_cast<Eigen::Index>(re.size());
    Matrix m(n, n == 0 ? 0 : static_cast<Eigen::Index>(re[0].size()));
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& rrow = re[static_cast<std::size_t>(i)];
        const auto& irow = im[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(rrow.size()) != m.cols() ||
            static_cast<Eigen::Index>(irow.size()) != m.cols())
            throw ParseError(where + ": ragged matrix rows");
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            m(i, j) = Complex(rrow[static_cast<std::size_t>(j)].get<double>(),
                              irow[static_cast<std::size_t>(j)].get<double>());
    }
    return m;
}

}  // namespace

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string network_to_json(const ModeNetwork& net) {
    json doc;
    doc["modes"] = json::array();
    for (const auto& m : net.modes) {
        doc["modes"].push_back(json{{"name", m.name},
                                    {"omega_ghz", m.omega / (two_pi * 1e9)},
                                    {"kappa_mhz", m.kappa / (two_pi * 1e6)},
                                    {"conjugated", m.conjugated}});
    }
    doc["couplings"] = json::array();
    for (const auto& e : net.edges) {
        doc["couplings"].push_back(
            json{{"a", net.modes[e.m].name},
                 {"b", net.modes[e.n].name},
                 {"kind", e.kind == CouplingKind::Gain ? "gain" : "conversion"},
                 {"magnitude_mhz", e.magnitude / (two_pi * 1e6)},
                 {"phase_rad", e.phase}});
    }
    return doc.dump(2) + "\n";
}

ModeNetwork network_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("network spec: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("network spec: top level must be an object");
    reject_unknown_keys(doc, {"modes", "couplings"}, "network spec");
    if (!doc.contains("modes") || !doc["modes"].is_array())
        throw ParseError("network spec: missing 'modes' array");

    ModeNetwork net;
    std::map<std::string, std::size_t> index;
    for (const auto& m : doc["modes"]) {
        if (!m.is_object()) throw ParseError("network spec: mode entries must be objects");
        reject_unknown_keys(m, {"name", "omega_ghz", "kappa_mhz", "conjugated"}, "mode entry");
        if (!m.contains("name") || !m["name"].is_string())
            throw ParseError("network spec: mode requires a string 'name'");
        ModeSpec spec;
        spec.name = m["name"].get<std::string>();
        spec.omega = require_number(m, "omega_ghz", "mode '" + spec.name + "'") * two_pi * 1e9;
        spec.kappa = require_number(m, "kappa_mhz", "mode '" + spec.name + "'") * two_pi * 1e6;
        spec.conjugated = m.contains("conjugated") ? m["conjugated"].get<bool>() : false;
        index[spec.name] = net.modes.size();
        net.modes.push_back(std::move(spec));
    }
    if (doc.contains("couplings")) {
        if (!doc["couplings"].is_array()) throw ParseError("network spec: 'couplings' must be an array");
        for (const auto& c : doc["couplings"]) {
            reject_unknown_keys(c, {"a", "b", "kind", "magnitude_mhz", "phase_rad"}, "coupling entry");
            for (const char* key : {"a", "b", "kind"})
                if (!c.contains(key) || !c[key].is_string())
                    throw ParseError(std::string("coupling requires string '") + key + "'");
            const auto a = c["a"].get<std::string>();
            const auto b = c["b"].get<std::string>();
            if (!index.count(a) || !index.count(b))
                throw ParseError("coupling references unknown mode '" + (index.count(a) ? b : a) + "'");
            const auto kind_str = c["kind"].get<std::string>();
            if (kind_str != "gain" && kind_str != "conversion")
                throw ParseError("coupling kind must be 'gain' or 'conversion'");
            CouplingEdge e;
            e.m = index[a];
            e.n = index[b];
            e.kind = kind_str == "gain" ? CouplingKind::Gain : CouplingKind::Conversion;
            e.magnitude = require_number(c, "magnitude_mhz", "coupling") * two_pi * 1e6;
            e.phase = require_number(c, "phase_rad", "coupling");
            net.edges.push_back(e);
        }
    }
    require_valid(net);
    return net;
}

ModeNetwork load_network(const std::string& path) { return network_from_json(read_file(path)); }

std::string smatrix_to_json(const ScatteringMatrix& s) {
    json doc;
    doc["signature"] = s.signature.signs;
    doc["delta_rad_s"] = s.delta;
    auto parts = matrix_to_json_parts(s.entries);
    doc["re"] = std::move(parts["re"]);
    doc["im"] = std::move(parts["im"]);
    return doc.dump(2) + "\n";
}

ScatteringMatrix smatrix_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("scattering matrix: ") + e.what());
    }
    reject_unknown_keys(doc, {"signature", "delta_rad_s", "re", "im"}, "scattering matrix");
    ScatteringMatrix s;
    s.entries = matrix_from_json_parts(doc, "scattering matrix");
    if (s.entries.rows() != s.entries.cols())
        throw ParseError("scattering matrix: must be square");
    if (doc.contains("signature")) {
        for (const auto& v : doc["signature"]) {
            const int sign = v.get<int>();
            if (sign != 1 && sign != -1) throw ParseError("signature entries must be +1 or -1");
            s.signature.signs.push_back(sign);
        }
    } else {
        s.signature.signs.assign(static_cast<std::size_t>(s.entries.rows()), +1);
    }
    if (static_cast<Eigen::Index>(s.signature.size()) != s.entries.rows())
        throw ParseError("signature length must match matrix size");
    s.delta = doc.contains("delta_rad_s") ? doc["delta_rad_s"].get<double>() : 0.0;
    return s;
}

ScatteringMatrix load_smatrix(const std::string& path) { return smatrix_from_json(read_file(path)); }

std::string coupling_matrix_to_json(const DynamicalMatrix& m) {
    json doc;
    doc["delta_rad_s"] = m.delta;
    auto parts = matrix_to_json_parts(m.entries);
    doc["re"] = std::move(parts["re"]);
    doc["im"] = std::move(parts["im"]);
    return doc.dump(2) + "\n";
}

std::string sweep_to_csv(const SweepResult& sweep) {
    const auto n = sweep.matrices.empty() ? 0 : sweep.matrices.front().size();
    std::ostringstream os;
    os << "delta";
    for (Eigen::Index i = 1; i <= n; ++i)
        for (Eigen::Index j = 1; j <= n; ++j)
            os << ",S" << i << j << "_re,S" << i << j << "_im,S" << i << j << "_db";
    os << "\n";
    for (std::size_t k = 0; k < sweep.grid.size(); ++k) {
        os << fmt17(sweep.grid[k]);
        const auto& m = sweep.matrices[k].entries;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                os << ',' << fmt17(m(i, j).real()) << ',' << fmt17(m(i, j).imag()) << ','
                   << fmt17(sij_db(m(i, j)));
        os << "\n";
    }
    return os.str();
}

SweepResult sweep_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) throw ParseError("sweep csv: empty input");
    const auto columns = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
    if (columns < 1 || (columns - 1) % 3 != 0) throw ParseError("sweep csv: malformed header");
    const auto n_sq = (columns - 1) / 3;
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n_sq))));
    if (static_cast<std::size_t>(n) * static_cast<std::size_t>(n) != n_sq)
        throw ParseError("sweep csv: column count is not 1 + 3*N^2");

    SweepResult sweep;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<double> values;
        while (std::getline(row, cell, ',')) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str()) throw ParseError("sweep csv: bad number '" + cell + "'");
            values.push_back(v);
        }
        if (values.size() != columns) throw ParseError("sweep csv: wrong column count in a row");
        sweep.grid.push_back(values[0]);
        Matrix m(n, n);
        bool nan_row = false;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                const auto base = 1 + 3 * static_cast<std::size_t>(i * n + j);
                m(i, j) = Complex(values[base], values[base + 1]);
                nan_row = nan_row || std::isnan(values[base]);
            }
        ScatteringMatrix s;
        s.entries = std::move(m);
        s.signature.signs.assign(static_cast<std::size_t>(n), +1);
        sweep.matrices.push_back(std::move(s));
        sweep.near_singular.push_back(nan_row);
    }
    return sweep;
}

std::string sweep_to_json(const SweepResult& sweep) {
    const auto n = sweep.matrices.empty() ? 0 : sweep.matrices.front().size();
    json doc;
    doc["kappa_bar_rad_s"] = sweep.kappa_bar;
    doc["ports"] = n;
    doc["delta"] = sweep.grid;
    doc["near_singular"] = sweep.near_singular;
    json elements = json::object();
    for (Eigen::Index i = 1; i <= n; ++i) {
        for (Eigen::Index j = 1; j <= n; ++j) {
            json re = json::array(), im = json::array(), db = json::array();
            for (const auto& s : sweep.matrices) {
                const Complex v = s.entries(i - 1, j - 1);
                re.push_back(v.real());
                im.push_back(v.imag());
                db.push_back(sij_db(v));
            }
            elements["S" + std::to_string(i) + std::to_string(j)] =
                json{{"re", std::move(re)}, {"im", std::move(im)}, {"db", std::move(db)}};
        }
    }
    doc["elements"] = std::move(elements);
    return doc.dump(2) + "\n";
}

std::string sweep_to_touchstone(const SweepResult& sweep, const ModeNetwork& net) {
    const auto n = static_cast<Eigen::Index>(net.size());
    if (sweep.matrices.empty() || sweep.matrices.front().size() != n)
        throw DomainError("touchstone export: sweep/network size mismatch");
    std::ostringstream os;
    os << "! paramnet S-parameter sweep\n";
    os << "! frequency column: signal detuning offset from the per-port carrier, GHz\n";
    os << "! (pumped parametric network; ports sit at distinct carrier frequencies)\n";
    const auto sig = net.signature();
    for (Eigen::Index i = 0; i < n; ++i) {
        os << "! port " << i + 1 << " carrier " << fmt17(net.modes[static_cast<std::size_t>(i)].omega / (two_pi * 1e9))
           << " GHz (" << (sig[static_cast<std::size_t>(i)] > 0 ? "a" : "a-dagger") << ")\n";
    }
    os << "# GHz S RI R 50\n";
    for (std::size_t k = 0; k < sweep.grid.size(); ++k) {
        const double f_ghz = sweep.grid[k] * sweep.kappa_bar / (two_pi * 1e9);
        const auto& m = sweep.matrices[k].entries;
        if (n <= 2) {
            os << fmt17(f_ghz);
            if (n == 1) {
                os << ' ' << fmt17(m(0, 0).real()) << ' ' << fmt17(m(0, 0).imag());
            } else {
                // 2-port order: S11 S21 S12 S22
                for (auto [i, j] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}})
                    os << ' ' << fmt17(m(i, j).real()) << ' ' << fmt17(m(i, j).imag());
            }
            os << "\n";
        } else {
            // row-major, one matrix row per line, wrapped at 4 pairs
            for (Eigen::Index i = 0; i < n; ++i) {
                if (i == 0)
                    os << fmt17(f_ghz);
                else
                    os << ' ';
                for (Eigen::Index j = 0; j < n; ++j) {
                    if (j > 0 && j % 4 == 0) os << "\n ";
                    os << ' ' << fmt17(m(i, j).real()) << ' ' << fmt17(m(i, j).imag());
                }
                os << "\n";
            }
        }
    }
    return os.str();
}

SweepResult sweep_from_touchstone(const std::string& text, int n_ports) {
    if (n_ports < 1) throw ParseError("touchstone: invalid port count");
    std::istringstream is(text);
    std::string line;
    bool option_seen = false;
    std::vector<double> numbers;
    while (std::getline(is, line)) {
        const auto bang = line.find('!');
        if (bang != std::string::npos) line.erase(bang);
        std::istringstream row(line);
        std::string tok;
        if (!(row >> tok)) continue;
        if (tok == "#") {
            std::string freq_unit, param, fmt;
            row >> freq_unit >> param >> fmt;
            if (freq_unit != "GHz" || param != "S" || fmt != "RI")
                throw ParseError("touchstone: expected '# GHz S RI' option line");
            option_seen = true;
            continue;
        }
        if (!option_seen) throw ParseError("touchstone: data before option line");
        row.clear();
        row.str(line);
        double v = 0.0;
        while (row >> v) numbers.push_back(v);
    }
    const auto n = static_cast<Eigen::Index>(n_ports);
    const std::size_t block = 1 + 2 * static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    if (numbers.empty() || numbers.size() % block != 0)
        throw ParseError("touchstone: data size is not a whole number of frequency blocks");

    SweepResult sweep;
    for (std::size_t off = 0; off < numbers.size(); off += block) {
        sweep.grid.push_back(numbers[off]);  // GHz detuning offset
        Matrix m(n, n);
        auto at = [&](std::size_t pair_idx) {
            return Complex(numbers[off + 1 + 2 * pair_idx], numbers[off + 2 + 2 * pair_idx]);
        };
        if (n == 2) {
            m(0, 0) = at(0);
            m(1, 0) = at(1);
            m(0, 1) = at(2);
            m(1, 1) = at(3);
        } else {
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j)
                    m(i, j) = at(static_cast<std::size_t>(i * n + j));
        }
        ScatteringMatrix s;
        s.entries = std::move(m);
        s.signature.signs.assign(static_cast<std::size_t>(n), +1);
        sweep.matrices.push_back(std::move(s));
        sweep.near_singular.push_back(false);
    }
    return sweep;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

}  // namespace paramnet::io
