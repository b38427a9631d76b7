#include "paramnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "paramnet/errors.hpp"

namespace paramnet {

namespace {

constexpr Complex i_unit{0.0, 1.0};

double lerp_grid(double lo, double hi, int k, int points) {
    const double t = static_cast<double>(k) / static_cast<double>(points - 1);
    return std::lerp(lo, hi, t);
}

}  // namespace

double kappa_bar(const ModeNetwork& net) {
    require_valid(net);
    if (net.modes.empty()) throw DomainError("kappa_bar: empty network");
    double log_sum = 0.0;
    for (const auto& m : net.modes) log_sum += std::log(m.kappa);
    return std::exp(log_sum / static_cast<double>(net.modes.size()));
}

SweepResult sweep(const ModeNetwork& net, double delta_min, double delta_max, int points) {
    if (points < 2) throw DomainError("sweep: requires points >= 2");
    if (!(delta_min < delta_max)) throw DomainError("sweep: requires delta_min < delta_max");
    const double kb = kappa_bar(net);

    SweepResult result;
    result.kappa_bar = kb;
    result.grid.reserve(static_cast<std::size_t>(points));
    result.matrices.reserve(static_cast<std::size_t>(points));
    result.near_singular.reserve(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        const double d = lerp_grid(delta_min, delta_max, k, points);
        result.grid.push_back(d);
        try {
            result.matrices.push_back(scattering(net, d * kb));
            result.near_singular.push_back(false);
        } catch (const NearSingular&) {
            const auto n = static_cast<Eigen::Index>(net.size());
            Matrix nan_fill = Matrix::Constant(n, n, Complex(std::nan(""), std::nan("")));
            result.matrices.push_back(ScatteringMatrix{std::move(nan_fill), net.signature(), d * kb});
            result.near_singular.push_back(true);
        }
    }
    return result;
}

// Closed-form transfer functions for uniform kappa and perfect conversion,
// G the per-coupling gain. The denominators are the expanded det(Sigma + M)
// of the respective device, normalized to 1 at resonance; the tests pin this
// analytic route against the matrix-solve route to 1e-9 over delta in [-2,2].

ClosedFormPoint closed_form_T(double delta, double g) {
    if (g < 1.0) throw DomainError("closed_form_T: requires G >= 1");
    const double rg = std::sqrt(g);
    const double d = delta;
    const Complex den = 1.0 - i_unit * (4.0 + rg) * d - 3.0 * (2.0 + rg) * d * d +
                        4.0 * i_unit * (1.0 + rg) * d * d * d + 2.0 * (1.0 + rg) * d * d * d * d;
    ClosedFormPoint p;
    p.s11 = (i_unit * d + 3.0 * d * d - 2.0 * i_unit * (1.0 + rg) * d * d * d -
             2.0 * (1.0 + rg) * d * d * d * d) /
            den;
    p.s12 = d * (i_unit + d + rg * d) / den;
    p.s21 = -((i_unit + d) * (i_unit * rg + d + rg * d)) / den;
    return p;
}

ClosedFormPoint closed_form_C(double delta, double g) {
    if (g <= 1.0) throw DomainError("closed_form_C: requires G > 1");
    const double rg = std::sqrt(g);
    const double d = delta;
    const Complex den = 1.0 - 4.0 * i_unit * d + 2.0 * (rg - 3.0) * d * d -
                        4.0 * i_unit * (rg - 1.0) * d * d * d - 2.0 * (rg - 1.0) * d * d * d * d;
    ClosedFormPoint p;
    p.s11 = d *
            (i_unit * (rg + 1.0) + (rg + 3.0) * d + 2.0 * i_unit * (rg - 1.0) * d * d +
             2.0 * (rg - 1.0) * d * d * d) /
            den;
    p.s12 = -std::sqrt(g - 1.0) * d * d / den;
    const Complex one_minus_id = 1.0 - i_unit * d;
    p.s21 = std::sqrt(g - 1.0) * one_minus_id * one_minus_id / den;
    return p;
}

NoiseReport noise_report(const ModeNetwork& net, double delta) {
    if (net.size() != 4) throw DomainError("noise_report: requires a 4-port network");
    const auto s = scattering(net, delta);
    const double g21 = std::abs(s.entries(1, 0));
    if (g21 < 1e-9) throw DegenerateGain("noise_report: |S21| < 1e-9");
    NoiseReport report;
    report.delta = delta;
    report.n_ba = 0.5 * (std::norm(s.entries(0, 2)) + std::norm(s.entries(0, 3)));
    report.n_add = 0.5 * (std::norm(s.entries(1, 2)) + std::norm(s.entries(1, 3))) / (g21 * g21);
    return report;
}

namespace {

struct Condition {
    std::string name;
    // true where the condition holds
    std::function<bool(const ScatteringMatrix&)> holds;
};

std::vector<Condition> make_conditions(const BandwidthCriteria& c) {
    std::vector<Condition> conds;
    if (c.match_max) {
        const double ceiling = *c.match_max;
        conds.push_back({"match", [ceiling](const ScatteringMatrix& s) {
                             return std::norm(s.entries(0, 0)) <= ceiling &&
                                    std::norm(s.entries(1, 1)) <= ceiling;
                         }});
    }
    if (c.check_isolation) {
        const double ceiling = 1.0 / c.g_fwd;
        conds.push_back({"isolation", [ceiling](const ScatteringMatrix& s) {
                             return std::norm(s.entries(0, 1)) <= ceiling;
                         }});
    }
    if (c.check_gain) {
        const double floor = c.g_fwd / 2.0;
        conds.push_back({"gain", [floor](const ScatteringMatrix& s) {
                             return std::norm(s.entries(1, 0)) >= floor;
                         }});
    }
    return conds;
}

}  // namespace

BandwidthReport bandwidth(const ModeNetwork& net, const BandwidthCriteria& criteria) {
    if (net.size() < 2) throw DomainError("bandwidth: requires at least 2 ports");
    if (criteria.grid_points < 3 || criteria.grid_points % 2 == 0)
        throw DomainError("bandwidth: grid_points must be odd and >= 3");
    const double kb = kappa_bar(net);

    const auto s0 = scattering(net, 0.0);
    const double g_meas = std::norm(s0.entries(1, 0));
    if (std::abs(g_meas - criteria.g_fwd) > 0.01 * criteria.g_fwd)
        throw DomainError("bandwidth: criteria.g_fwd does not match |S21(0)|^2 within 1%");

    const auto conds = make_conditions(criteria);
    if (conds.empty()) throw DomainError("bandwidth: no conditions enabled");
    for (const auto& c : conds)
        if (!c.holds(s0))
            throw ConditionFailsAtResonance("bandwidth: condition '" + c.name +
                                            "' violated at delta = 0");

    const int points = criteria.grid_points;
    const double span = criteria.delta_span;
    const int center = (points - 1) / 2;
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = lerp_grid(-span, span, k, points);

    // one sweep shared by all conditions
    std::vector<ScatteringMatrix> mats;
    mats.reserve(grid.size());
    std::vector<bool> usable(grid.size(), true);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        try {
            mats.push_back(scattering(net, grid[k] * kb));
        } catch (const NearSingular&) {
            mats.push_back(s0);
            usable[k] = false;
        }
    }

    auto holds_at = [&](const Condition& c, double delta_units) {
        return c.holds(scattering(net, delta_units * kb));
    };

    BandwidthReport report;
    report.kappa_bar = kb;
    report.g_fwd = criteria.g_fwd;
    Interval overall{-span, span};

    for (const auto& c : conds) {
        std::vector<bool> pass(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) pass[k] = usable[k] && c.holds(mats[k]);

        // maximal contiguous pass-run through the center, endpoints refined
        int lo = center, hi = center;
        while (lo > 0 && pass[static_cast<std::size_t>(lo - 1)]) --lo;
        while (hi + 1 < points && pass[static_cast<std::size_t>(hi + 1)]) ++hi;

        Interval main{grid[static_cast<std::size_t>(lo)], grid[static_cast<std::size_t>(hi)]};
        if (lo > 0) {
            double bad = grid[static_cast<std::size_t>(lo - 1)], good = grid[static_cast<std::size_t>(lo)];
            while (good - bad > criteria.refine_tol) {
                const double mid = 0.5 * (good + bad);
                (holds_at(c, mid) ? good : bad) = mid;
            }
            main.lo = 0.5 * (good + bad);
        }
        if (hi + 1 < points) {
            double good = grid[static_cast<std::size_t>(hi)], bad = grid[static_cast<std::size_t>(hi + 1)];
            while (bad - good > criteria.refine_tol) {
                const double mid = 0.5 * (good + bad);
                (holds_at(c, mid) ? good : bad) = mid;
            }
            main.hi = 0.5 * (good + bad);
        }

        ConditionBand band;
        band.condition = c.name;
        band.main = main;
        // other satisfying runs, at grid resolution
        for (int k = 0; k < points;) {
            if (!pass[static_cast<std::size_t>(k)]) {
                ++k;
                continue;
            }
            int start = k;
            while (k + 1 < points && pass[static_cast<std::size_t>(k + 1)]) ++k;
            if (start > hi || k < lo)
                band.disconnected.push_back(
                    {grid[static_cast<std::size_t>(start)], grid[static_cast<std::size_t>(k)]});
            ++k;
        }
        overall = Interval::intersect(overall, main);
        if (c.name == "gain") report.gbp = main.width() * std::sqrt(criteria.g_fwd);
        report.per_condition.push_back(std::move(band));
    }
    report.overall = overall;
    return report;
}

std::vector<GainSweepRow> gain_sweep(Family family, const std::vector<double>& g_list,
                                     double conv_eff) {
    std::vector<GainSweepRow> rows;
    rows.reserve(g_list.size());
    for (double g : g_list) {
        if (!(g >= 1.0) || g > 1e6) throw DomainError("gain_sweep: G must lie in [1, 1e6]");
        GainSweepRow row;
        row.g = g;
        try {
            const AmpParams p = default_amp_params(g, conv_eff);
            const auto net = family == Family::T ? build_T(p) : build_C(p);
            const auto s = scattering(net, 0.0);
            row.s11_sq = std::norm(s.entries(0, 0));
            row.s22_sq = std::norm(s.entries(1, 1));
            row.s12_sq = std::norm(s.entries(0, 1));
            row.s21_sq = std::norm(s.entries(1, 0));
        } catch (const Error&) {
            row.near_singular = true;
            row.s11_sq = row.s22_sq = row.s12_sq = row.s21_sq = std::nan("");
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace paramnet
