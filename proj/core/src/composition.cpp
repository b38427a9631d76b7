#include "paramnet/composition.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <set>

#include "paramnet/analysis.hpp"
#include "paramnet/errors.hpp"

namespace paramnet {

namespace {

void check_terminations(const ScatteringMatrix& s, const std::vector<PortTermination>& terms) {
    std::set<std::size_t> seen;
    for (const auto& t : terms) {
        if (t.port >= static_cast<std::size_t>(s.size()))
            throw DomainError("termination references a missing port");
        if (!seen.insert(t.port).second) throw DomainError("port terminated twice");
        if (std::abs(t.r) > 1.0 + 1e-12)
            throw DomainError("termination requires |r| <= 1 (passive loads only)");
    }
}

struct Partition {
    std::vector<Eigen::Index> external;  // A
    std::vector<Eigen::Index> loaded;    // B, in terms order
};

Partition partition_ports(Eigen::Index n, const std::vector<PortTermination>& terms) {
    Partition p;
    std::set<std::size_t> loaded;
    for (const auto& t : terms) loaded.insert(t.port);
    for (Eigen::Index i = 0; i < n; ++i)
        if (!loaded.count(static_cast<std::size_t>(i))) p.external.push_back(i);
    for (const auto& t : terms) p.loaded.push_back(static_cast<Eigen::Index>(t.port));
    return p;
}

Matrix submatrix(const Matrix& s, const std::vector<Eigen::Index>& rows,
                 const std::vector<Eigen::Index>& cols) {
    Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s(rows[i], cols[j]);
    return out;
}

}  // namespace

ScatteringMatrix terminate(const ScatteringMatrix& s, const std::vector<PortTermination>& terms) {
    check_terminations(s, terms);
    const auto part = partition_ports(s.size(), terms);

    ScatteringMatrix out;
    out.delta = s.delta;
    for (auto i : part.external)
        out.signature.signs.push_back(s.signature[static_cast<std::size_t>(i)]);

    const Matrix s_aa = submatrix(s.entries, part.external, part.external);
    const bool all_matched =
        std::all_of(terms.begin(), terms.end(), [](const PortTermination& t) { return t.r == 0.0; });
    if (all_matched) {
        out.entries = s_aa;  // plain block extraction
        return out;
    }

    const auto nb = static_cast<Eigen::Index>(terms.size());
    Matrix r = Matrix::Zero(nb, nb);
    for (Eigen::Index i = 0; i < nb; ++i) r(i, i) = terms[static_cast<std::size_t>(i)].r;

    const Matrix s_bb = submatrix(s.entries, part.loaded, part.loaded);
    const Matrix loop = Matrix::Identity(nb, nb) - s_bb * r;
    const double cond = condition_number(loop);
    if (!(cond < near_singular_threshold))
        throw UnstableLoop("terminate: (I - S_BB R) near-singular, self-oscillation onset");

    const Matrix s_ab = submatrix(s.entries, part.external, part.loaded);
    const Matrix s_ba = submatrix(s.entries, part.loaded, part.external);
    Eigen::PartialPivLU<Matrix> lu(loop);
    out.entries = s_aa + s_ab * r * lu.solve(s_ba);
    return out;
}

ScatteringMatrix cascade(const ScatteringMatrix& a, const std::vector<std::size_t>& ports_a,
                         const ScatteringMatrix& b, const std::vector<std::size_t>& ports_b) {
    if (ports_a.size() != ports_b.size())
        throw DomainError("cascade: connected port lists must have equal length");
    const auto na = a.size();
    const auto nb = b.size();
    std::set<std::size_t> seen_a, seen_b;
    for (std::size_t k = 0; k < ports_a.size(); ++k) {
        if (ports_a[k] >= static_cast<std::size_t>(na) || ports_b[k] >= static_cast<std::size_t>(nb))
            throw DomainError("cascade: connection references a missing port");
        if (!seen_a.insert(ports_a[k]).second || !seen_b.insert(ports_b[k]).second)
            throw DomainError("cascade: port connected twice");
        if (a.signature[ports_a[k]] != b.signature[ports_b[k]])
            throw SignatureMismatch("cascade: connection joins an a-line to an a^dag-line");
    }
    if (std::abs(a.delta - b.delta) > 1e-9 * std::max({std::abs(a.delta), std::abs(b.delta), 1.0}))
        throw DomainError("cascade: matrices evaluated at different detunings");

    // joint block-diagonal system; internal ports are eliminated through the
    // pair-swap constraint a_in(internal) = X b_out(internal)
    const Eigen::Index n = na + nb;
    Matrix joint = Matrix::Zero(n, n);
    joint.topLeftCorner(na, na) = a.entries;
    joint.bottomRightCorner(nb, nb) = b.entries;

    std::vector<Eigen::Index> internal;
    for (std::size_t k = 0; k < ports_a.size(); ++k) internal.push_back(static_cast<Eigen::Index>(ports_a[k]));
    for (std::size_t k = 0; k < ports_b.size(); ++k)
        internal.push_back(na + static_cast<Eigen::Index>(ports_b[k]));
    std::vector<Eigen::Index> external;
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::find(internal.begin(), internal.end(), i) == internal.end()) external.push_back(i);

    const auto ni = static_cast<Eigen::Index>(internal.size());
    const auto npairs = static_cast<Eigen::Index>(ports_a.size());
    Matrix x = Matrix::Zero(ni, ni);
    for (Eigen::Index k = 0; k < npairs; ++k) {
        x(k, npairs + k) = 1.0;
        x(npairs + k, k) = 1.0;
    }

    ScatteringMatrix out;
    out.delta = a.delta;
    for (auto i : external) {
        const bool from_a = i < na;
        out.signature.signs.push_back(from_a ? a.signature[static_cast<std::size_t>(i)]
                                             : b.signature[static_cast<std::size_t>(i - na)]);
    }

    const Matrix s_ee = submatrix(joint, external, external);
    if (ni == 0) {
        out.entries = s_ee;  // block-diagonal juxtaposition
        return out;
    }
    const Matrix s_ii = submatrix(joint, internal, internal);
    const Matrix s_ie = submatrix(joint, internal, external);
    const Matrix s_ei = submatrix(joint, external, internal);

    const Matrix loop = Matrix::Identity(ni, ni) - x * s_ii;
    const double cond = condition_number(loop);
    if (!(cond < near_singular_threshold))
        throw UnstableLoop("cascade: connection loop near-singular, self-oscillation onset");
    Eigen::PartialPivLU<Matrix> lu(loop);
    out.entries = s_ee + s_ei * lu.solve(x * s_ie);
    return out;
}

double stability_margin(const ModeNetwork& net, const std::vector<PortTermination>& terms,
                        const StabilityGrid& grid) {
    require_valid(net);
    if (grid.points < 2) throw DomainError("stability_margin: requires points >= 2");
    if (terms.empty()) return 0.0;
    const double kb = kappa_bar(net);

    std::vector<Eigen::Index> loaded;
    Matrix r = Matrix::Zero(static_cast<Eigen::Index>(terms.size()),
                            static_cast<Eigen::Index>(terms.size()));
    for (std::size_t k = 0; k < terms.size(); ++k) {
        if (terms[k].port >= net.size()) throw DomainError("stability_margin: missing port");
        loaded.push_back(static_cast<Eigen::Index>(terms[k].port));
        r(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = terms[k].r;
    }

    double margin = 0.0;
    for (int k = 0; k < grid.points; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(grid.points - 1);
        const double d = std::lerp(-grid.delta_span, grid.delta_span, t);
        const auto s = scattering(net, d * kb);
        const Matrix s_bb = submatrix(s.entries, loaded, loaded);
        const Matrix loop = s_bb * r;
        if (loop.cwiseAbs().maxCoeff() == 0.0) continue;
        Eigen::ComplexEigenSolver<Matrix> eig(loop, /*computeEigenvectors=*/false);
        margin = std::max(margin, eig.eigenvalues().cwiseAbs().maxCoeff());
    }
    return margin;
}

}  // namespace paramnet
