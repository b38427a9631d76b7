#include "paramnet/synthesis.hpp"

#include <cmath>
#include <sstream>

#include "paramnet/errors.hpp"

namespace paramnet {

namespace {

Complex phased(double magnitude_sq, double phase) {
    if (magnitude_sq < 0.0) {
        if (magnitude_sq < -1e-12)
            throw DomainError("negative radicand in family matrix: parameter inconsistency");
        magnitude_sq = 0.0;
    }
    return std::sqrt(magnitude_sq) * std::exp(Complex(0.0, phase));
}

double wrap_pi(double x) {
    x = std::fmod(x + pi, two_pi);
    if (x < 0) x += two_pi;
    return x - pi;
}

ConjugationSignature family_signature(Family family) {
    return family == Family::T ? ConjugationSignature({+1, +1, +1, -1})
                               : ConjugationSignature({+1, -1, +1, -1});
}

bool is_sig(const ConjugationSignature& sig, std::initializer_list<int> want) {
    return sig.signs == std::vector<int>(want);
}

}  // namespace

double derive_alpha2(const GeneralFamilyParams& p) {
    if (p.g1 < 1.0) throw DomainError("derive_alpha2: requires G1 >= 1");
    if (p.g2 < 0.0) throw DomainError("derive_alpha2: requires G2 >= 0");
    if (p.alpha1 < 0.0) throw DomainError("derive_alpha2: requires alpha1 >= 0");

    if (p.family == Family::T) {
        if (p.g2 == 0.0) {
            if (p.alpha1 > 0.0)
                throw UnsolvableLimit("T family: constraint has no solution at G2 = 0 with alpha1 > 0");
            return p.g1;  // alpha1 = 0, G2 -> 0 limit of G1*(G2+1)
        }
        return (p.alpha1 + p.g1 * p.g2) * (p.g2 + 1.0) / p.g2;
    }
    return p.alpha1 * p.g2 / (p.g2 + 1.0) + p.g1 * p.g2;
}

ScatteringMatrix general_family_S(const GeneralFamilyParams& p) {
    const double g1 = p.g1;
    const double g2 = p.g2;
    const double a1 = p.alpha1;
    const double a2 = derive_alpha2(p);
    const auto& t = p.thetas;
    const auto& f = p.phis;

    // The constraint fixes |lhs| = |rhs| through alpha2; when the shared
    // magnitude is nonzero the phase identity theta5 - theta6 =
    // theta2 - theta3 + phi1 - phi2 must hold as well.
    if (a1 > 0.0 && a2 > 0.0) {
        const double lhs_sq =
            p.family == Family::T ? (a1 + g1 * g2) * (a2 - g1 * (g2 + 1.0)) : (a1 + g1 * (g2 + 1.0)) * (a2 - g1 * g2);
        if (lhs_sq > 1e-12 * std::max(1.0, a1 * a2)) {
            const double mismatch = wrap_pi((t[4] - t[5]) - (t[1] - t[2] + f[0] - f[1]));
            if (std::abs(mismatch) > 1e-12)
                throw DomainError(
                    "phase assignment violates the family constraint "
                    "(theta5 - theta6 != theta2 - theta3 + phi1 - phi2)");
        }
    }

    Matrix s = Matrix::Zero(4, 4);
    if (p.family == Family::T) {
        // r = alpha1/(G1 G2); the constraint gives alpha2/(G1(G2+1)) = 1 + r
        // and alpha2 G2/(G2+1) = alpha1 + G1 G2, removing the 0/0 forms.
        const double r = (a1 == 0.0) ? 0.0 : a1 / (g1 * g2);
        s(0, 2) = phased(1.0 + r, t[4]);
        s(0, 3) = phased(r, t[5]);
        s(1, 0) = phased(g1, t[0]);
        s(1, 2) = phased(r * (g1 - 1.0), t[0] + t[1] - t[2] - t[3] + f[0]);
        s(1, 3) = phased((1.0 + r) * (g1 - 1.0), t[0] - t[3] + f[1]);
        s(2, 0) = phased((g1 - 1.0) * g2, t[2] - t[1] + t[3]);
        s(2, 1) = phased(g2 + 1.0, t[2]);
        s(2, 2) = phased(a1, f[0]);
        s(2, 3) = phased(a1 + g1 * g2, t[2] - t[1] + f[1]);
        s(3, 0) = phased((g1 - 1.0) * (g2 + 1.0), t[3]);
        s(3, 1) = phased(g2, t[1]);
        s(3, 2) = phased(a1 == 0.0 ? 0.0 : a1 * (g2 + 1.0) / g2, t[1] - t[2] + f[0]);
        s(3, 3) = phased(a2, f[1]);
    } else {
        // q = alpha1/(G1(G2+1)); the constraint gives alpha2/(G1 G2) = 1 + q
        // and alpha2 (G2+1)/G2 = alpha1 + G1(G2+1).
        const double q = a1 / (g1 * (g2 + 1.0));
        s(0, 2) = phased(1.0 + q, t[4]);
        s(0, 3) = phased(q, t[5]);
        s(1, 0) = phased(g1, t[0]);
        s(1, 2) = phased(q * (g1 + 1.0), t[0] + t[1] - t[2] - t[3] + f[0]);
        s(1, 3) = phased((1.0 + q) * (g1 + 1.0), t[0] - t[3] + f[1]);
        s(2, 0) = phased((g1 + 1.0) * (g2 + 1.0), t[2] - t[1] + t[3]);
        s(2, 1) = phased(g2, t[2]);
        s(2, 2) = phased(a1, f[0]);
        s(2, 3) = phased(a1 + g1 * (g2 + 1.0), t[2] - t[1] + f[1]);
        s(3, 0) = phased(g2 * (g1 + 1.0), t[3]);
        s(3, 1) = phased(g2 + 1.0, t[1]);
        s(3, 2) = phased(a1 * g2 / (g2 + 1.0), t[1] - t[2] + f[0]);
        s(3, 3) = phased(a2, f[1]);
    }
    return ScatteringMatrix{std::move(s), family_signature(p.family), 0.0};
}

ScatteringMatrix minimal_S(Family family, double g) {
    if (g < 0.0) throw DomainError("minimal_S: requires G >= 0");
    const double rg = std::sqrt(g);
    const double rg1 = std::sqrt(g + 1.0);
    Matrix s = Matrix::Zero(4, 4);
    s(0, 2) = 1.0;
    if (family == Family::C) {
        s(1, 0) = rg;
        s(1, 3) = rg1;
        s(2, 0) = rg1;
        s(2, 3) = rg;
        s(3, 1) = 1.0;
    } else {
        s(1, 0) = rg1;
        s(1, 3) = rg;
        s(2, 1) = 1.0;
        s(3, 0) = rg;
        s(3, 3) = rg1;
    }
    return ScatteringMatrix{std::move(s), family_signature(family), 0.0};
}

FeasibilityVerdict basis_feasibility(const ConjugationSignature& sig) {
    if (sig.size() != 4) throw DomainError("basis_feasibility: requires N = 4");
    if (sig[0] != +1) throw DomainError("basis_feasibility: requires s1 = +1");
    const int s2 = sig[1], s3 = sig[2], s4 = sig[3];

    FeasibilityVerdict verdict;
    verdict.basis = sig;

    if (s2 > 0 && s3 > 0 && s4 > 0) {
        // K = I makes S unitary, so column 1 forces |S21| <= 1: no
        // amplification, but the 4-port circulator family sits at |S21| = 1.
        verdict.status = FeasibilityStatus::CirculatorOnly;
        verdict.witness = "unitary column 1: |S21|^2 + |S31|^2 + |S41|^2 = 1 forces |S21| <= 1";
        return verdict;
    }

    // Column 2 under the zero pattern: s3|S32|^2 + s4|S42|^2 = s2.
    // Reachable with nonnegative moduli iff some term carries the sign of s2.
    const bool col2_ok = (s2 > 0) ? (s3 > 0 || s4 > 0) : (s3 < 0 || s4 < 0);
    if (!col2_ok) {
        verdict.status = FeasibilityStatus::Infeasible;
        verdict.witness = "|S32|^2 + |S42|^2 = -1";
        return verdict;
    }

    // Column 1: s2|S21|^2 + s3|S31|^2 + s4|S41|^2 = s1 = +1 with |S21|^2 > 1.
    // With s2 = -1 this needs a positive term among s3, s4; all-negative
    // collapses to a sum of nonnegative moduli equal to -1.
    if (s2 < 0 && s3 < 0 && s4 < 0) {
        verdict.status = FeasibilityStatus::Infeasible;
        verdict.witness = "|S21|^2 + |S31|^2 + |S41|^2 = -1";
        return verdict;
    }

    // Certify by constructing a generic family solution (ports 3 and 4 of the
    // T/C bases may need relabeling to match sig).
    GeneralFamilyParams params;
    params.g1 = 4.0;
    params.g2 = 0.5;
    params.alpha1 = 1.0;
    const bool swapped34 = (s4 == +1);
    if (is_sig(sig, {+1, +1, +1, -1}) || is_sig(sig, {+1, +1, -1, +1})) {
        params.family = Family::T;
    } else if (is_sig(sig, {+1, -1, +1, -1}) || is_sig(sig, {+1, -1, -1, +1})) {
        params.family = Family::C;
    } else {
        verdict.status = FeasibilityStatus::Infeasible;
        verdict.witness = "no certificate family for this basis";
        return verdict;
    }
    ScatteringMatrix cert = general_family_S(params);
    if (swapped34) {
        cert.entries.row(2).swap(cert.entries.row(3));
        cert.entries.col(2).swap(cert.entries.col(3));
        std::swap(cert.signature.signs[2], cert.signature.signs[3]);
    }
    const double residual = check_paraunitary(cert);
    verdict.status = FeasibilityStatus::Feasible;
    std::ostringstream os;
    os << "constructed solution, para-unitarity residual = " << residual;
    verdict.witness = os.str();
    return verdict;
}

NoiseReport noise_figures_general(const ScatteringMatrix& s) {
    if (s.size() != 4) throw DomainError("noise_figures_general: requires a 4-port matrix");
    const double directional = std::max({std::abs(s.entries(0, 0)), std::abs(s.entries(0, 1)),
                                         std::abs(s.entries(1, 1))});
    const double scale = std::max(1.0, s.entries.cwiseAbs().maxCoeff());
    if (directional > 1e-6 * scale)
        throw DomainError("noise_figures_general: matrix is not directional (S11, S12, S22 != 0)");
    const double g21 = std::abs(s.entries(1, 0));
    if (g21 < 1e-9) throw DegenerateGain("noise_figures_general: |S21| < 1e-9");

    NoiseReport report;
    report.delta = s.delta;
    report.n_ba = 0.5 * (std::norm(s.entries(0, 2)) + std::norm(s.entries(0, 3)));
    report.n_add = 0.5 * (std::norm(s.entries(1, 2)) + std::norm(s.entries(1, 3))) / (g21 * g21);
    return report;
}

}  // namespace paramnet
