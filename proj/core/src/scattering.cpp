#include "paramnet/scattering.hpp"

#include <Eigen/LU>
#include <cmath>
#include <sstream>

#include "paramnet/errors.hpp"

namespace paramnet {

namespace {

constexpr Complex minus_i{0.0, -1.0};

std::vector<double> default_ladder(std::size_t n) {
    std::vector<double> omegas(n);
    for (std::size_t k = 0; k < n; ++k) omegas[k] = two_pi * (4.0 + 2.0 * k) * 1e9;
    return omegas;
}

}  // namespace

double condition_number(const Matrix& a) {
    if (a.rows() == 0) return 1.0;
    Eigen::PartialPivLU<Matrix> lu(a);
    const Matrix inv = lu.inverse();
    const double na = a.cwiseAbs().colwise().sum().maxCoeff();
    const double ni = inv.cwiseAbs().colwise().sum().maxCoeff();
    const double cond = na * ni;
    return std::isfinite(cond) ? cond : std::numeric_limits<double>::infinity();
}

DampingMatrix damping_matrix(const ModeNetwork& net) {
    require_valid(net);
    RealVector d(static_cast<Eigen::Index>(net.size()));
    for (std::size_t i = 0; i < net.size(); ++i)
        d[static_cast<Eigen::Index>(i)] = net.modes[i].kappa / 2.0;
    return DampingMatrix{std::move(d)};
}

DynamicalMatrix dynamical_matrix(const ModeNetwork& net, double delta) {
    require_valid(net);
    const auto n = static_cast<Eigen::Index>(net.size());
    Matrix m = Matrix::Zero(n, n);
    for (const auto& e : net.edges) {
        const double km = net.modes[e.m].kappa;
        const double kn = net.modes[e.n].kappa;
        const Complex g = e.magnitude * std::exp(Complex(0.0, e.phase));
        const Complex forward = minus_i * std::sqrt(km / kn) * g;
        m(static_cast<Eigen::Index>(e.m), static_cast<Eigen::Index>(e.n)) = forward;
        const double ratio = kn / km;
        const Complex partner = (e.kind == CouplingKind::Conversion ? -ratio : ratio) * std::conj(forward);
        m(static_cast<Eigen::Index>(e.n), static_cast<Eigen::Index>(e.m)) = partner;
    }
    // Every reduced row carries -i*delta: a conjugated row flips its mode's
    // detuning -delta back to -i*delta.
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = minus_i * delta;
    return DynamicalMatrix{std::move(m), delta};
}

ScatteringMatrix scattering(const ModeNetwork& net, double delta) {
    const auto dyn = dynamical_matrix(net, delta);
    const auto sigma = damping_matrix(net);
    const Matrix a = sigma.matrix() + dyn.entries;
    const double cond = condition_number(a);
    if (!(cond < near_singular_threshold)) {
        std::ostringstream os;
        os << "scattering solve near-singular (cond ~ " << cond
           << "): at or beyond the parametric oscillation threshold";
        throw NearSingular(os.str());
    }
    Eigen::PartialPivLU<Matrix> lu(a);
    Matrix s = lu.solve(sigma.matrix() - dyn.entries);
    return ScatteringMatrix{std::move(s), net.signature(), delta};
}

DynamicalMatrix synthesize_couplings(const ScatteringMatrix& s, const DampingMatrix& sigma) {
    if (s.size() != sigma.size()) throw DomainError("synthesize_couplings: size mismatch");
    const auto n = s.size();
    const Matrix ips = Matrix::Identity(n, n) + s.entries;
    const double cond = condition_number(ips);
    if (!(cond < near_singular_threshold)) {
        std::ostringstream os;
        os << "(I + S) near-singular (cond ~ " << cond
           << "): S has an eigenvalue at -1, unreachable with finite couplings";
        throw NearSingular(os.str());
    }
    Eigen::PartialPivLU<Matrix> lu(ips);
    const Matrix ims = Matrix::Identity(n, n) - s.entries;
    Matrix m = sigma.matrix() * (ims * lu.inverse());
    return DynamicalMatrix{std::move(m), s.delta};
}

ModeNetwork network_from_coupling_matrix(const DynamicalMatrix& m, const DampingMatrix& sigma,
                                         const ConjugationSignature& sig, double tol) {
    const auto n = m.entries.rows();
    if (sigma.size() != n || static_cast<Eigen::Index>(sig.size()) != n)
        throw DomainError("network_from_coupling_matrix: size mismatch");

    const double scale = std::max(m.entries.cwiseAbs().maxCoeff(), sigma.diag.maxCoeff());
    const double abs_tol = tol * std::max(scale, 1.0);

    ModeNetwork net;
    const auto omegas = default_ladder(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        net.modes.push_back(ModeSpec{"a" + std::to_string(i + 1), omegas[static_cast<std::size_t>(i)],
                                     2.0 * sigma.diag[i], sig[static_cast<std::size_t>(i)] < 0});
        const Complex d = m.entries(i, i);
        if (std::abs(d - m.entries(0, 0)) > abs_tol || std::abs(d.real()) > abs_tol)
            throw InconsistentSymmetry("diagonal entries must equal -i*delta uniformly");
    }

    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const Complex fwd = m.entries(i, j);
            const Complex back = m.entries(j, i);
            if (std::abs(fwd) <= abs_tol && std::abs(back) <= abs_tol) continue;

            const double km = 2.0 * sigma.diag[i];
            const double kn = 2.0 * sigma.diag[j];
            const int product =
                sig[static_cast<std::size_t>(i)] * sig[static_cast<std::size_t>(j)];
            const auto kind = product > 0 ? CouplingKind::Conversion : CouplingKind::Gain;
            const double ratio = kn / km;
            const Complex expected =
                (kind == CouplingKind::Conversion ? -ratio : ratio) * std::conj(fwd);
            if (std::abs(back - expected) > abs_tol) {
                std::ostringstream os;
                os << "pair (" << i + 1 << "," << j + 1 << ") satisfies neither symmetry relation";
                throw InconsistentSymmetry(os.str());
            }
            const Complex g = Complex(0.0, 1.0) * std::sqrt(kn / km) * fwd;
            net.edges.push_back(CouplingEdge{static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                                             kind, std::abs(g), std::arg(g)});
        }
    }
    require_valid(net);
    return net;
}

GeneralizedScattering generalized_scattering(const ScatteringMatrix& s) {
    const auto n = s.size();
    Matrix big = Matrix::Zero(2 * n, 2 * n);
    big.topLeftCorner(n, n) = s.entries;
    big.bottomRightCorner(n, n) = s.entries.conjugate();

    Matrix j = Matrix::Zero(2 * n, 2 * n);
    const RealVector k = s.signature.k_diagonal();
    for (Eigen::Index i = 0; i < n; ++i) {
        j(i, n + i) = k[i];
        j(n + i, i) = -k[i];
    }
    return GeneralizedScattering{std::move(big), std::move(j)};
}

double check_symplectic(const GeneralizedScattering& gs) {
    if (gs.entries.rows() == 0) return 0.0;
    const Matrix r = gs.entries.transpose() * gs.j_form * gs.entries - gs.j_form;
    return r.cwiseAbs().maxCoeff();
}

double check_paraunitary(const ScatteringMatrix& s) {
    if (s.size() == 0) return 0.0;
    const Matrix k = s.signature.k_diagonal().cast<Complex>().asDiagonal();
    const Matrix r = s.entries * k * s.entries.adjoint() - k;
    return r.cwiseAbs().maxCoeff();
}

}  // namespace paramnet
