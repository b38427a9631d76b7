#pragma once

#include "paramnet/network.hpp"
#include "paramnet/types.hpp"

namespace paramnet {

// Input-output theory for a driven N-mode network, all pumps on resonance.
// The reduced-basis dynamics are governed by
//
//     S(delta) = (Sigma + M)^{-1} (Sigma - M)
//
// with Sigma = diag(kappa_n/2) and M carrying couplings off the diagonal and
// -i*delta on every diagonal entry (each conjugated row flips its mode's
// detuning -delta back to -i*delta). Lossless dynamics make S para-unitary,
// S K S^dag = K, at every detuning.

/// Sigma = diag(kappa_n / 2).
struct DampingMatrix {
    RealVector diag;  // kappa_n / 2, rad/s

    Eigen::Index size() const { return diag.size(); }
    Matrix matrix() const { return diag.cast<Complex>().asDiagonal(); }
};

/// M(delta): couplings off the diagonal, -i*delta on the diagonal.
struct DynamicalMatrix {
    Matrix entries;
    double delta = 0.0;  // signal detuning, rad/s
};

struct ScatteringMatrix {
    Matrix entries;
    ConjugationSignature signature;
    double delta = 0.0;  // detuning at which evaluated, rad/s

    Eigen::Index size() const { return entries.rows(); }
};

/// 2N x 2N doubled-basis form diag(S, S*) together with the symplectic form
/// expressed in the same basis, J = [[0, K], [-K, 0]]. The conjugation
/// signature stands in for the basis transformation L, which is never built.
struct GeneralizedScattering {
    Matrix entries;  // diag(S, conj(S))
    Matrix j_form;
};

/// 1-norm condition estimate of a square matrix (inverse via partial-pivot LU).
double condition_number(const Matrix& a);

/// Condition estimate above which solves raise NearSingular.
inline constexpr double near_singular_threshold = 1e12;

DampingMatrix damping_matrix(const ModeNetwork& net);

/// Assembles M(delta). Off-diagonals: M_mn = -i sqrt(kappa_m/kappa_n) g_mn
/// for each stored edge, with the partner entry fixed by the symmetry
/// relation M_nm = -/+ (kappa_n/kappa_m) conj(M_mn) (- conversion, + gain).
DynamicalMatrix dynamical_matrix(const ModeNetwork& net, double delta);

/// S(delta) = (Sigma + M)^{-1}(Sigma - M). Throws NearSingular at/beyond the
/// oscillation threshold.
ScatteringMatrix scattering(const ModeNetwork& net, double delta);

/// Inverse map M = Sigma (I - S)(I + S)^{-1}. Throws NearSingular when S has
/// an eigenvalue at -1 (target unreachable with finite couplings).
DynamicalMatrix synthesize_couplings(const ScatteringMatrix& s, const DampingMatrix& sigma);

/// Recovers a ModeNetwork from a coupling matrix: g_mn = i sqrt(kappa_n/kappa_m) M_mn,
/// edge kind from s_m * s_n. Throws InconsistentSymmetry if the required
/// symmetry relation fails for a nonzero pair. Mode frequencies are assigned
/// a default ladder (they do not affect S).
ModeNetwork network_from_coupling_matrix(const DynamicalMatrix& m, const DampingMatrix& sigma,
                                         const ConjugationSignature& sig, double tol = 1e-9);

GeneralizedScattering generalized_scattering(const ScatteringMatrix& s);

/// || S~^T J S~ - J ||_max
double check_symplectic(const GeneralizedScattering& gs);

/// || S K S^dag - K ||_max with K = diag(signature).
double check_paraunitary(const ScatteringMatrix& s);

}  // namespace paramnet
