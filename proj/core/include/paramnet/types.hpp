#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace paramnet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

/// Diagonal +/-1 bookkeeping for which modes enter the reduced basis as
/// creation operators. K = diag(signs) appears in the para-unitarity
/// identity S K S^dag = K.
struct ConjugationSignature {
    std::vector<int> signs;  // +1 for a_n, -1 for a_n^dag

    ConjugationSignature() = default;
    explicit ConjugationSignature(std::vector<int> s) : signs(std::move(s)) {}

    std::size_t size() const { return signs.size(); }
    int operator[](std::size_t i) const { return signs[i]; }

    RealVector k_diagonal() const {
        RealVector k(static_cast<Eigen::Index>(signs.size()));
        for (std::size_t i = 0; i < signs.size(); ++i) k[static_cast<Eigen::Index>(i)] = signs[i];
        return k;
    }

    bool operator==(const ConjugationSignature& o) const { return signs == o.signs; }
};

/// Closed detuning interval, in units of the mean linewidth.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }

    static Interval intersect(const Interval& a, const Interval& b) {
        return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    }
};

}  // namespace paramnet
