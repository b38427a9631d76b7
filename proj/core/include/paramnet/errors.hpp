#pragma once

#include <stdexcept>
#include <string>

namespace paramnet {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Linear solve too ill-conditioned to trust; the device is at or past the
/// parametric oscillation threshold.
struct NearSingular : Error {
    using Error::Error;
};

/// Coupling-matrix off-diagonals satisfy neither the conversion nor the gain
/// symmetry relation for some nonzero pair.
struct InconsistentSymmetry : Error {
    using Error::Error;
};

/// T-family constraint has no solution (G2 = 0 with alpha1 > 0).
struct UnsolvableLimit : Error {
    using Error::Error;
};

/// Parameter outside its admissible domain.
struct DomainError : Error {
    using Error::Error;
};

/// |S21| too small to refer noise to the input.
struct DegenerateGain : Error {
    using Error::Error;
};

/// A bandwidth condition is already violated at zero detuning.
struct ConditionFailsAtResonance : Error {
    using Error::Error;
};

/// Termination/cascade feedback loop at the self-oscillation onset.
struct UnstableLoop : Error {
    using Error::Error;
};

/// Connected ports carry incompatible conjugation signs.
struct SignatureMismatch : Error {
    using Error::Error;
};

/// Malformed input file or text format.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace paramnet
