#pragma once

#include <stdexcept>
#include <string>

namespace delaystab {

/// Input that violates a documented precondition (dimension mismatch,
/// non-monic characteristic function, malformed parameters).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not produce a trustworthy answer.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation hit the pole 1 + λT/n = 0 of a Gamma-family transform.
class KernelPole : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

/// The queried gain lies on a stability crossing curve: F(iβ, L) vanishes
/// (to tolerance) for some real β, so NU(L) is not defined there.
class OnCurve : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

/// Phase tracking along the Nyquist-type contour did not settle.
class WindingUnresolved : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

/// QR iteration ran out of iterations before deflating.
class EigenNoConvergence : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

/// Some network eigenvalue sits on a crossing curve; consensus cannot be
/// decided at the current tolerance.
class Undecidable : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

}  // namespace delaystab
