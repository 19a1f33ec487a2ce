#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace boolcube {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class DimensionTooLarge : public Error {
public:
    using Error::Error;
};

class CoordinateOutOfRange : public Error {
public:
    using Error::Error;
};

// A Fourier expansion does not reconstruct to a {-1,+1}-valued function.
class NotBoolean : public Error {
public:
    using Error::Error;
};

// A probability fell below the tolerated negative slack.
class NumericalInconsistency : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ThetaOutOfRange : public Error {
public:
    using Error::Error;
};

class InvalidDistribution : public Error {
public:
    using Error::Error;
};

// The quintic expansion of the curvature numerator failed to collapse to a
// cubic; indicates an implementation bug, not a property of the input.
class DegreeCollapseViolation : public Error {
public:
    using Error::Error;
};

// The cubic's sign certificate (positive at 0, negative at the cap, one
// positive root, one non-positive root) failed numerically.
class SignPatternViolation : public Error {
public:
    using Error::Error;
};

// An equality-achieving pair is not a signed dictator pair.
class NonDictatorMaximizer : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

}  // namespace boolcube
