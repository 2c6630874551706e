#ifndef BELTRAMI_ERRORS_HPP
#define BELTRAMI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace beltrami {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A surface description (JSON or file) could not be parsed or fails schema
// validation. Messages carry the offending location/key.
class SpecParseError : public Error {
public:
  using Error::Error;
};

// A requested evaluation point lies outside the declared parameter domain.
class DomainError : public Error {
public:
  using Error::Error;
};

// A jet operation hit a singular composition point (e.g. reciprocal or sqrt
// at a value too close to zero for the truncation tolerance).
class DegenerateJetError : public Error {
public:
  using Error::Error;
};

// An operation needs more jet orders than the operand carries.
class InsufficientOrderError : public Error {
public:
  using Error::Error;
};

// The first fundamental form is numerically singular at the evaluation point
// (the chart fails to be a regular immersion there).
class RegularityError : public Error {
public:
  using Error::Error;
};

// det(b) vanishes at the evaluation point, so the second and third
// fundamental forms are not invertible and J=II / J=III operators are
// undefined there.
class ParabolicPointError : public Error {
public:
  using Error::Error;
};

// A ruled surface description violates the required normalizations
// (unit ruling direction, unit-speed spherical image, orthogonality of the
// directrix derivative to the ruling).
class NormalizationError : public Error {
public:
  using Error::Error;
};

// Invalid run configuration (flags, grid sizes, tolerances, file paths).
class ConfigError : public Error {
public:
  using Error::Error;
};

// An internal contract was violated; indicates a bug rather than bad input.
class ContractError : public Error {
public:
  using Error::Error;
};

} // namespace beltrami

#endif // BELTRAMI_ERRORS_HPP
