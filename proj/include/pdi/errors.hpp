// errors.hpp
// Exception types thrown by the library.
#ifndef PDI_ERRORS_HPP
#define PDI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pdi {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file (carries line/field context in the message).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input uses a feature the reader deliberately does not handle.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Mismatched dimensions or row layouts between related objects.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure (singular basis, iteration limit, lost precision).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A documented operation precondition does not hold for the given inputs.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

} // namespace pdi

#endif
