#ifndef FRACVEL_ERRORS_HPP
#define FRACVEL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracvel {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluation outside a function's domain (0^negative, division by zero, ...).
class DomainError : public Error {
  public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// Abscissa outside the range covered by a sampled signal.
class RangeError : public Error {
  public:
    explicit RangeError(const std::string& msg) : Error(msg) {}
};

/// Invalid parameter value (ladder shape, cusp exponent, ...).
class ParameterError : public Error {
  public:
    explicit ParameterError(const std::string& msg) : Error(msg) {}
};

/// Expression text could not be parsed; `position` is a byte offset into the source.
class ParseError : public Error {
  public:
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

/// Symbolic differentiation hit a node it cannot handle.
class NotDifferentiableError : public Error {
  public:
    explicit NotDifferentiableError(const std::string& msg) : Error(msg) {}
};

/// Fewer usable ladder points than the classifier needs.
class InsufficientDataError : public Error {
  public:
    explicit InsufficientDataError(const std::string& msg) : Error(msg) {}
};

/// All oscillation windows were empty: the function is constant at this resolution.
class FlatSignalError : public Error {
  public:
    explicit FlatSignalError(const std::string& msg) : Error(msg) {}
};

/// A real-valued quantity was requested but evaluation produced a complex value.
class NotRealError : public Error {
  public:
    explicit NotRealError(const std::string& msg) : Error(msg) {}
};

}  // namespace fracvel

#endif  // FRACVEL_ERRORS_HPP
