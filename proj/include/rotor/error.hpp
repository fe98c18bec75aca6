#pragma once

#include <stdexcept>
#include <string>

namespace rotor {

/// Input outside its admissible range. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed (non-convergence, blow-up, unresolved
/// field, non-finite values). `kind()` is a short machine-readable tag such
/// as "escaped_ball" or "collapsed_to_minimizer". Exit code 3.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

}  // namespace rotor
