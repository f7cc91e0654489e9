#pragma once

#include <stdexcept>
#include <string>

namespace kign {

// Input outside an operation's mathematical domain (t >= T, a >= b, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A solver configuration that cannot run (stability budget, empty grid).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Quadrature or sampling failed to reach its target accuracy.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved, double requested)
      : std::runtime_error(what), achieved_(achieved), requested_(requested) {}

  double achieved() const noexcept { return achieved_; }
  double requested() const noexcept { return requested_; }

 private:
  double achieved_;
  double requested_;
};

}  // namespace kign
