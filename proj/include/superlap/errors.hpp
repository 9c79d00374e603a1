#pragma once

#include <stdexcept>
#include <string>

namespace superlap {

/// Invalid arguments to a library call (bad s, points inside the domain, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The data (f, g, h) violate the balance condition required for solvability.
class CompatibilityError : public std::runtime_error {
 public:
  CompatibilityError(const std::string& what, double defect)
      : std::runtime_error(what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

/// A dense factorization broke down.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested quantity is infinite (e.g. Per_s of an interval for s >= 1/2).
class FinitenessError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The truncated exterior integral could not be closed within budget.
class TailError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration text could not be parsed or validated.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace superlap
