#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace catzero {

/// A point does not belong to the space it was used with.
class InvalidPointError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the domain of an operation (t outside [0,1], empty input, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Rejected construction of a measure, tree or mm-space.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedOperationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Brute-force enumeration requested on an instance above the size cap.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Iterative solver stopped without meeting its tolerance. Carries the best
/// iterate seen (ambient coordinates) and its gradient norm.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> best_iterate,
                   double gradient_norm)
      : std::runtime_error(what),
        best_iterate_(std::move(best_iterate)),
        gradient_norm_(gradient_norm) {}

  const std::vector<double>& best_iterate() const noexcept { return best_iterate_; }
  double gradient_norm() const noexcept { return gradient_norm_; }

 private:
  std::vector<double> best_iterate_;
  double gradient_norm_;
};

}  // namespace catzero
