#pragma once

#include <stdexcept>
#include <string>

#include "bcgame/linalg.hpp"

namespace bcgame {

/// Malformed or inconsistent input (maps to CLI exit code 1).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative method stopped without meeting its tolerance (exit code 2).
/// Carries the last iterate so callers can inspect where it stalled.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, Profile last_iterate, double residual)
      : std::runtime_error(what), last_iterate_(std::move(last_iterate)), residual_(residual) {}

  const Profile& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }

 private:
  Profile last_iterate_;
  double residual_;
};

/// A computed object failed a post-condition check (exit code 3).
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bcgame
