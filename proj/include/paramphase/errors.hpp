#pragma once

#include <stdexcept>
#include <string>

namespace paramphase {

// Malformed or inconsistent input (bad shapes, non-unital tensors, broken files).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed input on which a computation cannot succeed
// (not primitive, no convergence, not exact, ...).
class ComputationError : public std::runtime_error {
 public:
  explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

// Default thresholds. Algebraic identities use `algebraic`, anything coming out
// of an eigen-decomposition uses `spectral`.
struct Tolerances {
  double algebraic = 1e-10;
  double spectral = 1e-8;
};

}  // namespace paramphase
