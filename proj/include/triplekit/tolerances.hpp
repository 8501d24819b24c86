#pragma once

#include "triplekit/errors.hpp"

namespace triplekit {

// Numerical thresholds shared across the library. All checks that accept a
// tolerance take this struct so callers can tighten or relax uniformly.
struct ToleranceConfig {
  // Absolute residual below which an algebraic identity is considered to hold.
  double identity_tol = 1e-9;
  // Relative Frobenius tolerance for unitarity and isometry certificates.
  double norm_tol = 1e-8;
  // Half-width for snapping eigenvalues of L(e,e) onto {0, 1/2, 1}. Must stay
  // below 1/4 so the three Peirce clusters cannot overlap.
  double eig_cluster_tol = 1e-7;

  void validate() const {
    if (identity_tol <= 0 || norm_tol <= 0 || eig_cluster_tol <= 0) {
      throw InvalidSpec("tolerances must be positive");
    }
    if (eig_cluster_tol >= 0.25) {
      throw InvalidSpec("eig_cluster_tol must be below 0.25 to separate Peirce eigenvalues");
    }
  }
};

}  // namespace triplekit
