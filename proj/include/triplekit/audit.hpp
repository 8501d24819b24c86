#pragma once

#include <cstdint>

#include "triplekit/factor.hpp"
#include "triplekit/parallel.hpp"

namespace triplekit {

// Sampled residuals for the three defining JB*-triple axioms.
struct AxiomReport {
  // Worst Frobenius defect of the commutation identity
  // L(a,b)L(x,y) - L(x,y)L(a,b) - L(L(a,b)x, y) + L(x, L(b,a)y) = 0
  // as coordinate matrices, over unit-norm samples.
  double jordan_residual_max = 0.0;
  // Worst Frobenius defect of Hermitianity of the matrix of L(a,a) in the
  // orthonormal coordinate basis.
  double l_selfadjoint_residual_max = 0.0;
  // Smallest eigenvalue of any sampled L(a,a); must not be materially below
  // zero.
  double l_min_eigenvalue = 0.0;
  // Worst relative defect of | ||{a,a,a}|| - ||a||^3 | / (1 + ||a||^3) with
  // unnormalized Gaussian a.
  double cube_norm_residual_max = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Draws `samples` independent tuples from the factor and measures the worst
// axiom defects. Results are identical for both execution policies.
AxiomReport audit_axioms(const FactorDescriptor& factor, std::uint64_t samples,
                         std::uint64_t seed, Exec exec = Exec::serial);

}  // namespace triplekit
