#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "triplekit/parallel.hpp"
#include "triplekit/tripotent.hpp"

namespace triplekit {

enum class Linearity { linear, conjugate_linear };

// A linear (or conjugate-linear) map between factors, stored as its matrix in
// the orthonormal coordinate bases: matrix is dst.dim() x src.dim().
struct LinearOperator {
  FactorDescriptor src;
  FactorDescriptor dst;
  cmat matrix;
  Linearity linearity = Linearity::linear;

  Element apply(const Element& x) const;
  // Inverse operator; throws DimensionMismatch for non-square maps and
  // SingularOperator when the smallest singular value falls below
  // 1e-12 of the largest.
  LinearOperator inverse() const;
};

// Builds the matrix of an action column by column from the coordinate basis.
LinearOperator operator_from_action(const FactorDescriptor& src, const FactorDescriptor& dst,
                                    const std::function<Element(const Element&)>& action,
                                    Linearity linearity = Linearity::linear);

// A map defined on minimal tripotents, given by lookup pairs, a callable, or
// both. Lookups match an input against the table within distance 1e-6.
struct MapOnMinimals {
  FactorDescriptor src;
  FactorDescriptor dst;
  std::vector<std::pair<Tripotent, Tripotent>> table;
  std::function<Tripotent(const Tripotent&)> callable;  // may be empty

  // Callable when present, table lookup otherwise; throws MissingImage when
  // neither yields an image.
  Tripotent image_of(const Tripotent& e) const;
};

// A basis of the factor made of minimal tripotents:
//   type1  matrix units E_ij
//   type2  E_ij - E_ji for i < j
//   type3  E_ii and (e_i + e_j)(e_i + e_j)^T / 2 for i < j
//   spin   (f_1 + i f_2)/2, (f_1 - i f_2)/2, then (f_1 + i f_k)/2 for k >= 3
// The construction is rank-certified (smallest singular value of the
// coordinate matrix above 1e-8 of the largest) and throws
// BasisConstructionFailed otherwise.
std::vector<Tripotent> minimal_basis(const FactorDescriptor& factor,
                                     const ToleranceConfig& tol = {});

// The unique linear extension of a map on minimal tripotents: images of the
// minimal basis are assembled into Y and the extension is Y B^{-1} for the
// basis coordinate matrix B. Throws MissingImage when the map cannot produce
// an image for a basis tripotent.
LinearOperator extend_to_socle(const MapOnMinimals& map, const ToleranceConfig& tol = {});

struct WellDefinedReport {
  double max_residual = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Compares op against the map on freshly sampled random minimal tripotents;
// requires a callable map. Residuals are distances between op(e) and the
// mapped image.
WellDefinedReport check_welldefined(const MapOnMinimals& map, const LinearOperator& op,
                                    std::uint64_t samples, std::uint64_t seed,
                                    Exec exec = Exec::serial, const ToleranceConfig& tol = {});

// Same comparison over the stored table pairs.
WellDefinedReport check_welldefined_table(const MapOnMinimals& map, const LinearOperator& op,
                                          const ToleranceConfig& tol = {});

struct TtpReport {
  double max_deviation = 0.0;
  std::uint64_t pairs = 0;
  // Samples whose images failed to be minimal tripotents; they contribute no
  // deviation but signal that op does not send minimal tripotents to minimal
  // tripotents.
  std::uint64_t bad_images = 0;
  std::uint64_t seed = 0;
};

// Samples pairs (e, v) of random minimal tripotents and compares
// ttp(op e, op v) against ttp(e, v).
TtpReport check_ttp_preserving(const LinearOperator& op, std::uint64_t pairs, std::uint64_t seed,
                               Exec exec = Exec::serial, const ToleranceConfig& tol = {});

struct OrthogonalityReport {
  double max_violation = 0.0;
  std::uint64_t pairs_tested = 0;
  // Samples where the source factor offered no orthogonal partner (complete
  // minimal tripotents, as in rank-one factors).
  std::uint64_t without_partner = 0;
  std::uint64_t bad_images = 0;
  std::uint64_t seed = 0;
};

// Samples orthogonal pairs (e, f) of minimal tripotents and measures how far
// the images are from staying orthogonal.
OrthogonalityReport check_orthogonality_preserving(const LinearOperator& op,
                                                   std::uint64_t samples, std::uint64_t seed,
                                                   Exec exec = Exec::serial,
                                                   const ToleranceConfig& tol = {});

struct IsomorphismReport {
  // Worst distance between op{x,y,z} and {op x, op y, op z} over unit-norm
  // samples.
  double morphism_residual = 0.0;
  // Worst defect | ||op x|| - 1 | over unit-norm samples. By the isometry
  // characterization of triple isomorphisms, both residuals are small or
  // neither is.
  double isometry_residual = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Certifies a candidate triple isomorphism by sampling both the morphism
// identity and the isometry property.
IsomorphismReport certify_triple_isomorphism(const LinearOperator& op, std::uint64_t samples,
                                             std::uint64_t seed, Exec exec = Exec::serial,
                                             const ToleranceConfig& tol = {});

struct SphereExtension {
  LinearOperator op;
  // Worst disagreement between source and image Gram matrices.
  double max_gram_defect = 0.0;
  // Worst distance between op(x_i) and the prescribed image y_i.
  double max_consistency_residual = 0.0;
  // Worst deviation of a singular value of op from one.
  double isometry_defect = 0.0;
};

// Extends a map given on unit-sphere sample points to a linear operator.
// Requires all points to be unit vectors (InvalidSpec), the two Gram matrices
// to agree within norm_tol (InnerProductMismatch), and the sources to span
// the factor (BasisConstructionFailed). A maximal independent subset is
// selected greedily by modified Gram-Schmidt; matching Gram matrices then
// force the extension to reproduce every listed pair.
SphereExtension extend_sphere_map(const std::vector<std::pair<Element, Element>>& pairs,
                                  const ToleranceConfig& tol = {});

struct ScaleRecovery {
  // Norm of the image of the first sampled minimal tripotent; for a scaled
  // isometry this is the scale factor.
  double gamma = 0.0;
  // Worst spread | ||op e|| - gamma | over sampled minimal tripotents.
  double max_norm_spread = 0.0;
  // Worst orthogonality defect between images of orthogonal pairs.
  double max_orthogonality_violation = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Recovers the scale of a map that is promised to preserve orthogonality of
// minimal tripotents, and verifies the promise on sampled minimal tripotents
// and orthogonal pairs. Violations raise NotOrthogonalityPreserving.
ScaleRecovery orthogonality_scale(const LinearOperator& op, std::uint64_t samples,
                                  std::uint64_t seed, const ToleranceConfig& tol = {});

}  // namespace triplekit
