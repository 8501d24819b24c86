#pragma once

#include <string>

#include "triplekit/extension.hpp"

namespace triplekit {

enum class PreserverCase { A, B };

const char* case_name(PreserverCase kase);

// Two-sided unitary multiplication data for a rectangular factor preserver.
// Case A sends x to u x v*, case B sends x to u x^T v*. For an m x n source
// the carriers are m x m and n x n in case A, and n x n and m x m in case B,
// where the target factor is type1(n, m).
struct Type1PreserverSpec {
  PreserverCase kase = PreserverCase::A;
  FactorDescriptor src = FactorDescriptor::type1(2, 2);
  cmat u;
  cmat v;

  FactorDescriptor dst() const;
  // Shape and unitarity checks; case analysis needs both sides of the
  // rectangle at least two, so smaller factors are rejected as InvalidSpec.
  void validate(const ToleranceConfig& tol = {}) const;
};

// Spin factor automorphism: a real orthogonal rotation composed with a global
// unimodular phase.
struct SpinAutSpec {
  FactorDescriptor src = FactorDescriptor::spin(3);
  rmat rotation;
  cplx phase = cplx(1.0, 0.0);

  void validate(const ToleranceConfig& tol = {}) const;
};

// A preserver bundled as both a linear operator and a map on minimal
// tripotents (table over the minimal basis plus a callable).
struct GeneratedPreserver {
  LinearOperator op;
  MapOnMinimals map;
};

GeneratedPreserver make_type1_preserver(const Type1PreserverSpec& spec,
                                        const ToleranceConfig& tol = {});
GeneratedPreserver make_spin_automorphism(const SpinAutSpec& spec,
                                          const ToleranceConfig& tol = {});

Type1PreserverSpec random_type1_preserver_spec(PreserverCase kase, int m, int n, Rng& rng);
SpinAutSpec random_spin_automorphism_spec(int n, Rng& rng);

// Congruence automorphism x -> u x u^T of a skew or symmetric matrix factor
// for a unitary u.
LinearOperator make_congruence_automorphism(const FactorDescriptor& factor, const cmat& u,
                                            const ToleranceConfig& tol = {});

struct RankOneFactorization {
  PreserverCase kase = PreserverCase::A;
  cmat u;
  cmat v;
  // Worst distance between an image of a matrix unit and its rebuilt form.
  double residual = 0.0;
  std::string gauge_note;
};

// Recovers the two-sided multiplication form of a bijective linear map
// between rectangular factors that preserves rank-one elements in both
// directions. The case is detected from whether the images of E_11 and E_12
// share their left or their right singular direction; when both overlaps are
// inconclusive each case is reconstructed and the smaller residual wins.
// Carriers are rebuilt from the single anchor image of E_11 and gauge-fixed
// by rotating the largest-modulus entry of u onto the positive real axis.
// Throws SingularOperator, NotRankOnePreserving, or FactorizationInconsistent
// as the corresponding stage fails. Rank-one probing beyond the basis uses a
// fixed internal seed so results are reproducible.
RankOneFactorization factor_rank_one_preserver(const LinearOperator& op,
                                               const ToleranceConfig& tol = {});

struct AutomorphismClassification {
  RankOneFactorization factorization;
  double unitarity_defect_u = 0.0;
  double unitarity_defect_v = 0.0;
  // Worst sampled distance between op(x) and the rebuilt two-sided form.
  double reconstruction_residual = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Factorizes op and additionally requires both carriers to be unitary within
// norm_tol (scaled by the carrier size), throwing NotUnitary otherwise.
AutomorphismClassification classify_type1_automorphism(const LinearOperator& op,
                                                       std::uint64_t samples, std::uint64_t seed,
                                                       const ToleranceConfig& tol = {});

}  // namespace triplekit
