#pragma once

#include "triplekit/tripotent.hpp"

namespace triplekit {

// The pure atom phi_v attached to a minimal tripotent v: the unique norm-one
// functional with phi_v(v) = 1 whose support projection is v. In coordinates
// it evaluates as phi_v(x) = <x,v> / <v,v> for the reference inner product.
struct PureAtom {
  Tripotent support;
  double normalizer;  // <v,v>, real and positive
};

// Throws ZeroTripotent for the zero tripotent and NotMinimal otherwise when
// dim E_2(v) exceeds one.
PureAtom pure_atom(const Tripotent& v, const ToleranceConfig& tol = {});

// Evaluates phi_v(x) through the closed form and cross-checks it against the
// independent Peirce route <Q(v)^2 x, v> / <v,v>. Disagreement beyond
// identity_tol scaled by (1 + ||x||) raises NumericalInconsistency.
cplx eval_atom(const PureAtom& atom, const Element& x, const ToleranceConfig& tol = {});

// Triple transition pseudo-probability ttp(e, v) = phi_v(e) between minimal
// tripotents. Complex in general; swapping the arguments conjugates it.
cplx ttp(const Tripotent& e, const Tripotent& v, const ToleranceConfig& tol = {});

// Classical transition probability tr(p q) between minimal projections of a
// square type1 factor. Validates that both inputs are self-adjoint,
// idempotent, and of unit trace before evaluating.
double transition_probability(const Element& p, const Element& q,
                              const ToleranceConfig& tol = {});

}  // namespace triplekit
