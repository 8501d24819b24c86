#include "triplekit/transition.hpp"

#include <cmath>

namespace triplekit {

namespace {

void check_projection(const Element& p, const ToleranceConfig& tol) {
  const cmat& a = p.data;
  if ((a - a.adjoint()).norm() > tol.identity_tol) {
    throw NotAProjection("matrix is not self-adjoint");
  }
  if ((a * a - a).norm() > tol.identity_tol) {
    throw NotAProjection("matrix is not idempotent");
  }
  cplx tr = a.trace();
  if (std::abs(tr - cplx(1.0, 0.0)) > tol.identity_tol) {
    throw NotAProjection("projection is not minimal; trace is not one");
  }
}

}  // namespace

PureAtom pure_atom(const Tripotent& v, const ToleranceConfig& tol) {
  if (jb_norm(v.element()) < 0.5) {
    throw ZeroTripotent("the zero tripotent supports no atom");
  }
  if (!is_minimal(v, tol)) {
    throw NotMinimal("atoms attach to minimal tripotents only");
  }
  double normalizer = reference_inner(v.element(), v.element()).real();
  return {v, normalizer};
}

cplx eval_atom(const PureAtom& atom, const Element& x, const ToleranceConfig& tol) {
  const Element& v = atom.support.element();
  if (x.factor != v.factor) {
    throw MixedFactorError("atom and argument live in different factors");
  }
  cplx direct = reference_inner(x, v) / atom.normalizer;
  Element qx = triple_product(v, x, v);
  Element qqx = triple_product(v, qx, v);
  cplx peirce_route = reference_inner(qqx, v) / atom.normalizer;
  if (std::abs(direct - peirce_route) > tol.identity_tol * (1.0 + jb_norm(x))) {
    throw NumericalInconsistency("atom evaluations disagree between the inner-product and Peirce routes");
  }
  return direct;
}

cplx ttp(const Tripotent& e, const Tripotent& v, const ToleranceConfig& tol) {
  if (e.factor() != v.factor()) {
    throw MixedFactorError("transition pseudo-probabilities need both tripotents in one factor");
  }
  if (jb_norm(e.element()) < 0.5) {
    throw ZeroTripotent("the zero tripotent has no transition pseudo-probabilities");
  }
  if (!is_minimal(e, tol)) {
    throw NotMinimal("transition pseudo-probabilities are defined between minimal tripotents");
  }
  return eval_atom(pure_atom(v, tol), e.element(), tol);
}

double transition_probability(const Element& p, const Element& q, const ToleranceConfig& tol) {
  if (p.factor.kind != FactorKind::type1) {
    throw UnsupportedForFactor("transition probabilities are evaluated in matrix factors");
  }
  if (p.factor.m != p.factor.n) {
    throw UnsupportedForFactor("projections need a square matrix factor");
  }
  if (p.factor != q.factor) {
    throw MixedFactorError("both projections must live in the same factor");
  }
  check_projection(p, tol);
  check_projection(q, tol);
  return (q.data.adjoint() * p.data).trace().real();
}

}  // namespace triplekit
