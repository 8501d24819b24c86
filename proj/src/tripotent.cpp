#include "triplekit/tripotent.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <utility>

namespace triplekit {

namespace {

// Parts whose coefficient falls below this fraction of the largest one are
// treated as numerically zero and dropped.
constexpr double kCoefCutoffRel = 1e-12;

cvec gaussian_cvec(int n, Rng& rng) {
  cvec v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.complex_gaussian();
  return v;
}

rvec gaussian_rvec(int n, Rng& rng) {
  rvec v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.gaussian();
  return v;
}

cvec unit_cvec(int n, Rng& rng) {
  for (;;) {
    cvec v = gaussian_cvec(n, rng);
    double norm = v.norm();
    if (norm > 1e-6) return v / norm;
  }
}

// Complex orthonormal pair; needs n >= 2.
std::pair<cvec, cvec> orthonormal_pair(int n, Rng& rng) {
  cvec a = unit_cvec(n, rng);
  for (;;) {
    cvec b = gaussian_cvec(n, rng);
    b -= a * a.dot(b);
    double norm = b.norm();
    if (norm > 1e-6) return {a, b / norm};
  }
}

// Real orthonormal pair; needs n >= 2.
std::pair<rvec, rvec> real_orthonormal_pair(int n, Rng& rng) {
  rvec a;
  for (;;) {
    a = gaussian_rvec(n, rng);
    double norm = a.norm();
    if (norm > 1e-6) {
      a /= norm;
      break;
    }
  }
  for (;;) {
    rvec b = gaussian_rvec(n, rng);
    b -= a * a.dot(b);
    double norm = b.norm();
    if (norm > 1e-6) return {a, b / norm};
  }
}

cvec spin_minimal_data(const rvec& a, const rvec& b) {
  return 0.5 * (a.cast<cplx>() + cplx(0.0, 1.0) * b.cast<cplx>());
}

struct RawPart {
  double coef;
  Element e;
};

std::vector<RawPart> decompose_type1(const Element& x) {
  Eigen::JacobiSVD<cmat> svd(x.data, Eigen::ComputeThinU | Eigen::ComputeThinV);
  rvec s = svd.singularValues();
  std::vector<RawPart> parts;
  if (s.size() == 0 || s(0) <= 0) return parts;
  double cutoff = kCoefCutoffRel * s(0);
  for (int i = 0; i < s.size(); ++i) {
    if (s(i) <= cutoff) break;
    cmat data = svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
    parts.push_back({s(i), make_element(x.factor, data)});
  }
  return parts;
}

// Takagi factorization of a complex symmetric matrix through the real
// symmetric embedding of the conjugate-linear map v -> A conj(v). Each
// eigenvector w of the embedding with eigenvalue mu > 0 yields a unit vector
// u = w_head + i w_tail with A conj(u) = mu u, and the positive eigenpairs
// reassemble A as sum mu_i u_i u_i^T.
std::vector<RawPart> decompose_type3(const Element& x) {
  int n = x.factor.n;
  rmat a1 = x.data.real();
  rmat a2 = x.data.imag();
  rmat s(2 * n, 2 * n);
  s.topLeftCorner(n, n) = a1;
  s.topRightCorner(n, n) = a2;
  s.bottomLeftCorner(n, n) = a2;
  s.bottomRightCorner(n, n) = -a1;
  Eigen::SelfAdjointEigenSolver<rmat> eig(s);
  const rvec& vals = eig.eigenvalues();
  std::vector<RawPart> parts;
  double top = std::max(std::abs(vals(0)), std::abs(vals(2 * n - 1)));
  if (top <= 0) return parts;
  double cutoff = kCoefCutoffRel * top;
  for (int k = 2 * n - 1; k >= 0 && vals(k) > cutoff; --k) {
    rvec w = eig.eigenvectors().col(k);
    cvec u = w.head(n).cast<cplx>() + cplx(0.0, 1.0) * w.tail(n).cast<cplx>();
    parts.push_back({vals(k), make_element(x.factor, u * u.transpose())});
  }
  return parts;
}

// Youla-style pairing for skew-symmetric A. Nonzero singular values come in
// equal pairs; inside each pair space, a left singular vector a pairs with
// b = A conj(a)/sigma, giving the part sigma (b a^T - a b^T) and leaving an
// invariant complement that is deflated by modified Gram-Schmidt. The SVD is
// taken on A itself so tiny singular values keep absolute accuracy, and the
// values are clustered because the solver may mix the vectors of a pair
// arbitrarily within a degenerate subspace.
std::vector<RawPart> decompose_type2(const Element& x) {
  int n = x.factor.n;
  const cmat& a_mat = x.data;
  Eigen::JacobiSVD<cmat> svd(a_mat, Eigen::ComputeFullU);
  const rvec& sig = svd.singularValues();
  std::vector<RawPart> parts;
  double smax = sig(0);
  if (smax <= 0) return parts;
  double cutoff = kCoefCutoffRel * smax;
  double cluster_gap = 1e-8 * smax;

  std::vector<std::vector<int>> clusters;
  double prev_sigma = -1.0;
  for (int k = 0; k < n; ++k) {
    double sigma = sig(k);
    if (sigma <= cutoff) break;
    if (clusters.empty() || prev_sigma - sigma > cluster_gap) clusters.emplace_back();
    clusters.back().push_back(k);
    prev_sigma = sigma;
  }

  for (const std::vector<int>& cluster : clusters) {
    cmat q(n, cluster.size());
    for (std::size_t c = 0; c < cluster.size(); ++c) q.col(c) = svd.matrixU().col(cluster[c]);
    while (q.cols() > 0) {
      if (q.cols() == 1) {
        throw DecompositionFailed("skew eigenvalue cluster has odd dimension");
      }
      cvec a = q.col(0);
      cvec c = a_mat * a.conjugate();
      double sigma = c.norm();
      if (sigma <= cutoff) {
        throw DecompositionFailed("skew pairing produced a null direction");
      }
      cvec b = c / sigma;
      parts.push_back({sigma, make_element(x.factor, b * a.transpose() - a * b.transpose())});

      std::vector<cvec> kept;
      for (int j = 1; j < q.cols(); ++j) {
        cvec v = q.col(j);
        v -= b * b.dot(v);
        v -= a * a.dot(v);
        for (const cvec& u : kept) v -= u * u.dot(v);
        double norm = v.norm();
        if (norm > 1e-6) kept.push_back(v / norm);
      }
      if (static_cast<Eigen::Index>(kept.size()) != q.cols() - 2) {
        throw DecompositionFailed("skew eigenspace pairing lost orthogonality");
      }
      cmat next(n, kept.size());
      for (std::size_t j = 0; j < kept.size(); ++j) next.col(j) = kept[j];
      q = next;
    }
  }
  return parts;
}

// A spin element lives in the complex span of two real orthonormal vectors;
// relative to the minimal tripotents v = (a + i b)/2 and conj(v) it splits
// exactly as x = (c_a - i c_c) v + (c_a + i c_c) conj(v) with c_a = <x,a>,
// c_c = <x,b>, after which the complex coefficients fold their phases into
// the tripotents.
std::vector<RawPart> decompose_spin(const Element& x) {
  int n = x.factor.n;
  cvec v = x.data.col(0);
  rvec xr = v.real();
  rvec xi = v.imag();
  double nr = xr.norm();
  double ni = xi.norm();
  std::vector<RawPart> parts;
  if (std::max(nr, ni) <= 0) return parts;

  rvec ahat = (nr >= ni) ? rvec(xr / nr) : rvec(xi / ni);
  rvec other = (nr >= ni) ? xi : xr;
  rvec rem = other - ahat * ahat.dot(other);
  rvec bhat;
  if (rem.norm() > 1e-12 * (nr + ni)) {
    bhat = rem / rem.norm();
  } else {
    // Degenerate span: complete with the standard basis direction least
    // aligned with ahat so the choice is deterministic.
    int least = 0;
    for (int k = 1; k < n; ++k) {
      if (std::abs(ahat(k)) < std::abs(ahat(least))) least = k;
    }
    rvec e_least = rvec::Zero(n);
    e_least(least) = 1.0;
    rvec fallback = e_least - ahat * ahat(least);
    bhat = fallback / fallback.norm();
  }

  cvec ac = ahat.cast<cplx>();
  cvec bc = bhat.cast<cplx>();
  cplx ca = spin_inner(v, ac);
  cplx cc = spin_inner(v, bc);
  cvec vplus = 0.5 * (ac + cplx(0.0, 1.0) * bc);
  cvec vminus = vplus.conjugate();
  cplx coef_plus = ca - cplx(0.0, 1.0) * cc;
  cplx coef_minus = ca + cplx(0.0, 1.0) * cc;

  auto push = [&](cplx coef, const cvec& base) {
    double mag = std::abs(coef);
    if (mag <= 0) return;
    parts.push_back({mag, make_element(x.factor, (coef / mag) * base)});
  };
  push(coef_plus, vplus);
  push(coef_minus, vminus);
  return parts;
}

}  // namespace

bool is_tripotent(const Element& e, const ToleranceConfig& tol) {
  return jb_norm(triple_product(e, e, e) - e) <= tol.identity_tol;
}

PeirceDecomposition peirce(const Element& e, const ToleranceConfig& tol) {
  tol.validate();
  if (!is_tripotent(e, tol)) {
    throw NotATripotent("cube identity fails for a " + e.factor.to_string() + " element");
  }
  int d = e.factor.dim();
  cmat l = l_operator_matrix(e, e);
  Eigen::SelfAdjointEigenSolver<cmat> eig(0.5 * (l + l.adjoint()));
  rvec vals = eig.eigenvalues();

  std::array<std::vector<int>, 3> members;
  for (int k = 0; k < d; ++k) {
    int best = 0;
    double best_dist = std::abs(vals(k));
    for (int j = 1; j <= 2; ++j) {
      double dist = std::abs(vals(k) - 0.5 * j);
      if (dist < best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    if (best_dist > tol.eig_cluster_tol) {
      throw PeirceClusterError("eigenvalue " + std::to_string(vals(k)) +
                               " of L(e,e) is not near 0, 1/2, or 1");
    }
    members[best].push_back(k);
  }

  PeirceDecomposition pd{e.factor, {}, {}, vals};
  for (int j = 0; j < 3; ++j) {
    cmat basis(d, members[j].size());
    for (std::size_t c = 0; c < members[j].size(); ++c) basis.col(c) = eig.eigenvectors().col(members[j][c]);
    pd.bases[j] = basis;
    pd.projectors[j] = basis * basis.adjoint();
  }
  return pd;
}

Element peirce_project(const PeirceDecomposition& pd, const Element& x, int k) {
  if (k < 0 || k > 2) throw InvalidSpec("Peirce index must be 0, 1, or 2");
  if (x.factor != pd.factor) {
    throw MixedFactorError("element and Peirce data live in different factors");
  }
  return element_from_coords(pd.factor, pd.projectors[k] * coords(x));
}

Tripotent::Tripotent(const Element& e, const ToleranceConfig& tol) : element_(e) {
  tol.validate();
  double defect = jb_norm(triple_product(e, e, e) - e);
  if (defect > tol.identity_tol) {
    throw NotATripotent("cube identity fails with residual " + std::to_string(defect));
  }
}

const PeirceDecomposition& Tripotent::peirce_data(const ToleranceConfig& tol) const {
  if (!cache_) cache_ = std::make_shared<const PeirceDecomposition>(peirce(element_, tol));
  return *cache_;
}

bool is_minimal(const Tripotent& e, const ToleranceConfig& tol) {
  if (jb_norm(e.element()) < 0.5) return false;  // nonzero tripotents have norm one
  return e.peirce_data(tol).dims()[2] == 1;
}

bool is_complete(const Tripotent& e, const ToleranceConfig& tol) {
  return e.peirce_data(tol).dims()[0] == 0;
}

bool is_unitary_tripotent(const Tripotent& e, const ToleranceConfig& tol) {
  return e.peirce_data(tol).dims()[2] == e.factor().dim();
}

bool are_orthogonal(const Tripotent& e, const Tripotent& f, const ToleranceConfig& tol) {
  return jb_norm(triple_product(e.element(), e.element(), f.element())) <= tol.identity_tol &&
         jb_norm(triple_product(f.element(), f.element(), e.element())) <= tol.identity_tol;
}

bool leq(const Tripotent& e, const Tripotent& f, const ToleranceConfig& tol) {
  Element diff = f.element() - e.element();
  if (!is_tripotent(diff, tol)) return false;
  return are_orthogonal(e, Tripotent(diff, tol), tol);
}

Tripotent random_minimal_tripotent(const FactorDescriptor& factor, Rng& rng,
                                   const ToleranceConfig& tol) {
  cmat data;
  switch (factor.kind) {
    case FactorKind::type1: {
      cvec xi = unit_cvec(factor.m, rng);
      cvec eta = unit_cvec(factor.n, rng);
      data = xi * eta.adjoint();
      break;
    }
    case FactorKind::type2: {
      auto [a, b] = orthonormal_pair(factor.n, rng);
      data = b * a.transpose() - a * b.transpose();
      break;
    }
    case FactorKind::type3: {
      cvec u = unit_cvec(factor.n, rng);
      data = u * u.transpose();
      break;
    }
    case FactorKind::spin: {
      auto [a, b] = real_orthonormal_pair(factor.n, rng);
      data = spin_minimal_data(a, b);
      break;
    }
  }
  return Tripotent(make_element(factor, data), tol);
}

Tripotent random_tripotent(const FactorDescriptor& factor, int rank, Rng& rng,
                           const ToleranceConfig& tol) {
  if (rank < 0 || rank > factor.rank()) {
    throw InvalidSpec("rank must lie in [0, " + std::to_string(factor.rank()) + "] for " +
                      factor.to_string());
  }
  if (rank == 0) return Tripotent(zero_element(factor), tol);
  cmat data = cmat::Zero(factor.rows(), factor.cols());
  switch (factor.kind) {
    case FactorKind::type1: {
      cmat u = random_unitary(factor.m, rng);
      cmat v = random_unitary(factor.n, rng);
      for (int i = 0; i < rank; ++i) data += u.col(i) * v.col(i).adjoint();
      break;
    }
    case FactorKind::type2: {
      cmat u = random_unitary(factor.n, rng);
      for (int i = 0; i < rank; ++i) {
        cvec a = u.col(2 * i);
        cvec b = u.col(2 * i + 1);
        data += b * a.transpose() - a * b.transpose();
      }
      break;
    }
    case FactorKind::type3: {
      cmat u = random_unitary(factor.n, rng);
      for (int i = 0; i < rank; ++i) data += u.col(i) * u.col(i).transpose();
      break;
    }
    case FactorKind::spin: {
      auto [a, b] = real_orthonormal_pair(factor.n, rng);
      cvec v = spin_minimal_data(a, b);
      if (rank == 1) {
        data = v;
      } else {
        double theta = 2.0 * 3.14159265358979323846 * rng.uniform();
        cplx mu(std::cos(theta), std::sin(theta));
        data = v + mu * v.conjugate();
      }
      break;
    }
  }
  return Tripotent(make_element(factor, data), tol);
}

std::vector<WeightedTripotent> minimal_orthogonal_decomposition(const Element& x,
                                                                const ToleranceConfig& tol) {
  tol.validate();
  std::vector<RawPart> raw;
  switch (x.factor.kind) {
    case FactorKind::type1:
      raw = decompose_type1(x);
      break;
    case FactorKind::type2:
      raw = decompose_type2(x);
      break;
    case FactorKind::type3:
      raw = decompose_type3(x);
      break;
    case FactorKind::spin:
      raw = decompose_spin(x);
      break;
  }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const RawPart& p, const RawPart& q) { return p.coef > q.coef; });

  std::vector<WeightedTripotent> parts;
  if (!raw.empty()) {
    double cutoff = kCoefCutoffRel * raw.front().coef;
    for (const RawPart& p : raw) {
      if (p.coef > cutoff) parts.push_back({p.coef, Tripotent(p.e, tol)});
    }
  }

  Element recon = zero_element(x.factor);
  for (const WeightedTripotent& p : parts) recon = recon + p.coef * p.tripotent.element();
  double resid = distance(x, recon);
  if (resid > tol.identity_tol * (1.0 + jb_norm(x))) {
    throw DecompositionFailed("reconstruction misses the input by " + std::to_string(resid));
  }
  return parts;
}

std::optional<Tripotent> orthogonal_minimal_partner(const Tripotent& e, Rng& rng,
                                                    const ToleranceConfig& tol) {
  const PeirceDecomposition& pd = e.peirce_data(tol);
  if (pd.dims()[0] == 0) return std::nullopt;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Element g = random_element(e.factor(), rng);
    Element x0 = peirce_project(pd, g, 0);
    if (jb_norm(x0) < 1e-8) continue;
    std::vector<WeightedTripotent> parts = minimal_orthogonal_decomposition(x0, tol);
    if (!parts.empty()) return parts.front().tripotent;
  }
  return std::nullopt;
}

}  // namespace triplekit
