#include "triplekit/preservers.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace triplekit {

namespace {

// Fixed seed for the random rank-one probes so factorization results are
// reproducible run to run.
constexpr std::uint64_t kProbeSeed = 0x72616e6b6f6e65ULL;
constexpr int kRandomProbes = 20;
constexpr double kRankOneRatio = 1e-7;
constexpr double kOverlapThreshold = 1.0 - 1e-6;

void check_unitary(const cmat& u, const ToleranceConfig& tol, const char* what) {
  double defect = (u.adjoint() * u - cmat::Identity(u.cols(), u.cols())).norm();
  if (defect > tol.norm_tol * static_cast<double>(u.rows())) {
    throw NotUnitary(std::string(what) + " is not unitary; defect " + std::to_string(defect));
  }
}

cvec gaussian_unit_cvec(int n, Rng& rng) {
  cvec v(n);
  for (;;) {
    for (int i = 0; i < n; ++i) v(i) = rng.complex_gaussian();
    double norm = v.norm();
    if (norm > 1e-6) return v / norm;
  }
}

MapOnMinimals bundle_map(const FactorDescriptor& src, const FactorDescriptor& dst,
                         const std::function<Element(const Element&)>& action,
                         const ToleranceConfig& tol) {
  MapOnMinimals map;
  map.src = src;
  map.dst = dst;
  map.callable = [action, tol](const Tripotent& e) { return Tripotent(action(e.element()), tol); };
  for (const Tripotent& b : minimal_basis(src, tol)) {
    map.table.emplace_back(b, map.callable(b));
  }
  return map;
}

}  // namespace

const char* case_name(PreserverCase kase) { return kase == PreserverCase::A ? "A" : "B"; }

FactorDescriptor Type1PreserverSpec::dst() const {
  return kase == PreserverCase::A ? src : FactorDescriptor::type1(src.n, src.m);
}

void Type1PreserverSpec::validate(const ToleranceConfig& tol) const {
  if (src.kind != FactorKind::type1) {
    throw InvalidSpec("preserver specs describe rectangular factors");
  }
  if (src.m < 2 || src.n < 2) {
    throw InvalidSpec("preserver case analysis needs m >= 2 and n >= 2");
  }
  int left = (kase == PreserverCase::A) ? src.m : src.n;
  int right = (kase == PreserverCase::A) ? src.n : src.m;
  if (u.rows() != left || u.cols() != left || v.rows() != right || v.cols() != right) {
    throw DimensionMismatch("carrier shapes do not match the factor and case");
  }
  check_unitary(u, tol, "left carrier");
  check_unitary(v, tol, "right carrier");
}

void SpinAutSpec::validate(const ToleranceConfig& tol) const {
  if (src.kind != FactorKind::spin) {
    throw InvalidSpec("spin automorphism specs describe spin factors");
  }
  if (rotation.rows() != src.n || rotation.cols() != src.n) {
    throw DimensionMismatch("rotation shape does not match the factor");
  }
  double defect = (rotation.transpose() * rotation - rmat::Identity(src.n, src.n)).norm();
  if (defect > tol.norm_tol * static_cast<double>(src.n)) {
    throw NotUnitary("rotation is not orthogonal; defect " + std::to_string(defect));
  }
  if (std::abs(std::abs(phase) - 1.0) > tol.norm_tol) {
    throw NotUnitary("phase must be unimodular");
  }
}

GeneratedPreserver make_type1_preserver(const Type1PreserverSpec& spec,
                                        const ToleranceConfig& tol) {
  spec.validate(tol);
  FactorDescriptor dst = spec.dst();
  cmat u = spec.u;
  cmat v = spec.v;
  PreserverCase kase = spec.kase;
  std::function<Element(const Element&)> action = [u, v, kase, dst](const Element& x) {
    cmat image = (kase == PreserverCase::A) ? cmat(u * x.data * v.adjoint())
                                            : cmat(u * x.data.transpose() * v.adjoint());
    return make_element(dst, image);
  };
  LinearOperator op = operator_from_action(spec.src, dst, action);
  return {op, bundle_map(spec.src, dst, action, tol)};
}

GeneratedPreserver make_spin_automorphism(const SpinAutSpec& spec, const ToleranceConfig& tol) {
  spec.validate(tol);
  cmat rot = spec.rotation.cast<cplx>();
  cplx phase = spec.phase;
  FactorDescriptor src = spec.src;
  std::function<Element(const Element&)> action = [rot, phase, src](const Element& x) {
    return make_element(src, cmat(phase * (rot * x.data)));
  };
  LinearOperator op = operator_from_action(src, src, action);
  return {op, bundle_map(src, src, action, tol)};
}

Type1PreserverSpec random_type1_preserver_spec(PreserverCase kase, int m, int n, Rng& rng) {
  Type1PreserverSpec spec;
  spec.kase = kase;
  spec.src = FactorDescriptor::type1(m, n);
  int left = (kase == PreserverCase::A) ? m : n;
  int right = (kase == PreserverCase::A) ? n : m;
  spec.u = random_unitary(left, rng);
  spec.v = random_unitary(right, rng);
  return spec;
}

SpinAutSpec random_spin_automorphism_spec(int n, Rng& rng) {
  SpinAutSpec spec;
  spec.src = FactorDescriptor::spin(n);
  spec.rotation = random_real_orthogonal(n, rng);
  double theta = 2.0 * 3.14159265358979323846 * rng.uniform();
  spec.phase = cplx(std::cos(theta), std::sin(theta));
  return spec;
}

LinearOperator make_congruence_automorphism(const FactorDescriptor& factor, const cmat& u,
                                            const ToleranceConfig& tol) {
  if (factor.kind != FactorKind::type2 && factor.kind != FactorKind::type3) {
    throw UnsupportedForFactor("congruence automorphisms act on skew or symmetric factors");
  }
  if (u.rows() != factor.n || u.cols() != factor.n) {
    throw DimensionMismatch("carrier shape does not match the factor");
  }
  check_unitary(u, tol, "congruence carrier");
  return operator_from_action(factor, factor, [factor, u](const Element& x) {
    return make_element(factor, cmat(u * x.data * u.transpose()));
  });
}

namespace {

Element matrix_unit_element(const FactorDescriptor& f, int i, int j) {
  cmat data = cmat::Zero(f.m, f.n);
  data(i, j) = 1.0;
  return make_element(f, data);
}

void probe_rank_one(const LinearOperator& op, const ToleranceConfig& tol) {
  (void)tol;
  Rng rng(kProbeSeed);
  auto check_image = [&](const Element& x) {
    Element image = op.apply(x);
    Eigen::JacobiSVD<cmat> svd(image.data);
    double s0 = svd.singularValues()(0);
    double s1 = svd.singularValues().size() > 1 ? svd.singularValues()(1) : 0.0;
    if (s0 <= 0 || s1 > kRankOneRatio * s0) {
      throw NotRankOnePreserving("a rank-one element maps to an image of higher rank");
    }
  };
  for (int i = 0; i < op.src.m; ++i) {
    for (int j = 0; j < op.src.n; ++j) check_image(matrix_unit_element(op.src, i, j));
  }
  for (int k = 0; k < kRandomProbes; ++k) {
    cvec xi = gaussian_unit_cvec(op.src.m, rng);
    cvec eta = gaussian_unit_cvec(op.src.n, rng);
    check_image(make_element(op.src, cmat(xi * eta.adjoint())));
  }
}

struct Reconstruction {
  cmat u;
  cmat v;
  double residual = 0.0;
  double scale = 0.0;  // largest image norm, for the relative threshold
};

// Rebuilds the case-A carriers of op (assumed src == dst shape) from the
// anchor image of E_11: u_1 and v_1 come from its top singular pair with the
// singular value absorbed into u_1, then A_i1 v_1 recovers u_i and
// A_1j* u_1 / ||u_1||^2 recovers v_j.
Reconstruction reconstruct_case_a(const LinearOperator& op) {
  int m = op.src.m;
  int n = op.src.n;
  std::vector<std::vector<cmat>> img(m, std::vector<cmat>(n));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) img[i][j] = op.apply(matrix_unit_element(op.src, i, j)).data;
  }
  Eigen::JacobiSVD<cmat> svd(img[0][0], Eigen::ComputeThinU | Eigen::ComputeThinV);
  double s0 = svd.singularValues()(0);
  if (s0 <= 0) {
    throw FactorizationInconsistent("the anchor matrix unit maps to zero");
  }
  cvec u1 = s0 * svd.matrixU().col(0);
  cvec v1 = svd.matrixV().col(0);

  Reconstruction rec;
  rec.u = cmat(m, m);
  rec.v = cmat(n, n);
  rec.u.col(0) = u1;
  rec.v.col(0) = v1;
  for (int i = 1; i < m; ++i) rec.u.col(i) = img[i][0] * v1;
  for (int j = 1; j < n; ++j) rec.v.col(j) = img[0][j].adjoint() * u1 / u1.squaredNorm();

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      Element actual = make_element(op.dst, img[i][j]);
      Element rebuilt = make_element(op.dst, cmat(rec.u.col(i) * rec.v.col(j).adjoint()));
      rec.residual = std::max(rec.residual, distance(actual, rebuilt));
      rec.scale = std::max(rec.scale, jb_norm(actual));
    }
  }
  return rec;
}

LinearOperator compose_with_transpose(const LinearOperator& op) {
  FactorDescriptor flipped = FactorDescriptor::type1(op.src.n, op.src.m);
  FactorDescriptor original = op.src;
  return operator_from_action(flipped, op.dst, [op, original](const Element& y) {
    return op.apply(make_element(original, cmat(y.data.transpose())));
  });
}

}  // namespace

RankOneFactorization factor_rank_one_preserver(const LinearOperator& op,
                                               const ToleranceConfig& tol) {
  tol.validate();
  if (op.src.kind != FactorKind::type1 || op.dst.kind != FactorKind::type1) {
    throw UnsupportedForFactor("rank-one factorization handles rectangular factors");
  }
  if (op.src.m < 2 || op.src.n < 2) {
    throw InvalidSpec("case analysis needs m >= 2 and n >= 2");
  }
  bool a_possible = op.dst == op.src;
  bool b_possible = op.dst == FactorDescriptor::type1(op.src.n, op.src.m);
  if (!a_possible && !b_possible) {
    throw DimensionMismatch("target factor matches neither case");
  }

  LinearOperator inverse = op.inverse();  // bijectivity gate
  probe_rank_one(op, tol);
  probe_rank_one(inverse, tol);

  if (a_possible && b_possible) {
    // Square shape: decide by which singular direction the images of E_11 and
    // E_12 share.
    cmat a1 = op.apply(matrix_unit_element(op.src, 0, 0)).data;
    cmat a2 = op.apply(matrix_unit_element(op.src, 0, 1)).data;
    Eigen::JacobiSVD<cmat> s1(a1, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::JacobiSVD<cmat> s2(a2, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double left_overlap = std::abs(s1.matrixU().col(0).dot(s2.matrixU().col(0)));
    double right_overlap = std::abs(s1.matrixV().col(0).dot(s2.matrixV().col(0)));
    a_possible = left_overlap > kOverlapThreshold;
    b_possible = right_overlap > kOverlapThreshold;
    if (!a_possible && !b_possible) {
      throw FactorizationInconsistent(
          "images of the anchor row share neither singular direction");
    }
  }

  struct Candidate {
    PreserverCase kase;
    Reconstruction rec;
  };
  std::vector<Candidate> candidates;
  if (a_possible) candidates.push_back({PreserverCase::A, reconstruct_case_a(op)});
  if (b_possible) {
    candidates.push_back({PreserverCase::B, reconstruct_case_a(compose_with_transpose(op))});
  }
  const Candidate* best = &candidates.front();
  for (const Candidate& c : candidates) {
    if (c.rec.residual < best->rec.residual) best = &c;
  }
  if (best->rec.residual > tol.identity_tol * (1.0 + best->rec.scale)) {
    throw FactorizationInconsistent("reconstruction misses the basis images by " +
                                    std::to_string(best->rec.residual));
  }

  RankOneFactorization out;
  out.kase = best->kase;
  out.u = best->rec.u;
  out.v = best->rec.v;
  out.residual = best->rec.residual;

  int pr = 0, pc = 0;
  for (int i = 0; i < out.u.rows(); ++i) {
    for (int j = 0; j < out.u.cols(); ++j) {
      if (std::abs(out.u(i, j)) > std::abs(out.u(pr, pc))) {
        pr = i;
        pc = j;
      }
    }
  }
  cplx pivot = out.u(pr, pc);
  if (std::abs(pivot) > 0) {
    // (mu u) x (mu v)* = u x v* for unimodular mu, so one shared phase aligns
    // the pivot without changing the map.
    cplx mu = std::conj(pivot) / std::abs(pivot);
    out.u *= mu;
    out.v *= mu;
  }
  out.gauge_note = "largest-modulus entry of u rotated to the positive real axis";
  return out;
}

AutomorphismClassification classify_type1_automorphism(const LinearOperator& op,
                                                       std::uint64_t samples, std::uint64_t seed,
                                                       const ToleranceConfig& tol) {
  AutomorphismClassification out;
  out.factorization = factor_rank_one_preserver(op, tol);
  const cmat& u = out.factorization.u;
  const cmat& v = out.factorization.v;
  out.unitarity_defect_u = (u.adjoint() * u - cmat::Identity(u.cols(), u.cols())).norm();
  out.unitarity_defect_v = (v.adjoint() * v - cmat::Identity(v.cols(), v.cols())).norm();
  if (out.unitarity_defect_u > tol.norm_tol * static_cast<double>(u.rows())) {
    throw NotUnitary("left carrier is not unitary; defect " +
                     std::to_string(out.unitarity_defect_u));
  }
  if (out.unitarity_defect_v > tol.norm_tol * static_cast<double>(v.rows())) {
    throw NotUnitary("right carrier is not unitary; defect " +
                     std::to_string(out.unitarity_defect_v));
  }

  out.samples = samples;
  out.seed = seed;
  Rng root(seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    Rng rng = root.fork(i);
    Element x = random_element(op.src, rng);
    cmat rebuilt = (out.factorization.kase == PreserverCase::A)
                       ? cmat(u * x.data * v.adjoint())
                       : cmat(u * x.data.transpose() * v.adjoint());
    out.reconstruction_residual =
        std::max(out.reconstruction_residual,
                 distance(op.apply(x), make_element(op.dst, rebuilt)));
  }
  return out;
}

}  // namespace triplekit
