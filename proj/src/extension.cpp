#include "triplekit/extension.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include "triplekit/transition.hpp"
#include <algorithm>
#include <cmath>

namespace triplekit {

namespace {

cmat eigen_inverse_checked(const cmat& m, const char* what) {
  Eigen::JacobiSVD<cmat> svd(m);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(m.rows() - 1);
  if (smax <= 0 || smin <= 1e-12 * smax) {
    throw SingularOperator(std::string(what) + " is numerically singular");
  }
  return m.inverse();
}

}  // namespace

Element LinearOperator::apply(const Element& x) const {
  if (x.factor != src) {
    throw MixedFactorError("operator expects " + src.to_string() + " but received " +
                           x.factor.to_string());
  }
  cvec c = coords(x);
  if (linearity == Linearity::conjugate_linear) c = c.conjugate();
  return element_from_coords(dst, matrix * c);
}

LinearOperator LinearOperator::inverse() const {
  if (matrix.rows() != matrix.cols()) {
    throw DimensionMismatch("only operators between factors of equal dimension invert");
  }
  cmat inv = eigen_inverse_checked(matrix, "operator");
  if (linearity == Linearity::conjugate_linear) inv = inv.conjugate();
  return {dst, src, inv, linearity};
}

LinearOperator operator_from_action(const FactorDescriptor& src, const FactorDescriptor& dst,
                                    const std::function<Element(const Element&)>& action,
                                    Linearity linearity) {
  std::vector<Element> basis = coordinate_basis(src);
  cmat m(dst.dim(), src.dim());
  for (int k = 0; k < src.dim(); ++k) {
    Element image = action(basis[k]);
    if (image.factor != dst) {
      throw MixedFactorError("action image lands in " + image.factor.to_string() +
                             " instead of " + dst.to_string());
    }
    m.col(k) = coords(image);
  }
  return {src, dst, m, linearity};
}

Tripotent MapOnMinimals::image_of(const Tripotent& e) const {
  if (callable) return callable(e);
  for (const auto& entry : table) {
    if (distance(entry.first.element(), e.element()) <= 1e-6) return entry.second;
  }
  throw MissingImage("no stored image within matching distance of the requested tripotent");
}

std::vector<Tripotent> minimal_basis(const FactorDescriptor& factor, const ToleranceConfig& tol) {
  std::vector<Tripotent> basis;
  basis.reserve(factor.dim());
  auto add = [&](const cmat& data) { basis.emplace_back(make_element(factor, data), tol); };
  switch (factor.kind) {
    case FactorKind::type1:
      for (int i = 0; i < factor.m; ++i)
        for (int j = 0; j < factor.n; ++j) {
          cmat data = cmat::Zero(factor.m, factor.n);
          data(i, j) = 1.0;
          add(data);
        }
      break;
    case FactorKind::type2:
      for (int i = 0; i < factor.n; ++i)
        for (int j = i + 1; j < factor.n; ++j) {
          cmat data = cmat::Zero(factor.n, factor.n);
          data(i, j) = 1.0;
          data(j, i) = -1.0;
          add(data);
        }
      break;
    case FactorKind::type3:
      for (int i = 0; i < factor.n; ++i)
        for (int j = i; j < factor.n; ++j) {
          cmat data = cmat::Zero(factor.n, factor.n);
          if (i == j) {
            data(i, i) = 1.0;
          } else {
            data(i, i) = 0.5;
            data(j, j) = 0.5;
            data(i, j) = 0.5;
            data(j, i) = 0.5;
          }
          add(data);
        }
      break;
    case FactorKind::spin: {
      int n = factor.n;
      cmat data = cmat::Zero(n, 1);
      data(0, 0) = 0.5;
      data(1, 0) = cplx(0.0, 0.5);
      add(data);
      data(1, 0) = cplx(0.0, -0.5);
      add(data);
      for (int k = 2; k < n; ++k) {
        cmat v = cmat::Zero(n, 1);
        v(0, 0) = 0.5;
        v(k, 0) = cplx(0.0, 0.5);
        add(v);
      }
      break;
    }
  }

  cmat b(factor.dim(), factor.dim());
  for (int k = 0; k < factor.dim(); ++k) b.col(k) = coords(basis[k].element());
  Eigen::JacobiSVD<cmat> svd(b);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(factor.dim() - 1);
  if (smax <= 0 || smin <= 1e-8 * smax) {
    throw BasisConstructionFailed("minimal tripotent basis is numerically rank deficient");
  }
  return basis;
}

LinearOperator extend_to_socle(const MapOnMinimals& map, const ToleranceConfig& tol) {
  std::vector<Tripotent> basis = minimal_basis(map.src, tol);
  int d = map.src.dim();
  cmat b(d, d);
  cmat y(map.dst.dim(), d);
  for (int k = 0; k < d; ++k) {
    b.col(k) = coords(basis[k].element());
    Tripotent image = map.image_of(basis[k]);
    if (image.factor() != map.dst) {
      throw MixedFactorError("mapped image lands in " + image.factor().to_string() +
                             " instead of " + map.dst.to_string());
    }
    y.col(k) = coords(image.element());
  }
  cmat t = y * eigen_inverse_checked(b, "minimal basis matrix");
  return {map.src, map.dst, t, Linearity::linear};
}

WellDefinedReport check_welldefined(const MapOnMinimals& map, const LinearOperator& op,
                                    std::uint64_t samples, std::uint64_t seed, Exec exec,
                                    const ToleranceConfig& tol) {
  if (!map.callable) {
    throw InvalidSpec("sampled consistency checks need a callable map; use the table variant");
  }
  Rng root(seed);
  std::function<double(std::size_t)> one = [&](std::size_t i) {
    Rng rng = root.fork(i);
    Tripotent e = random_minimal_tripotent(map.src, rng, tol);
    return distance(op.apply(e.element()), map.image_of(e).element());
  };
  std::vector<double> table = sample_table<double>(exec, samples, one);
  WellDefinedReport report{0.0, samples, seed};
  for (double r : table) report.max_residual = std::max(report.max_residual, r);
  return report;
}

WellDefinedReport check_welldefined_table(const MapOnMinimals& map, const LinearOperator& op,
                                          const ToleranceConfig& tol) {
  (void)tol;
  WellDefinedReport report{0.0, map.table.size(), 0};
  for (const auto& entry : map.table) {
    report.max_residual = std::max(
        report.max_residual, distance(op.apply(entry.first.element()), entry.second.element()));
  }
  return report;
}

namespace {

struct TtpSample {
  double deviation = 0.0;
  bool bad = false;
};

struct OrthSample {
  double violation = 0.0;
  bool no_partner = false;
  bool bad = false;
};

struct IsoSample {
  double morphism = 0.0;
  double isometry = 0.0;
};

Element unit_sample(const FactorDescriptor& factor, Rng& rng) {
  Element raw = random_element(factor, rng);
  double norm = jb_norm(raw);
  if (norm > 0) return (1.0 / norm) * raw;
  return raw;
}

}  // namespace

TtpReport check_ttp_preserving(const LinearOperator& op, std::uint64_t pairs, std::uint64_t seed,
                               Exec exec, const ToleranceConfig& tol) {
  Rng root(seed);
  std::function<TtpSample(std::size_t)> one = [&](std::size_t i) {
    Rng rng = root.fork(i);
    Tripotent e = random_minimal_tripotent(op.src, rng, tol);
    Tripotent v = random_minimal_tripotent(op.src, rng, tol);
    cplx source_value = ttp(e, v, tol);
    Element ie = op.apply(e.element());
    Element iv = op.apply(v.element());
    TtpSample s;
    if (!is_tripotent(ie, tol) || !is_tripotent(iv, tol)) {
      s.bad = true;
      return s;
    }
    Tripotent te(ie, tol);
    Tripotent tv(iv, tol);
    if (!is_minimal(te, tol) || !is_minimal(tv, tol)) {
      s.bad = true;
      return s;
    }
    s.deviation = std::abs(ttp(te, tv, tol) - source_value);
    return s;
  };
  std::vector<TtpSample> table = sample_table<TtpSample>(exec, pairs, one);
  TtpReport report;
  report.pairs = pairs;
  report.seed = seed;
  for (const TtpSample& s : table) {
    if (s.bad) {
      ++report.bad_images;
    } else {
      report.max_deviation = std::max(report.max_deviation, s.deviation);
    }
  }
  return report;
}

OrthogonalityReport check_orthogonality_preserving(const LinearOperator& op,
                                                   std::uint64_t samples, std::uint64_t seed,
                                                   Exec exec, const ToleranceConfig& tol) {
  Rng root(seed);
  std::function<OrthSample(std::size_t)> one = [&](std::size_t i) {
    Rng rng = root.fork(i);
    Tripotent e = random_minimal_tripotent(op.src, rng, tol);
    OrthSample s;
    std::optional<Tripotent> partner = orthogonal_minimal_partner(e, rng, tol);
    if (!partner) {
      s.no_partner = true;
      return s;
    }
    Element ie = op.apply(e.element());
    Element ip = op.apply(partner->element());
    if (!is_tripotent(ie, tol) || !is_tripotent(ip, tol)) {
      s.bad = true;
      return s;
    }
    s.violation = std::max(jb_norm(triple_product(ie, ie, ip)),
                           jb_norm(triple_product(ip, ip, ie)));
    return s;
  };
  std::vector<OrthSample> table = sample_table<OrthSample>(exec, samples, one);
  OrthogonalityReport report;
  report.seed = seed;
  for (const OrthSample& s : table) {
    if (s.no_partner) {
      ++report.without_partner;
    } else if (s.bad) {
      ++report.bad_images;
    } else {
      ++report.pairs_tested;
      report.max_violation = std::max(report.max_violation, s.violation);
    }
  }
  return report;
}

IsomorphismReport certify_triple_isomorphism(const LinearOperator& op, std::uint64_t samples,
                                             std::uint64_t seed, Exec exec,
                                             const ToleranceConfig& tol) {
  (void)tol;
  Rng root(seed);
  std::function<IsoSample(std::size_t)> one = [&](std::size_t i) {
    Rng rng = root.fork(i);
    Element x = unit_sample(op.src, rng);
    Element y = unit_sample(op.src, rng);
    Element z = unit_sample(op.src, rng);
    IsoSample s;
    s.morphism = distance(op.apply(triple_product(x, y, z)),
                          triple_product(op.apply(x), op.apply(y), op.apply(z)));
    s.isometry = std::abs(jb_norm(op.apply(x)) - 1.0);
    return s;
  };
  std::vector<IsoSample> table = sample_table<IsoSample>(exec, samples, one);
  IsomorphismReport report;
  report.samples = samples;
  report.seed = seed;
  for (const IsoSample& s : table) {
    report.morphism_residual = std::max(report.morphism_residual, s.morphism);
    report.isometry_residual = std::max(report.isometry_residual, s.isometry);
  }
  return report;
}

SphereExtension extend_sphere_map(const std::vector<std::pair<Element, Element>>& pairs,
                                  const ToleranceConfig& tol) {
  tol.validate();
  if (pairs.empty()) throw InvalidSpec("sphere extension needs at least one pair");
  FactorDescriptor src = pairs.front().first.factor;
  FactorDescriptor dst = pairs.front().second.factor;
  for (const auto& p : pairs) {
    if (p.first.factor != src || p.second.factor != dst) {
      throw MixedFactorError("all sphere pairs must share the same source and target factors");
    }
    if (std::abs(jb_norm(p.first) - 1.0) > tol.norm_tol ||
        std::abs(jb_norm(p.second) - 1.0) > tol.norm_tol) {
      throw InvalidSpec("sphere map points must be unit vectors");
    }
  }

  double gram_defect = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      cplx gs = reference_inner(pairs[i].first, pairs[j].first);
      cplx gd = reference_inner(pairs[i].second, pairs[j].second);
      gram_defect = std::max(gram_defect, std::abs(gs - gd));
    }
  }
  if (gram_defect > tol.norm_tol) {
    throw InnerProductMismatch("source and image Gram matrices disagree by " +
                               std::to_string(gram_defect));
  }

  int d = src.dim();
  std::vector<cvec> ortho;
  std::vector<std::size_t> chosen;
  for (std::size_t idx = 0; idx < pairs.size() && static_cast<int>(chosen.size()) < d; ++idx) {
    cvec v = coords(pairs[idx].first);
    for (int pass = 0; pass < 2; ++pass) {
      for (const cvec& u : ortho) v -= u * u.dot(v);
    }
    if (v.norm() > 1e-6) {
      ortho.push_back(v / v.norm());
      chosen.push_back(idx);
    }
  }
  if (static_cast<int>(chosen.size()) < d) {
    throw BasisConstructionFailed("sphere samples do not span the source factor");
  }

  cmat xs(d, d);
  cmat ys(dst.dim(), d);
  for (int c = 0; c < d; ++c) {
    xs.col(c) = coords(pairs[chosen[c]].first);
    ys.col(c) = coords(pairs[chosen[c]].second);
  }
  LinearOperator op{src, dst, ys * eigen_inverse_checked(xs, "sphere sample matrix"),
                    Linearity::linear};

  double consistency = 0.0;
  for (const auto& p : pairs) {
    consistency = std::max(consistency, distance(op.apply(p.first), p.second));
  }
  Eigen::JacobiSVD<cmat> svd(op.matrix);
  double iso = 0.0;
  for (int k = 0; k < svd.singularValues().size(); ++k) {
    iso = std::max(iso, std::abs(svd.singularValues()(k) - 1.0));
  }
  return {op, gram_defect, consistency, iso};
}

ScaleRecovery orthogonality_scale(const LinearOperator& op, std::uint64_t samples,
                                  std::uint64_t seed, const ToleranceConfig& tol) {
  Rng root(seed);
  ScaleRecovery rec;
  rec.samples = samples;
  rec.seed = seed;
  bool first = true;
  for (std::uint64_t i = 0; i < samples; ++i) {
    Rng rng = root.fork(i);
    Tripotent e = random_minimal_tripotent(op.src, rng, tol);
    Element ie = op.apply(e.element());
    double g = jb_norm(ie);
    if (first) {
      rec.gamma = g;
      first = false;
    }
    rec.max_norm_spread = std::max(rec.max_norm_spread, std::abs(g - rec.gamma));
    std::optional<Tripotent> partner = orthogonal_minimal_partner(e, rng, tol);
    if (!partner) continue;
    Element ip = op.apply(partner->element());
    double raw = std::max(jb_norm(triple_product(ie, ie, ip)),
                          jb_norm(triple_product(ip, ip, ie)));
    double scale3 = std::max(rec.gamma * rec.gamma * rec.gamma, 1e-30);
    rec.max_orthogonality_violation = std::max(rec.max_orthogonality_violation, raw / scale3);
  }
  double threshold = tol.norm_tol * (1.0 + rec.gamma);
  if (rec.max_norm_spread > threshold) {
    throw NotOrthogonalityPreserving("minimal tripotents map to inconsistent norms; spread " +
                                     std::to_string(rec.max_norm_spread));
  }
  if (rec.max_orthogonality_violation > threshold) {
    throw NotOrthogonalityPreserving("orthogonal tripotents lose orthogonality; violation " +
                                     std::to_string(rec.max_orthogonality_violation));
  }
  return rec;
}

}  // namespace triplekit
