#include "triplekit/factor.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

namespace triplekit {

namespace {

const double kSqrt2 = std::sqrt(2.0);

void check_same_factor(const Element& x, const Element& y) {
  if (x.factor != y.factor) {
    throw MixedFactorError("elements belong to different factors: " + x.factor.to_string() +
                           " vs " + y.factor.to_string());
  }
}

}  // namespace

const char* kind_name(FactorKind kind) {
  switch (kind) {
    case FactorKind::type1:
      return "type1";
    case FactorKind::type2:
      return "type2";
    case FactorKind::type3:
      return "type3";
    case FactorKind::spin:
      return "spin";
  }
  return "unknown";
}

FactorDescriptor FactorDescriptor::type1(int m, int n) {
  if (m < 1 || n < 1) throw InvalidSpec("type1 factor needs m >= 1 and n >= 1");
  return {FactorKind::type1, m, n};
}

FactorDescriptor FactorDescriptor::type2(int n) {
  if (n < 2) throw InvalidSpec("type2 factor needs n >= 2");
  return {FactorKind::type2, n, n};
}

FactorDescriptor FactorDescriptor::type3(int n) {
  if (n < 1) throw InvalidSpec("type3 factor needs n >= 1");
  return {FactorKind::type3, n, n};
}

FactorDescriptor FactorDescriptor::spin(int n) {
  if (n < 3) throw InvalidSpec("spin factor needs n >= 3");
  return {FactorKind::spin, n, n};
}

int FactorDescriptor::dim() const {
  switch (kind) {
    case FactorKind::type1:
      return m * n;
    case FactorKind::type2:
      return n * (n - 1) / 2;
    case FactorKind::type3:
      return n * (n + 1) / 2;
    case FactorKind::spin:
      return n;
  }
  return 0;
}

int FactorDescriptor::rank() const {
  switch (kind) {
    case FactorKind::type1:
      return std::min(m, n);
    case FactorKind::type2:
      return n / 2;
    case FactorKind::type3:
      return n;
    case FactorKind::spin:
      return 2;
  }
  return 0;
}

int FactorDescriptor::rows() const { return kind == FactorKind::type1 ? m : n; }

int FactorDescriptor::cols() const {
  switch (kind) {
    case FactorKind::type1:
    case FactorKind::type2:
    case FactorKind::type3:
      return n;
    case FactorKind::spin:
      return 1;
  }
  return 0;
}

std::string FactorDescriptor::to_string() const {
  std::string s = kind_name(kind);
  if (kind == FactorKind::type1) {
    s += "(" + std::to_string(m) + "," + std::to_string(n) + ")";
  } else {
    s += "(" + std::to_string(n) + ")";
  }
  return s;
}

bool FactorDescriptor::operator==(const FactorDescriptor& other) const {
  return kind == other.kind && m == other.m && n == other.n;
}

Element make_element(const FactorDescriptor& factor, const cmat& data, double struct_tol) {
  if (data.rows() != factor.rows() || data.cols() != factor.cols()) {
    throw DimensionMismatch("element data is " + std::to_string(data.rows()) + "x" +
                            std::to_string(data.cols()) + " but " + factor.to_string() +
                            " stores " + std::to_string(factor.rows()) + "x" +
                            std::to_string(factor.cols()));
  }
  double scale = struct_tol * (1.0 + data.norm());
  switch (factor.kind) {
    case FactorKind::type2: {
      cmat defect = data + data.transpose();
      if (defect.norm() > scale) {
        throw InvalidSpec("type2 element must be skew-symmetric; defect " +
                          std::to_string(defect.norm()));
      }
      return {factor, 0.5 * (data - data.transpose())};
    }
    case FactorKind::type3: {
      cmat defect = data - data.transpose();
      if (defect.norm() > scale) {
        throw InvalidSpec("type3 element must be symmetric; defect " +
                          std::to_string(defect.norm()));
      }
      return {factor, 0.5 * (data + data.transpose())};
    }
    default:
      return {factor, data};
  }
}

Element zero_element(const FactorDescriptor& factor) {
  return {factor, cmat::Zero(factor.rows(), factor.cols())};
}

Element operator+(const Element& x, const Element& y) {
  check_same_factor(x, y);
  return {x.factor, x.data + y.data};
}

Element operator-(const Element& x, const Element& y) {
  check_same_factor(x, y);
  return {x.factor, x.data - y.data};
}

Element operator-(const Element& x) { return {x.factor, -x.data}; }

Element operator*(cplx scale, const Element& x) { return {x.factor, scale * x.data}; }

cplx spin_inner(const cvec& x, const cvec& y) { return y.dot(x); }

cvec spin_bar(const cvec& x) { return x.conjugate(); }

Element triple_product(const Element& x, const Element& y, const Element& z) {
  check_same_factor(x, y);
  check_same_factor(x, z);
  const FactorDescriptor& f = x.factor;
  if (f.kind == FactorKind::spin) {
    cvec xv = x.data.col(0), yv = y.data.col(0), zv = z.data.col(0);
    cvec out = spin_inner(xv, yv) * zv + spin_inner(zv, yv) * xv -
               spin_inner(xv, spin_bar(zv)) * spin_bar(yv);
    return {f, out};
  }
  cmat p = 0.5 * (x.data * y.data.adjoint() * z.data + z.data * y.data.adjoint() * x.data);
  // Route through make_element to keep the skew or symmetric structure exact
  // despite rounding in the products.
  return make_element(f, p);
}

Element conjugate(const Element& x) {
  switch (x.factor.kind) {
    case FactorKind::type1:
      throw UnsupportedForFactor("rectangular factors carry no canonical conjugation");
    default:
      return {x.factor, x.data.conjugate()};
  }
}

cplx reference_inner(const Element& x, const Element& y) {
  check_same_factor(x, y);
  if (x.factor.kind == FactorKind::spin) return spin_inner(x.data.col(0), y.data.col(0));
  return (y.data.adjoint() * x.data).trace();
}

double jb_norm(const Element& x) {
  if (x.factor.kind == FactorKind::spin) {
    cvec v = x.data.col(0);
    double q = spin_inner(v, v).real();
    double s = std::abs(spin_inner(v, spin_bar(v)));
    double disc = q * q - s * s;
    if (disc < 0) disc = 0;  // guard rounding; s <= q always holds exactly
    return std::sqrt(q + std::sqrt(disc));
  }
  if (x.data.rows() == 0 || x.data.cols() == 0) return 0.0;
  Eigen::JacobiSVD<cmat> svd(x.data);
  return svd.singularValues()(0);
}

double distance(const Element& x, const Element& y) { return jb_norm(x - y); }

cvec coords(const Element& x) {
  const FactorDescriptor& f = x.factor;
  cvec c(f.dim());
  switch (f.kind) {
    case FactorKind::type1: {
      int k = 0;
      for (int i = 0; i < f.m; ++i)
        for (int j = 0; j < f.n; ++j) c(k++) = x.data(i, j);
      break;
    }
    case FactorKind::type2: {
      int k = 0;
      for (int i = 0; i < f.n; ++i)
        for (int j = i + 1; j < f.n; ++j) c(k++) = kSqrt2 * x.data(i, j);
      break;
    }
    case FactorKind::type3: {
      int k = 0;
      for (int i = 0; i < f.n; ++i)
        for (int j = i; j < f.n; ++j) c(k++) = (i == j) ? x.data(i, i) : kSqrt2 * x.data(i, j);
      break;
    }
    case FactorKind::spin:
      c = x.data.col(0);
      break;
  }
  return c;
}

Element element_from_coords(const FactorDescriptor& factor, const cvec& c) {
  if (c.size() != factor.dim()) {
    throw DimensionMismatch("coordinate vector has length " + std::to_string(c.size()) +
                            " but " + factor.to_string() + " has dimension " +
                            std::to_string(factor.dim()));
  }
  cmat data = cmat::Zero(factor.rows(), factor.cols());
  switch (factor.kind) {
    case FactorKind::type1: {
      int k = 0;
      for (int i = 0; i < factor.m; ++i)
        for (int j = 0; j < factor.n; ++j) data(i, j) = c(k++);
      break;
    }
    case FactorKind::type2: {
      int k = 0;
      for (int i = 0; i < factor.n; ++i)
        for (int j = i + 1; j < factor.n; ++j) {
          data(i, j) = c(k) / kSqrt2;
          data(j, i) = -c(k) / kSqrt2;
          ++k;
        }
      break;
    }
    case FactorKind::type3: {
      int k = 0;
      for (int i = 0; i < factor.n; ++i)
        for (int j = i; j < factor.n; ++j) {
          if (i == j) {
            data(i, i) = c(k);
          } else {
            data(i, j) = c(k) / kSqrt2;
            data(j, i) = c(k) / kSqrt2;
          }
          ++k;
        }
      break;
    }
    case FactorKind::spin:
      data.col(0) = c;
      break;
  }
  return {factor, data};
}

std::vector<Element> coordinate_basis(const FactorDescriptor& factor) {
  std::vector<Element> basis;
  basis.reserve(factor.dim());
  for (int k = 0; k < factor.dim(); ++k) {
    cvec c = cvec::Zero(factor.dim());
    c(k) = 1.0;
    basis.push_back(element_from_coords(factor, c));
  }
  return basis;
}

cmat l_operator_matrix(const Element& a, const Element& b) {
  check_same_factor(a, b);
  int d = a.factor.dim();
  cmat mat(d, d);
  std::vector<Element> basis = coordinate_basis(a.factor);
  for (int k = 0; k < d; ++k) mat.col(k) = coords(triple_product(a, b, basis[k]));
  return mat;
}

Element random_element(const FactorDescriptor& factor, Rng& rng) {
  cmat g(factor.rows(), factor.cols());
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) g(i, j) = rng.complex_gaussian();
  switch (factor.kind) {
    case FactorKind::type2:
      return {factor, 0.5 * (g - g.transpose())};
    case FactorKind::type3:
      return {factor, 0.5 * (g + g.transpose())};
    default:
      return {factor, g};
  }
}

cmat random_unitary(int n, Rng& rng) {
  cmat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<cmat> qr(g);
  cmat q = qr.householderQ();
  cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  cvec phases(n);
  for (int k = 0; k < n; ++k) {
    cplx d = r(k, k);
    phases(k) = std::abs(d) > 0 ? d / std::abs(d) : cplx(1.0, 0.0);
  }
  return q * phases.asDiagonal();
}

rmat random_real_orthogonal(int n, Rng& rng) {
  rmat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian();
  Eigen::HouseholderQR<rmat> qr(g);
  rmat q = qr.householderQ();
  rmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  rvec signs(n);
  for (int k = 0; k < n; ++k) signs(k) = r(k, k) >= 0 ? 1.0 : -1.0;
  return q * signs.asDiagonal();
}

}  // namespace triplekit
