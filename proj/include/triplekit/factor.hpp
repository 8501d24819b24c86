#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "triplekit/errors.hpp"
#include "triplekit/rng.hpp"

namespace triplekit {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rmat = Eigen::MatrixXd;
using rvec = Eigen::VectorXd;

// The four finite dimensional Cartan factor families handled by the toolkit.
//   type1  rectangular complex matrices M_{m,n}
//   type2  skew-symmetric complex matrices A_n
//   type3  symmetric complex matrices S_n
//   spin   complex spin factor on C^n, n >= 3
enum class FactorKind { type1, type2, type3, spin };

const char* kind_name(FactorKind kind);

struct FactorDescriptor {
  FactorKind kind;
  int m;  // rows for type1; equals n for the square kinds, n for spin
  int n;

  static FactorDescriptor type1(int m, int n);
  static FactorDescriptor type2(int n);
  static FactorDescriptor type3(int n);
  static FactorDescriptor spin(int n);

  // Complex dimension of the factor as a vector space.
  int dim() const;
  // Length of a maximal frame of pairwise orthogonal minimal tripotents.
  int rank() const;
  // Ambient storage shape: m x n, n x n, n x n, or n x 1.
  int rows() const;
  int cols() const;

  std::string to_string() const;
  bool operator==(const FactorDescriptor& other) const;
  bool operator!=(const FactorDescriptor& other) const { return !(*this == other); }
};

// An element of a factor, stored in its ambient matrix representation. Spin
// elements are stored as n x 1 columns. Construct through make_element so the
// structural constraints (skew or symmetric) hold exactly.
struct Element {
  FactorDescriptor factor;
  cmat data;
};

// Validates the shape, checks the structural constraint within struct_tol
// (relative to the Frobenius norm), and projects onto it exactly.
Element make_element(const FactorDescriptor& factor, const cmat& data, double struct_tol = 1e-9);
Element zero_element(const FactorDescriptor& factor);

Element operator+(const Element& x, const Element& y);
Element operator-(const Element& x, const Element& y);
Element operator-(const Element& x);
Element operator*(cplx scale, const Element& x);

// Hermitian inner product on spin data vectors, linear in the first slot.
cplx spin_inner(const cvec& x, const cvec& y);
cvec spin_bar(const cvec& x);

// The triple product of the factor. Matrix kinds use
// {x,y,z} = (x y* z + z y* x)/2; the spin factor uses
// {x,y,z} = <x,y> z + <z,y> x - <x, bar z> bar y.
Element triple_product(const Element& x, const Element& y, const Element& z);

// Componentwise conjugation for the kinds where it maps the factor to itself
// canonically (type2, type3, spin). Rectangular factors have no canonical
// conjugation, so type1 throws UnsupportedForFactor.
Element conjugate(const Element& x);

// Reference Hilbert inner product making the coordinate basis orthonormal:
// tr(y* x) on the matrix kinds, the standard product on spin.
cplx reference_inner(const Element& x, const Element& y);

// The JB*-triple norm: largest singular value on matrix kinds, the spin norm
// on spin factors.
double jb_norm(const Element& x);
double distance(const Element& x, const Element& y);

// Coordinates in the orthonormal reference basis (see coordinate_basis for
// the ordering) and the inverse map.
cvec coords(const Element& x);
Element element_from_coords(const FactorDescriptor& factor, const cvec& c);

// Orthonormal basis of the factor. Orderings:
//   type1  matrix units E_ij, row-major
//   type2  (E_ij - E_ji)/sqrt(2) for i < j, lexicographic
//   type3  E_ii and (E_ij + E_ji)/sqrt(2) for i < j, single row-major sweep
//          over i <= j
//   spin   standard basis vectors e_i
std::vector<Element> coordinate_basis(const FactorDescriptor& factor);

// Matrix of L(a,b) x = {a,b,x} in the coordinate basis. Because the basis is
// orthonormal for reference_inner, L(a,a) is Hermitian as a matrix.
cmat l_operator_matrix(const Element& a, const Element& b);

// Gaussian random element of the factor (ambient Gaussian projected onto the
// structural constraint).
Element random_element(const FactorDescriptor& factor, Rng& rng);

// Haar distributed unitary (QR of a complex Gaussian with the phase fix
// diag(r_kk/|r_kk|)) and its real orthogonal counterpart.
cmat random_unitary(int n, Rng& rng);
rmat random_real_orthogonal(int n, Rng& rng);

}  // namespace triplekit
