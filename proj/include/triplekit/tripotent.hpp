#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "triplekit/factor.hpp"
#include "triplekit/tolerances.hpp"

namespace triplekit {

// Peirce decomposition of a factor relative to a tripotent e: the eigenspaces
// of L(e,e) for the eigenvalues 0, 1/2, 1. Index j in the arrays corresponds
// to the Peirce space E_j with eigenvalue j/2.
struct PeirceDecomposition {
  FactorDescriptor factor;
  // bases[j] holds an orthonormal basis of E_j as coordinate columns.
  std::array<cmat, 3> bases;
  // projectors[j] is the matrix of the Peirce projection P_j in coordinates.
  std::array<cmat, 3> projectors;
  // Raw eigenvalues of L(e,e), ascending, before snapping onto {0, 1/2, 1}.
  rvec eigenvalues;

  std::array<int, 3> dims() const {
    return {static_cast<int>(bases[0].cols()), static_cast<int>(bases[1].cols()),
            static_cast<int>(bases[2].cols())};
  }
};

// Whether ||{e,e,e} - e|| falls below tol.identity_tol.
bool is_tripotent(const Element& e, const ToleranceConfig& tol = {});

// Eigendecomposes L(e,e) and snaps every eigenvalue onto {0, 1/2, 1} within
// tol.eig_cluster_tol. Throws NotATripotent for non-tripotents and
// PeirceClusterError when an eigenvalue sits outside every snap window.
PeirceDecomposition peirce(const Element& e, const ToleranceConfig& tol = {});

// Applies the Peirce projection P_k (k in {0,1,2}) to x.
Element peirce_project(const PeirceDecomposition& pd, const Element& x, int k);

// A validated tripotent. Construction checks the cube identity and the Peirce
// decomposition is computed lazily and cached (copies share the cache).
class Tripotent {
 public:
  explicit Tripotent(const Element& e, const ToleranceConfig& tol = {});

  const Element& element() const { return element_; }
  const FactorDescriptor& factor() const { return element_.factor; }

  // Cached Peirce data; the tolerance of the first call is the one that
  // computed the cache.
  const PeirceDecomposition& peirce_data(const ToleranceConfig& tol = {}) const;

 private:
  Element element_;
  mutable std::shared_ptr<const PeirceDecomposition> cache_;
};

// Minimality means dim E_2(e) = 1 (and e nonzero); completeness means
// dim E_0(e) = 0; a unitary tripotent has E_2(e) equal to the whole factor.
bool is_minimal(const Tripotent& e, const ToleranceConfig& tol = {});
bool is_complete(const Tripotent& e, const ToleranceConfig& tol = {});
bool is_unitary_tripotent(const Tripotent& e, const ToleranceConfig& tol = {});

// Triple orthogonality: both ||{e,e,f}|| and ||{f,f,e}|| below identity_tol.
bool are_orthogonal(const Tripotent& e, const Tripotent& f, const ToleranceConfig& tol = {});

// Partial order on tripotents: e <= f when f - e is a tripotent orthogonal
// to e.
bool leq(const Tripotent& e, const Tripotent& f, const ToleranceConfig& tol = {});

// Uniformly structured random tripotents. The minimal forms are
//   type1  xi eta*            (unit xi, eta)
//   type2  b a^T - a b^T      (orthonormal a, b)
//   type3  u u^T              (unit u)
//   spin   (a + i b)/2        (real orthonormal a, b)
Tripotent random_minimal_tripotent(const FactorDescriptor& factor, Rng& rng,
                                   const ToleranceConfig& tol = {});

// Sum of `rank` pairwise orthogonal random minimal tripotents; rank must not
// exceed factor.rank().
Tripotent random_tripotent(const FactorDescriptor& factor, int rank, Rng& rng,
                           const ToleranceConfig& tol = {});

struct WeightedTripotent {
  double coef;
  Tripotent tripotent;
};

// Spectral-type decomposition x = sum_i c_i e_i with c_1 >= c_2 >= ... > 0 and
// the e_i pairwise orthogonal minimal tripotents. Uses the singular value
// decomposition on type1, a Takagi factorization through a real symmetric
// embedding on type3, a Youla pairing through the eigenspaces of A A* on
// type2, and exact two-part algebra on spin. Parts with coefficients below
// 1e-12 of the largest are dropped. Throws DecompositionFailed when the
// reconstruction misses x by more than identity_tol * (1 + ||x||).
std::vector<WeightedTripotent> minimal_orthogonal_decomposition(const Element& x,
                                                                const ToleranceConfig& tol = {});

// A random minimal tripotent orthogonal to e, found by decomposing a random
// element of the Peirce zero space. Empty when E_0(e) is trivial, as for any
// complete tripotent.
std::optional<Tripotent> orthogonal_minimal_partner(const Tripotent& e, Rng& rng,
                                                    const ToleranceConfig& tol = {});

}  // namespace triplekit
