#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "triplekit/factor.hpp"
#include "triplekit/tripotent.hpp"

using namespace triplekit;
using tksup::type1_unit;

namespace {

std::vector<FactorDescriptor> all_kinds() {
  return {FactorDescriptor::type1(2, 3), FactorDescriptor::type2(4), FactorDescriptor::type3(3),
          FactorDescriptor::spin(4)};
}

Element spin_vector(int n, std::initializer_list<cplx> entries) {
  cmat v = cmat::Zero(n, 1);
  int i = 0;
  for (cplx c : entries) v(i++, 0) = c;
  return make_element(FactorDescriptor::spin(n), v);
}

}  // namespace

TEST_CASE("is_tripotent recognizes the standard examples") {
  FactorDescriptor f = FactorDescriptor::type1(2, 2);
  CHECK(is_tripotent(type1_unit(f, 0, 0)));
  CHECK(is_tripotent(make_element(f, cmat::Identity(2, 2))));
  CHECK_FALSE(is_tripotent(cplx(2.0, 0.0) * type1_unit(f, 0, 0)));
  CHECK(is_tripotent(zero_element(f)));

  Element v = spin_vector(4, {cplx(0.5, 0.0), cplx(0.0, 0.5)});
  CHECK(is_tripotent(v));
  Element e = spin_vector(4, {cplx(1.0, 0.0)});
  CHECK(is_tripotent(e));
}

TEST_CASE("peirce data of a matrix unit has dims one two one") {
  FactorDescriptor f = FactorDescriptor::type1(2, 2);
  Tripotent e(type1_unit(f, 0, 0));
  const PeirceDecomposition& pd = e.peirce_data();
  std::array<int, 3> dims = pd.dims();
  CHECK(dims[0] == 1);
  CHECK(dims[1] == 2);
  CHECK(dims[2] == 1);

  cmat sum = pd.projectors[0] + pd.projectors[1] + pd.projectors[2];
  CHECK((sum - cmat::Identity(4, 4)).norm() < 1e-12);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      cmat prod = pd.projectors[i] * pd.projectors[j];
      if (i == j) {
        CHECK((prod - pd.projectors[i]).norm() < 1e-12);
      } else {
        CHECK(prod.norm() < 1e-12);
      }
    }
  }

  PeirceDecomposition zd = peirce(zero_element(f));
  std::array<int, 3> zdims = zd.dims();
  CHECK(zdims[0] == 4);
  CHECK(zdims[1] == 0);
  CHECK(zdims[2] == 0);
}

TEST_CASE("peirce projections are idempotent and sum to the identity") {
  Rng rng(31);
  for (const FactorDescriptor& f : all_kinds()) {
    Tripotent e = random_minimal_tripotent(f, rng);
    const PeirceDecomposition& pd = e.peirce_data();
    Element x = random_element(f, rng);
    Element total = zero_element(f);
    for (int k = 0; k < 3; ++k) {
      Element part = peirce_project(pd, x, k);
      total = total + part;
      Element again = peirce_project(pd, part, k);
      CHECK(distance(again, part) < 1e-10);
    }
    CHECK(distance(total, x) < 1e-10);
  }
}

TEST_CASE("non tripotents are rejected and sloppy tolerances are flagged") {
  FactorDescriptor f = FactorDescriptor::type1(2, 2);
  Element almost = cplx(0.7, 0.0) * type1_unit(f, 0, 0);
  CHECK_THROWS_AS(Tripotent{almost}, NotATripotent);
  CHECK_THROWS_AS(peirce(almost), NotATripotent);

  ToleranceConfig loose;
  loose.identity_tol = 0.5;
  Tripotent sloppy(almost, loose);
  CHECK_THROWS_AS(peirce(almost, loose), PeirceClusterError);
}

TEST_CASE("spin peirce spaces of a minimal tripotent are the known lines") {
  Element v = spin_vector(4, {cplx(0.5, 0.0), cplx(0.0, 0.5)});
  Tripotent e(v);
  const PeirceDecomposition& pd = e.peirce_data();
  std::array<int, 3> dims = pd.dims();
  CHECK(dims[2] == 1);
  CHECK(dims[1] == 2);
  CHECK(dims[0] == 1);

  Element vbar = conjugate(v);
  Element proj0 = peirce_project(pd, vbar, 0);
  CHECK(distance(proj0, vbar) < 1e-12);

  Rng rng(32);
  Element x = random_element(FactorDescriptor::spin(4), rng);
  Element p2 = peirce_project(pd, x, 2);
  cplx ip = v.data.col(0).dot(x.data.col(0));
  Element expected = (2.0 * ip) * v;
  CHECK(distance(p2, expected) < 1e-10);
}

TEST_CASE("rank classification separates minimal complete and unitary tripotents") {
  FactorDescriptor f = FactorDescriptor::type1(2, 3);
  Tripotent e11(type1_unit(f, 0, 0));
  CHECK(is_minimal(e11));
  CHECK_FALSE(is_complete(e11));
  CHECK_FALSE(is_unitary_tripotent(e11));

  cmat iso = cmat::Zero(2, 3);
  iso(0, 0) = 1.0;
  iso(1, 1) = 1.0;
  Tripotent wide(make_element(f, iso));
  CHECK(is_complete(wide));
  CHECK_FALSE(is_minimal(wide));
  CHECK_FALSE(is_unitary_tripotent(wide));

  FactorDescriptor sq = FactorDescriptor::type1(2, 2);
  Tripotent id(make_element(sq, cmat::Identity(2, 2)));
  CHECK(is_unitary_tripotent(id));
  CHECK(is_complete(id));

  Tripotent zero(zero_element(f));
  CHECK_FALSE(is_minimal(zero));
  CHECK_FALSE(is_complete(zero));
}

TEST_CASE("spin minimal tripotents are exactly the isotropic ones") {
  Element minimal = spin_vector(3, {cplx(0.5, 0.0), cplx(0.0, 0.5)});
  CHECK(is_minimal(Tripotent(minimal)));

  Element maximal = spin_vector(3, {cplx(1.0, 0.0)});
  Tripotent m(maximal);
  CHECK_FALSE(is_minimal(m));
  CHECK(is_complete(m));
  CHECK(is_unitary_tripotent(m));
}

TEST_CASE("orthogonality and the natural partial order behave on matrix units") {
  FactorDescriptor f = FactorDescriptor::type1(2, 2);
  Tripotent e11(type1_unit(f, 0, 0));
  Tripotent e22(type1_unit(f, 1, 1));
  Tripotent e12(type1_unit(f, 0, 1));
  Tripotent id(make_element(f, cmat::Identity(2, 2)));

  CHECK(are_orthogonal(e11, e22));
  CHECK_FALSE(are_orthogonal(e11, e12));
  CHECK_FALSE(are_orthogonal(e11, e11));

  CHECK(leq(e11, id));
  CHECK(leq(e22, id));
  CHECK_FALSE(leq(id, e11));
  CHECK(leq(e11, e11));
  CHECK_FALSE(leq(e11, e12));
}

TEST_CASE("minimal tripotents admit orthogonal partners exactly when rank allows") {
  Rng rng(33);
  FactorDescriptor f = FactorDescriptor::type1(2, 3);
  Tripotent e = random_minimal_tripotent(f, rng);
  auto partner = orthogonal_minimal_partner(e, rng);
  REQUIRE(partner.has_value());
  CHECK(are_orthogonal(e, *partner));
  CHECK(is_minimal(*partner));

  FactorDescriptor row = FactorDescriptor::type1(1, 3);
  Tripotent re = random_minimal_tripotent(row, rng);
  CHECK_FALSE(orthogonal_minimal_partner(re, rng).has_value());
}

TEST_CASE("random tripotent samplers deliver what they promise") {
  Rng rng(34);
  for (const FactorDescriptor& f : all_kinds()) {
    for (int rep = 0; rep < 5; ++rep) {
      Tripotent m = random_minimal_tripotent(f, rng);
      CHECK(is_minimal(m));
      int target = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(f.rank()));
      Tripotent t = random_tripotent(f, target, rng);
      CHECK(is_tripotent(t.element()));
    }
  }
  Rng ra(35);
  Rng rb(35);
  Tripotent x = random_minimal_tripotent(FactorDescriptor::type3(3), ra);
  Tripotent y = random_minimal_tripotent(FactorDescriptor::type3(3), rb);
  CHECK(distance(x.element(), y.element()) == 0.0);
}

TEST_CASE("singular value style decomposition matches hand examples") {
  FactorDescriptor f = FactorDescriptor::type1(2, 2);
  cmat d = cmat::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  std::vector<WeightedTripotent> parts = minimal_orthogonal_decomposition(make_element(f, d));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].coef == doctest::Approx(3.0));
  CHECK(parts[1].coef == doctest::Approx(1.0));
  CHECK(distance(parts[0].tripotent.element(), type1_unit(f, 0, 0)) < 1e-12);
  CHECK(distance(parts[1].tripotent.element(), type1_unit(f, 1, 1)) < 1e-12);

  Element minimal = cplx(2.5, 0.0) * type1_unit(f, 0, 1);
  std::vector<WeightedTripotent> single = minimal_orthogonal_decomposition(minimal);
  REQUIRE(single.size() == 1);
  CHECK(single[0].coef == doctest::Approx(2.5));
}

TEST_CASE("spin decomposition of a real unit vector uses two equal coefficients") {
  Element a = spin_vector(4, {cplx(1.0, 0.0)});
  std::vector<WeightedTripotent> two = minimal_orthogonal_decomposition(a);
  REQUIRE(two.size() == 2);
  CHECK(two[0].coef == doctest::Approx(1.0));
  CHECK(two[1].coef == doctest::Approx(1.0));
  CHECK(is_minimal(two[0].tripotent));
  CHECK(is_minimal(two[1].tripotent));

  Element v = spin_vector(4, {cplx(0.5, 0.0), cplx(0.0, 0.5)});
  std::vector<WeightedTripotent> one = minimal_orthogonal_decomposition(v);
  REQUIRE(one.size() == 1);
  CHECK(one[0].coef == doctest::Approx(1.0));
}

TEST_CASE("the decomposition satisfies its structural invariants") {
  Rng rng(36);
  for (const FactorDescriptor& f : all_kinds()) {
    for (int rep = 0; rep < 12; ++rep) {
      Element x = random_element(f, rng);
      std::vector<WeightedTripotent> parts = minimal_orthogonal_decomposition(x);
      CHECK(static_cast<int>(parts.size()) <= f.rank());

      Element rebuilt = zero_element(f);
      for (const auto& part : parts) {
        rebuilt = rebuilt + cplx(part.coef, 0.0) * part.tripotent.element();
        CHECK(is_minimal(part.tripotent));
        CHECK(part.coef > 0.0);
      }
      CHECK(distance(rebuilt, x) < 1e-9 * (1.0 + jb_norm(x)));

      for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        CHECK(parts[i].coef >= parts[i + 1].coef - 1e-12);
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
          CHECK(are_orthogonal(parts[i].tripotent, parts[j].tripotent));
        }
      }
      if (!parts.empty()) {
        CHECK(std::abs(parts[0].coef - jb_norm(x)) < 1e-9 * (1.0 + jb_norm(x)));
      }
    }
  }
}

TEST_CASE("decomposing zero gives an empty list") {
  std::vector<WeightedTripotent> parts =
      minimal_orthogonal_decomposition(zero_element(FactorDescriptor::type2(4)));
  CHECK(parts.empty());
}
