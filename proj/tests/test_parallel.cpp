#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "triplekit/audit.hpp"
#include "triplekit/extension.hpp"
#include "triplekit/parallel.hpp"
#include "triplekit/preservers.hpp"
#include "triplekit/rng.hpp"

using namespace triplekit;

TEST_CASE("the generator is deterministic and fork ignores draw history") {
  Rng a(101);
  Rng b(101);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }

  Rng c(101);
  Rng d(101);
  for (int i = 0; i < 17; ++i) d.next_u64();
  Rng child_c = c.fork(5);
  Rng child_d = d.fork(5);
  CHECK(child_c.next_u64() == child_d.next_u64());

  Rng e(101);
  CHECK(e.fork(0).next_u64() != e.fork(1).next_u64());
}

TEST_CASE("uniform draws stay inside the open unit interval") {
  Rng rng(102);
  for (int i = 0; i < 1000; ++i) {
    double u = rng.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    CHECK(std::isfinite(rng.gaussian()));
  }
}

TEST_CASE("both execution policies fill identical tables") {
  std::function<double(std::size_t)> job = [](std::size_t i) {
    Rng rng(1000 + i);
    double acc = 0.0;
    for (int k = 0; k < 50; ++k) acc += rng.gaussian();
    return acc;
  };
  std::vector<double> serial = sample_table<double>(Exec::serial, 257, job);
  std::vector<double> parallel = sample_table<double>(Exec::openmp, 257, job);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i] == parallel[i]);
  }
}

TEST_CASE("the lowest failing index wins under both policies") {
  std::function<int(std::size_t)> job = [](std::size_t i) -> int {
    if (i == 13 || i == 57) {
      throw std::runtime_error("sample " + std::to_string(i));
    }
    return static_cast<int>(i);
  };
  for (Exec exec : {Exec::serial, Exec::openmp}) {
    bool threw = false;
    try {
      sample_table<int>(exec, 100, job);
    } catch (const std::runtime_error& err) {
      threw = true;
      CHECK(std::string(err.what()) == "sample 13");
    }
    CHECK(threw);
  }
}

TEST_CASE("at least one thread is always available") { CHECK(max_threads() >= 1); }

TEST_CASE("every sampling kernel agrees exactly across policies") {
  FactorDescriptor f = FactorDescriptor::type1(3, 3);
  Rng rng(103);
  Type1PreserverSpec spec = random_type1_preserver_spec(PreserverCase::A, 3, 3, rng);
  GeneratedPreserver gen = make_type1_preserver(spec);
  const std::uint64_t n = 64;
  const std::uint64_t seed = 11;

  AxiomReport as = audit_axioms(f, n, seed, Exec::serial);
  AxiomReport ap = audit_axioms(f, n, seed, Exec::openmp);
  CHECK(as.jordan_residual_max == ap.jordan_residual_max);
  CHECK(as.l_selfadjoint_residual_max == ap.l_selfadjoint_residual_max);
  CHECK(as.l_min_eigenvalue == ap.l_min_eigenvalue);
  CHECK(as.cube_norm_residual_max == ap.cube_norm_residual_max);

  WellDefinedReport ws = check_welldefined(gen.map, gen.op, n, seed, Exec::serial);
  WellDefinedReport wp = check_welldefined(gen.map, gen.op, n, seed, Exec::openmp);
  CHECK(ws.max_residual == wp.max_residual);

  TtpReport ts = check_ttp_preserving(gen.op, n, seed, Exec::serial);
  TtpReport tp = check_ttp_preserving(gen.op, n, seed, Exec::openmp);
  CHECK(ts.max_deviation == tp.max_deviation);
  CHECK(ts.bad_images == tp.bad_images);

  OrthogonalityReport os = check_orthogonality_preserving(gen.op, n, seed, Exec::serial);
  OrthogonalityReport op_ = check_orthogonality_preserving(gen.op, n, seed, Exec::openmp);
  CHECK(os.max_violation == op_.max_violation);
  CHECK(os.pairs_tested == op_.pairs_tested);
  CHECK(os.without_partner == op_.without_partner);

  IsomorphismReport is = certify_triple_isomorphism(gen.op, n, seed, Exec::serial);
  IsomorphismReport ip = certify_triple_isomorphism(gen.op, n, seed, Exec::openmp);
  CHECK(is.morphism_residual == ip.morphism_residual);
  CHECK(is.isometry_residual == ip.isometry_residual);
}
