// Compares the serial and OpenMP paths of every sampling kernel on identical
// inputs. The two paths must agree bitwise; timings are informational.
#include <CLI11.hpp>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "triplekit/audit.hpp"
#include "triplekit/extension.hpp"
#include "triplekit/parallel.hpp"
#include "triplekit/preservers.hpp"

namespace tk = triplekit;

namespace {

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

struct Row {
  std::string name;
  double serial_ms = 0;
  double openmp_ms = 0;
  bool match = false;
};

template <typename Fn>
double time_ms(Fn&& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial versus OpenMP timings for the sampling kernels"};
  std::uint64_t samples = 2000;
  std::uint64_t seed = 7;
  app.add_option("--samples", samples, "samples per kernel");
  app.add_option("--seed", seed, "random seed");
  CLI11_PARSE(app, argc, argv);

  tk::ToleranceConfig tol;
  tk::Rng rng(seed);
  tk::FactorDescriptor square = tk::FactorDescriptor::type1(3, 3);
  tk::GeneratedPreserver gen = tk::make_type1_preserver(
      tk::random_type1_preserver_spec(tk::PreserverCase::A, 3, 3, rng), tol);

  std::vector<Row> rows;

  {
    Row row;
    row.name = "axiom_audit";
    tk::AxiomReport serial, parallel;
    row.serial_ms =
        time_ms([&] { serial = tk::audit_axioms(square, samples, seed, tk::Exec::serial); });
    row.openmp_ms =
        time_ms([&] { parallel = tk::audit_axioms(square, samples, seed, tk::Exec::openmp); });
    row.match = same_bits(serial.jordan_residual_max, parallel.jordan_residual_max) &&
                same_bits(serial.l_selfadjoint_residual_max, parallel.l_selfadjoint_residual_max) &&
                same_bits(serial.l_min_eigenvalue, parallel.l_min_eigenvalue) &&
                same_bits(serial.cube_norm_residual_max, parallel.cube_norm_residual_max);
    rows.push_back(row);
  }

  {
    Row row;
    row.name = "welldefined_check";
    tk::WellDefinedReport serial, parallel;
    row.serial_ms = time_ms([&] {
      serial = tk::check_welldefined(gen.map, gen.op, samples, seed, tk::Exec::serial, tol);
    });
    row.openmp_ms = time_ms([&] {
      parallel = tk::check_welldefined(gen.map, gen.op, samples, seed, tk::Exec::openmp, tol);
    });
    row.match = same_bits(serial.max_residual, parallel.max_residual);
    rows.push_back(row);
  }

  {
    Row row;
    row.name = "ttp_preservation";
    tk::TtpReport serial, parallel;
    row.serial_ms = time_ms(
        [&] { serial = tk::check_ttp_preserving(gen.op, samples, seed, tk::Exec::serial, tol); });
    row.openmp_ms = time_ms(
        [&] { parallel = tk::check_ttp_preserving(gen.op, samples, seed, tk::Exec::openmp, tol); });
    row.match = same_bits(serial.max_deviation, parallel.max_deviation) &&
                serial.bad_images == parallel.bad_images;
    rows.push_back(row);
  }

  {
    Row row;
    row.name = "orthogonality_check";
    tk::OrthogonalityReport serial, parallel;
    row.serial_ms = time_ms([&] {
      serial = tk::check_orthogonality_preserving(gen.op, samples, seed, tk::Exec::serial, tol);
    });
    row.openmp_ms = time_ms([&] {
      parallel = tk::check_orthogonality_preserving(gen.op, samples, seed, tk::Exec::openmp, tol);
    });
    row.match = same_bits(serial.max_violation, parallel.max_violation) &&
                serial.without_partner == parallel.without_partner &&
                serial.bad_images == parallel.bad_images;
    rows.push_back(row);
  }

  {
    Row row;
    row.name = "isomorphism_certificate";
    tk::IsomorphismReport serial, parallel;
    row.serial_ms = time_ms([&] {
      serial = tk::certify_triple_isomorphism(gen.op, samples, seed, tk::Exec::serial, tol);
    });
    row.openmp_ms = time_ms([&] {
      parallel = tk::certify_triple_isomorphism(gen.op, samples, seed, tk::Exec::openmp, tol);
    });
    row.match = same_bits(serial.morphism_residual, parallel.morphism_residual) &&
                same_bits(serial.isometry_residual, parallel.isometry_residual);
    rows.push_back(row);
  }

  std::printf("%-26s %12s %12s %9s %7s\n", "kernel", "serial(ms)", "openmp(ms)", "speedup",
              "match");
  bool all_match = true;
  for (const Row& row : rows) {
    double speedup = row.openmp_ms > 0 ? row.serial_ms / row.openmp_ms : 0.0;
    std::printf("%-26s %12.2f %12.2f %8.2fx %7s\n", row.name.c_str(), row.serial_ms, row.openmp_ms,
                speedup, row.match ? "ok" : "DIFF");
    all_match = all_match && row.match;
  }
  std::printf("threads: %d, samples per kernel: %llu\n", tk::max_threads(),
              static_cast<unsigned long long>(samples));
  if (!all_match) {
    std::printf("serial and OpenMP paths disagree\n");
    return 1;
  }
  return 0;
}
