#include "triplekit/audit.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

namespace triplekit {

namespace {

struct SampleResult {
  double jordan = 0.0;
  double selfadjoint = 0.0;
  double min_eig = 0.0;
  double cube = 0.0;
};

Element unit_sample(const FactorDescriptor& factor, Rng& rng) {
  Element raw = random_element(factor, rng);
  double norm = jb_norm(raw);
  if (norm > 0) return (1.0 / norm) * raw;
  return raw;
}

}  // namespace

AxiomReport audit_axioms(const FactorDescriptor& factor, std::uint64_t samples,
                         std::uint64_t seed, Exec exec) {
  Rng root(seed);
  std::function<SampleResult(std::size_t)> one = [&](std::size_t i) {
    Rng rng = root.fork(i);
    Element a = unit_sample(factor, rng);
    Element b = unit_sample(factor, rng);
    Element x = unit_sample(factor, rng);
    Element y = unit_sample(factor, rng);

    SampleResult r;

    cmat lab = l_operator_matrix(a, b);
    cmat lxy = l_operator_matrix(x, y);
    cmat shifted_x = l_operator_matrix(triple_product(a, b, x), y);
    cmat shifted_y = l_operator_matrix(x, triple_product(b, a, y));
    r.jordan = (lab * lxy - lxy * lab - shifted_x + shifted_y).norm();

    cmat l = l_operator_matrix(a, a);
    r.selfadjoint = (l - l.adjoint()).norm();
    Eigen::SelfAdjointEigenSolver<cmat> eig(0.5 * (l + l.adjoint()));
    r.min_eig = eig.eigenvalues().minCoeff();

    Element raw = random_element(factor, rng);
    double n1 = jb_norm(raw);
    double n3 = jb_norm(triple_product(raw, raw, raw));
    r.cube = std::abs(n3 - n1 * n1 * n1) / (1.0 + n1 * n1 * n1);
    return r;
  };

  std::vector<SampleResult> table = sample_table<SampleResult>(exec, samples, one);

  AxiomReport report;
  report.samples = samples;
  report.seed = seed;
  report.l_min_eigenvalue = table.empty() ? 0.0 : table.front().min_eig;
  for (const SampleResult& r : table) {
    report.jordan_residual_max = std::max(report.jordan_residual_max, r.jordan);
    report.l_selfadjoint_residual_max = std::max(report.l_selfadjoint_residual_max, r.selfadjoint);
    report.l_min_eigenvalue = std::min(report.l_min_eigenvalue, r.min_eig);
    report.cube_norm_residual_max = std::max(report.cube_norm_residual_max, r.cube);
  }
  return report;
}

}  // namespace triplekit
