#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "support.hpp"
#include "triplekit/serialize.hpp"

using namespace triplekit;
using tksup::type1_unit;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args, const std::string& prefix = "") {
  std::string cmd = prefix + " " + std::string(TRIPLEKIT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof(buffer), pipe)) {
    result.out.append(buffer, got);
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path scratch_dir() {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "triplekit_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_scratch(const std::string& name, const ordered_json& j) {
  std::filesystem::path path = scratch_dir() / name;
  std::ofstream out(path);
  out << j.dump();
  return path.string();
}

ordered_json counterexample_input() {
  FactorDescriptor f = FactorDescriptor::type1(2, 2);
  ordered_json j;
  j["e"] = element_to_json(type1_unit(f, 0, 0));
  j["v"] = element_to_json(type1_unit(f, 0, 1));
  return j;
}

}  // namespace

TEST_CASE("ttp reports a vanishing value without orthogonality for collinear units") {
  std::string input = write_scratch("ttp_counterexample.json", counterexample_input());
  CliResult r = run_cli("ttp --input " + input);
  REQUIRE(r.exit_code == 0);
  ordered_json out = ordered_json::parse(r.out);
  CHECK(std::abs(out.at("ttp").at("re").get<double>()) < 1e-12);
  CHECK(std::abs(out.at("ttp").at("im").get<double>()) < 1e-12);
  CHECK(out.at("modulus").get<double>() < 1e-12);
  CHECK(out.at("orthogonal") == false);
  CHECK(out.at("symmetric_check") == true);
}

TEST_CASE("repeated invocations emit byte identical output") {
  std::string input = write_scratch("ttp_repeat.json", counterexample_input());
  CliResult first = run_cli("ttp --input " + input);
  CliResult second = run_cli("ttp --input " + input);
  REQUIRE(first.exit_code == 0);
  REQUIRE(second.exit_code == 0);
  CHECK(first.out == second.out);

  CliResult a = run_cli("audit --input '{\"factor\":{\"kind\":\"type3\",\"n\":3}}' --samples 40 --seed 6");
  CliResult b = run_cli("audit --input '{\"factor\":{\"kind\":\"type3\",\"n\":3}}' --samples 40 --seed 6");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("peirce reports the dims of a minimal matrix unit") {
  FactorDescriptor f = FactorDescriptor::type1(2, 2);
  ordered_json j;
  j["e"] = tripotent_to_json(Tripotent(type1_unit(f, 0, 0)));
  std::string input = write_scratch("peirce_unit.json", j);
  CliResult r = run_cli("peirce --input " + input);
  REQUIRE(r.exit_code == 0);
  ordered_json out = ordered_json::parse(r.out);
  REQUIRE(out.at("dims").size() == 3);
  CHECK(out.at("dims").at(0) == 1);
  CHECK(out.at("dims").at(1) == 2);
  CHECK(out.at("dims").at(2) == 1);
  CHECK(out.at("projector_sum_residual").get<double>() < 1e-12);
  CHECK(out.at("projector_product_residual").get<double>() < 1e-12);
  CHECK(out.at("projectors").size() == 3);
}

TEST_CASE("audit returns tiny residuals and echoes its parameters") {
  CliResult r =
      run_cli("audit --input '{\"factor\":{\"kind\":\"type2\",\"n\":3}}' --samples 50 --seed 5");
  REQUIRE(r.exit_code == 0);
  ordered_json out = ordered_json::parse(r.out);
  CHECK(out.at("jordan_residual_max").get<double>() < 1e-10);
  CHECK(out.at("l_min_eigenvalue").get<double>() > -1e-10);
  CHECK(out.at("cube_norm_residual_max").get<double>() < 1e-10);
  CHECK(out.at("samples") == 50);
  CHECK(out.at("meta").at("samples") == 50);
  CHECK(out.at("meta").at("seed") == 5);
}

TEST_CASE("decompose lists descending coefficients and a tiny reconstruction error") {
  FactorDescriptor f = FactorDescriptor::type1(2, 2);
  cmat d = cmat::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  ordered_json j;
  j["x"] = element_to_json(make_element(f, d));
  std::string input = write_scratch("decompose_diag.json", j);
  CliResult r = run_cli("decompose --input " + input);
  REQUIRE(r.exit_code == 0);
  ordered_json out = ordered_json::parse(r.out);
  REQUIRE(out.at("parts").size() == 2);
  CHECK(out.at("parts").at(0).at("coef").get<double>() == doctest::Approx(3.0));
  CHECK(out.at("parts").at(1).at("coef").get<double>() == doctest::Approx(1.0));
  CHECK(out.at("parts").at(0).at("tripotent").at("validated") == true);
  CHECK(out.at("reconstruction_residual").get<double>() < 1e-12);
}

TEST_CASE("extend certifies the identity table as a triple isomorphism") {
  FactorDescriptor f = FactorDescriptor::type1(2, 2);
  ordered_json j;
  j["src"] = factor_to_json(f);
  j["dst"] = factor_to_json(f);
  ordered_json pairs = ordered_json::array();
  for (const Tripotent& e : minimal_basis(f)) {
    ordered_json pair;
    pair["e"] = tripotent_to_json(e);
    pair["image"] = tripotent_to_json(e);
    pairs.push_back(pair);
  }
  j["pairs"] = pairs;
  std::string input = write_scratch("extend_identity.json", j);
  CliResult r = run_cli("extend --input " + input + " --samples 40 --seed 3");
  REQUIRE(r.exit_code == 0);
  ordered_json out = ordered_json::parse(r.out);
  CHECK(out.at("welldefined").at("max_residual").get<double>() < 1e-10);
  CHECK(out.at("ttp_check").at("max_deviation").get<double>() < 1e-10);
  CHECK(out.at("ttp_check").at("bad_images") == 0);
  CHECK(out.at("orthogonality_ok") == true);
  CHECK(out.at("isomorphism").at("morphism_residual").get<double>() < 1e-10);
  CHECK(out.at("isomorphism").at("isometry_residual").get<double>() < 1e-10);

  LinearOperator op = operator_from_json(out.at("operator"));
  CHECK((op.matrix - cmat::Identity(4, 4)).norm() < 1e-10);
}

TEST_CASE("factorize detects the straight and transposed cases") {
  FactorDescriptor f = FactorDescriptor::type1(2, 2);
  LinearOperator id = operator_from_action(f, f, [](const Element& x) { return x; });
  ordered_json ji;
  ji["operator"] = operator_to_json(id);
  std::string input_a = write_scratch("factorize_id.json", ji);
  CliResult ra = run_cli("factorize --input " + input_a);
  REQUIRE(ra.exit_code == 0);
  ordered_json out_a = ordered_json::parse(ra.out);
  CHECK(out_a.at("case") == "A");
  CHECK(out_a.at("residual").get<double>() < 1e-10);

  LinearOperator transpose = operator_from_action(f, f, [&f](const Element& x) {
    return make_element(f, cmat(x.data.transpose()));
  });
  ordered_json jt;
  jt["operator"] = operator_to_json(transpose);
  std::string input_b = write_scratch("factorize_transpose.json", jt);
  CliResult rb = run_cli("factorize --input " + input_b);
  REQUIRE(rb.exit_code == 0);
  ordered_json out_b = ordered_json::parse(rb.out);
  CHECK(out_b.at("case") == "B");
  CHECK(out_b.at("residual").get<double>() < 1e-10);
}

TEST_CASE("generate emits validated tripotents and preserver bundles") {
  CliResult r = run_cli(
      "generate --input '{\"what\":\"minimal_tripotent\",\"factor\":{\"kind\":\"type3\",\"n\":3}}' "
      "--seed 3");
  REQUIRE(r.exit_code == 0);
  ordered_json out = ordered_json::parse(r.out);
  Tripotent e = tripotent_from_json(out.at("tripotent"));
  CHECK(is_minimal(e));

  CliResult p = run_cli(
      "generate --input '{\"what\":\"type1_preserver\",\"case\":\"B\",\"m\":2,\"n\":3}' --seed 4");
  REQUIRE(p.exit_code == 0);
  ordered_json pout = ordered_json::parse(p.out);
  CHECK(pout.at("spec").at("case") == "B");
  LinearOperator op = operator_from_json(pout.at("operator"));
  CHECK(op.src == FactorDescriptor::type1(2, 3));
  CHECK(op.dst == FactorDescriptor::type1(3, 2));

  CliResult s = run_cli(
      "generate --input '{\"what\":\"spin_automorphism\",\"n\":4}' --seed 9");
  REQUIRE(s.exit_code == 0);
  ordered_json sout = ordered_json::parse(s.out);
  CHECK(sout.at("spec").at("rotation").size() == 4);
  LinearOperator sop = operator_from_json(sout.at("operator"));
  CHECK(sop.src == FactorDescriptor::spin(4));

  CliResult again = run_cli(
      "generate --input '{\"what\":\"spin_automorphism\",\"n\":4}' --seed 9");
  CHECK(again.out == s.out);
  CliResult other = run_cli(
      "generate --input '{\"what\":\"spin_automorphism\",\"n\":4}' --seed 10");
  CHECK(other.out != s.out);
}

TEST_CASE("parse problems exit with code two and a structured error") {
  CliResult broken = run_cli("ttp --input '{broken'");
  CHECK(broken.exit_code == 2);
  ordered_json out = ordered_json::parse(broken.out);
  CHECK(out.at("error").at("kind") == "SchemaError");
  CHECK(out.at("error").at("category") == "parse");

  CliResult unknown = run_cli("frobnicate --input '{}'");
  CHECK(unknown.exit_code == 2);
  ordered_json uout = ordered_json::parse(unknown.out);
  CHECK(uout.at("error").at("kind") == "CliParseError");

  CliResult missing = run_cli("ttp");
  CHECK(missing.exit_code == 2);

  ordered_json j = counterexample_input();
  j["extra"] = 1;
  std::string input = write_scratch("ttp_extra_key.json", j);
  CliResult extra = run_cli("ttp --input " + input);
  CHECK(extra.exit_code == 2);
}

TEST_CASE("precondition failures exit with code three") {
  FactorDescriptor f = FactorDescriptor::type1(2, 2);
  ordered_json j;
  j["e"] = element_to_json(cplx(2.0, 0.0) * type1_unit(f, 0, 0));
  j["v"] = element_to_json(type1_unit(f, 0, 1));
  std::string input = write_scratch("ttp_not_tripotent.json", j);
  CliResult r = run_cli("ttp --input " + input);
  CHECK(r.exit_code == 3);
  ordered_json out = ordered_json::parse(r.out);
  CHECK(out.at("error").at("kind") == "NotATripotent");
  CHECK(out.at("error").at("category") == "precondition");

  CliResult unwritable = run_cli("audit --input '{\"factor\":{\"kind\":\"spin\",\"n\":4}}' "
                                 "--samples 10 --output /nonexistent_dir_0/x.json");
  CHECK(unwritable.exit_code == 3);
}

TEST_CASE("output lands in a file when requested") {
  std::filesystem::path dest = scratch_dir() / "audit_out.json";
  std::filesystem::remove(dest);
  CliResult r = run_cli("audit --input '{\"factor\":{\"kind\":\"spin\",\"n\":4}}' --samples 20 "
                        "--output " + dest.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream in(dest);
  REQUIRE(in.good());
  ordered_json out = ordered_json::parse(in);
  CHECK(out.at("samples") == 20);
}

TEST_CASE("stdin and inline input are both accepted") {
  std::string input = write_scratch("ttp_stdin.json", counterexample_input());
  CliResult r = run_cli("ttp --input - < " + input);
  REQUIRE(r.exit_code == 0);
  ordered_json out = ordered_json::parse(r.out);
  CHECK(out.at("orthogonal") == false);

  CliResult inline_r = run_cli("audit --input '{\"factor\":{\"kind\":\"spin\",\"n\":4}}' --samples 20");
  CHECK(inline_r.exit_code == 0);
}

TEST_CASE("the environment seed is honored and the flag overrides it") {
  CliResult env_seed = run_cli("audit --input '{\"factor\":{\"kind\":\"spin\",\"n\":4}}' --samples 10",
                               "TRIPLEKIT_SEED=42");
  REQUIRE(env_seed.exit_code == 0);
  ordered_json out = ordered_json::parse(env_seed.out);
  CHECK(out.at("meta").at("seed") == 42);

  CliResult flag = run_cli("audit --input '{\"factor\":{\"kind\":\"spin\",\"n\":4}}' --samples 10 "
                           "--seed 7",
                           "TRIPLEKIT_SEED=42");
  REQUIRE(flag.exit_code == 0);
  ordered_json fout = ordered_json::parse(flag.out);
  CHECK(fout.at("meta").at("seed") == 7);
}

TEST_CASE("help requests succeed") {
  CliResult top = run_cli("--help");
  CHECK(top.exit_code == 0);
  CHECK(top.out.find("ttp") != std::string::npos);
  CliResult sub = run_cli("ttp --help");
  CHECK(sub.exit_code == 0);
}
