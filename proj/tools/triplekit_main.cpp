#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "triplekit/serialize.hpp"
#include "triplekit/version.hpp"

namespace tk = triplekit;
using tk::ordered_json;

namespace {

std::uint64_t default_seed() {
  const char* env = std::getenv("TRIPLEKIT_SEED");
  if (!env || *env == '\0') return 0;
  char* end = nullptr;
  unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') return 0;
  return value;
}

ordered_json read_input(const std::string& spec) {
  std::string text;
  if (spec == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else if (!spec.empty() && spec.front() == '{') {
    text = spec;
  } else {
    std::ifstream in(spec);
    if (!in) throw tk::SchemaError("cannot read input '" + spec + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw tk::SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

void write_output(const std::string& dest, const ordered_json& j) {
  std::string text = j.dump(2) + "\n";
  if (dest == "-" || dest.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(dest);
  if (!out) throw tk::InvalidSpec("cannot write output '" + dest + "'");
  out << text;
}

ordered_json make_meta(std::uint64_t seed, std::uint64_t samples, const tk::ToleranceConfig& tol) {
  ordered_json meta;
  meta["seed"] = seed;
  meta["samples"] = samples;
  meta["tolerances"] = tk::tolerances_to_json(tol);
  meta["version"] = tk::kVersion;
  return meta;
}

std::string json_string(const ordered_json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw tk::SchemaError("field '" + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

struct Args {
  std::string input;
  std::string output = "-";
  std::uint64_t seed = 0;
  std::uint64_t samples = 100;
  double tol_override = 0.0;

  tk::ToleranceConfig tolerances() const {
    tk::ToleranceConfig tol;
    if (tol_override > 0) tol.identity_tol = tol_override;
    tol.validate();
    return tol;
  }
};

ordered_json run_ttp(const ordered_json& j, const Args& args) {
  tk::ToleranceConfig tol = args.tolerances();
  tk::require_keys(j, {"e", "v"});
  tk::Tripotent e = tk::flexible_tripotent_from_json(j.at("e"), tol);
  tk::Tripotent v = tk::flexible_tripotent_from_json(j.at("v"), tol);
  tk::cplx forward = tk::ttp(e, v, tol);
  tk::cplx reverse = tk::ttp(v, e, tol);
  ordered_json out;
  out["ttp"] = tk::complex_to_json(forward);
  out["ttp_reverse"] = tk::complex_to_json(reverse);
  out["modulus"] = std::abs(forward);
  out["orthogonal"] = tk::are_orthogonal(e, v, tol);
  out["symmetric_check"] = std::abs(reverse - std::conj(forward)) <= tol.identity_tol;
  out["meta"] = make_meta(args.seed, args.samples, tol);
  return out;
}

ordered_json run_peirce(const ordered_json& j, const Args& args) {
  tk::ToleranceConfig tol = args.tolerances();
  tk::require_keys(j, {"e"});
  tk::Tripotent e = tk::flexible_tripotent_from_json(j.at("e"), tol);
  const tk::PeirceDecomposition& pd = e.peirce_data(tol);
  int dim = pd.factor.dim();
  tk::cmat sum = pd.projectors[0] + pd.projectors[1] + pd.projectors[2];
  double sum_residual = (sum - tk::cmat::Identity(dim, dim)).norm();
  double product_residual = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      tk::cmat prod = pd.projectors[a] * pd.projectors[b];
      if (a == b) prod -= pd.projectors[a];
      product_residual = std::max(product_residual, prod.norm());
    }
  }
  ordered_json pj = tk::peirce_to_json(pd);
  ordered_json out;
  out["dims"] = pj["dims"];
  out["eigenvalues"] = pj["eigenvalues"];
  out["projector_sum_residual"] = sum_residual;
  out["projector_product_residual"] = product_residual;
  out["projectors"] = pj["projectors"];
  out["meta"] = make_meta(args.seed, args.samples, tol);
  return out;
}

ordered_json run_audit(const ordered_json& j, const Args& args) {
  tk::ToleranceConfig tol = args.tolerances();
  tk::require_keys(j, {"factor"});
  tk::FactorDescriptor factor = tk::factor_from_json(j.at("factor"));
  tk::AxiomReport report = tk::audit_axioms(factor, args.samples, args.seed, tk::Exec::openmp);
  ordered_json out = tk::axiom_report_to_json(report);
  out["meta"] = make_meta(args.seed, args.samples, tol);
  return out;
}

ordered_json run_extend(const ordered_json& j, const Args& args) {
  tk::ToleranceConfig tol = args.tolerances();
  tk::require_keys(j, {"src", "dst", "pairs"});
  tk::MapOnMinimals map;
  map.src = tk::factor_from_json(j.at("src"));
  map.dst = tk::factor_from_json(j.at("dst"));
  if (!j.at("pairs").is_array()) throw tk::SchemaError("field 'pairs' must be an array");
  for (const auto& item : j.at("pairs")) {
    tk::require_keys(item, {"e", "image"});
    tk::Tripotent e = tk::flexible_tripotent_from_json(item.at("e"), tol);
    tk::Tripotent image = tk::flexible_tripotent_from_json(item.at("image"), tol);
    if (e.factor() != map.src || image.factor() != map.dst) {
      throw tk::MixedFactorError("table pair does not match the declared src and dst factors");
    }
    map.table.emplace_back(std::move(e), std::move(image));
  }
  tk::LinearOperator op = tk::extend_to_socle(map, tol);
  tk::WellDefinedReport wd = tk::check_welldefined_table(map, op, tol);
  tk::TtpReport tr =
      tk::check_ttp_preserving(op, 2 * args.samples, args.seed, tk::Exec::openmp, tol);
  tk::OrthogonalityReport og =
      tk::check_orthogonality_preserving(op, args.samples, args.seed, tk::Exec::openmp, tol);
  tk::IsomorphismReport iso =
      tk::certify_triple_isomorphism(op, args.samples, args.seed, tk::Exec::openmp, tol);
  ordered_json out;
  out["operator"] = tk::operator_to_json(op);
  out["welldefined"] = tk::welldefined_report_to_json(wd);
  out["ttp_check"] = tk::ttp_report_to_json(tr);
  out["orthogonality_check"] = tk::orthogonality_report_to_json(og);
  out["orthogonality_ok"] =
      og.max_violation <= tol.identity_tol && og.bad_images == 0;
  out["isomorphism"] = tk::isomorphism_report_to_json(iso);
  out["meta"] = make_meta(args.seed, args.samples, tol);
  return out;
}

ordered_json run_factorize(const ordered_json& j, const Args& args) {
  tk::ToleranceConfig tol = args.tolerances();
  tk::require_keys(j, {"operator"});
  tk::LinearOperator op = tk::operator_from_json(j.at("operator"));
  tk::RankOneFactorization fact = tk::factor_rank_one_preserver(op, tol);
  ordered_json out = tk::factorization_to_json(fact);
  out["meta"] = make_meta(args.seed, args.samples, tol);
  return out;
}

ordered_json run_decompose(const ordered_json& j, const Args& args) {
  tk::ToleranceConfig tol = args.tolerances();
  tk::require_keys(j, {"x"});
  tk::Element x = tk::element_from_json(j.at("x"));
  std::vector<tk::WeightedTripotent> parts = tk::minimal_orthogonal_decomposition(x, tol);
  tk::Element recon = tk::zero_element(x.factor);
  for (const tk::WeightedTripotent& p : parts) recon = recon + p.coef * p.tripotent.element();
  ordered_json out;
  out["parts"] = tk::decomposition_to_json(parts);
  out["reconstruction_residual"] = tk::distance(x, recon);
  out["meta"] = make_meta(args.seed, args.samples, tol);
  return out;
}

int json_int(const ordered_json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw tk::SchemaError("field '" + key + "' must be an integer");
  }
  return j.at(key).get<int>();
}

ordered_json run_generate(const ordered_json& j, const Args& args) {
  tk::ToleranceConfig tol = args.tolerances();
  if (!j.is_object()) throw tk::SchemaError("expected a JSON object");
  std::string what = json_string(j, "what");
  tk::Rng rng(args.seed);
  ordered_json out;
  if (what == "element" || what == "minimal_tripotent" || what == "tripotent") {
    tk::require_keys(j, {"what", "factor"}, {"rank"});
    tk::FactorDescriptor factor = tk::factor_from_json(j.at("factor"));
    if (what == "element") {
      out["element"] = tk::element_to_json(tk::random_element(factor, rng));
    } else if (what == "minimal_tripotent") {
      out["tripotent"] = tk::tripotent_to_json(tk::random_minimal_tripotent(factor, rng, tol));
    } else {
      int rank = j.contains("rank") ? json_int(j, "rank") : factor.rank();
      out["tripotent"] = tk::tripotent_to_json(tk::random_tripotent(factor, rank, rng, tol));
    }
  } else if (what == "type1_preserver") {
    tk::require_keys(j, {"what", "case", "m", "n"});
    std::string case_text = json_string(j, "case");
    if (case_text != "A" && case_text != "B") {
      throw tk::SchemaError("field 'case' must be A or B");
    }
    tk::PreserverCase kase = case_text == "A" ? tk::PreserverCase::A : tk::PreserverCase::B;
    tk::Type1PreserverSpec spec =
        tk::random_type1_preserver_spec(kase, json_int(j, "m"), json_int(j, "n"), rng);
    tk::GeneratedPreserver gen = tk::make_type1_preserver(spec, tol);
    ordered_json spec_json;
    spec_json["case"] = tk::case_name(spec.kase);
    spec_json["u"] = tk::matrix_to_json(spec.u);
    spec_json["v"] = tk::matrix_to_json(spec.v);
    out["spec"] = spec_json;
    out["operator"] = tk::operator_to_json(gen.op);
  } else if (what == "spin_automorphism") {
    tk::require_keys(j, {"what", "n"});
    tk::SpinAutSpec spec = tk::random_spin_automorphism_spec(json_int(j, "n"), rng);
    tk::GeneratedPreserver gen = tk::make_spin_automorphism(spec, tol);
    ordered_json spec_json;
    spec_json["rotation"] = tk::real_matrix_to_json(spec.rotation);
    spec_json["phase"] = tk::complex_to_json(spec.phase);
    out["spec"] = spec_json;
    out["operator"] = tk::operator_to_json(gen.op);
  } else {
    throw tk::SchemaError(
        "field 'what' must be element, minimal_tripotent, tripotent, type1_preserver, or "
        "spin_automorphism");
  }
  out["meta"] = make_meta(args.seed, args.samples, tol);
  return out;
}

const char* category_name(tk::ErrorCategory c) {
  switch (c) {
    case tk::ErrorCategory::parse:
      return "parse";
    case tk::ErrorCategory::precondition:
      return "precondition";
    case tk::ErrorCategory::numeric:
      return "numeric";
  }
  return "numeric";
}

int category_exit_code(tk::ErrorCategory c) {
  switch (c) {
    case tk::ErrorCategory::parse:
      return 2;
    case tk::ErrorCategory::precondition:
      return 3;
    case tk::ErrorCategory::numeric:
      return 4;
  }
  return 4;
}

void print_error(const std::string& kind, const std::string& category, const std::string& message) {
  ordered_json err;
  err["error"] = {{"kind", kind}, {"category", category}, {"message", message}};
  std::cout << err.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite dimensional JB*-triple toolkit"};
  app.require_subcommand(1);

  Args args;
  args.seed = default_seed();

  auto add_common = [&args](CLI::App* cmd) {
    cmd->add_option("--input", args.input, "input JSON: a path, '-' for stdin, or an inline object")
        ->required();
    cmd->add_option("--output", args.output, "output path or '-' for stdout");
    cmd->add_option("--seed", args.seed, "random seed (default: TRIPLEKIT_SEED or 0)");
    cmd->add_option("--samples", args.samples, "sample count for randomized checks");
    cmd->add_option("--tol", args.tol_override, "override identity_tol");
  };

  CLI::App* c_ttp = app.add_subcommand(
      "ttp", "transition pseudo-probability between two minimal tripotents");
  CLI::App* c_peirce = app.add_subcommand("peirce", "Peirce decomposition of a tripotent");
  CLI::App* c_audit = app.add_subcommand("audit", "sampled residuals for the triple axioms");
  CLI::App* c_extend =
      app.add_subcommand("extend", "extend a table map on minimal tripotents to a linear operator");
  CLI::App* c_factorize =
      app.add_subcommand("factorize", "two-sided multiplication form of a rank-one preserver");
  CLI::App* c_decompose =
      app.add_subcommand("decompose", "minimal orthogonal tripotent decomposition of an element");
  CLI::App* c_generate = app.add_subcommand("generate", "seeded random elements and tripotents");
  for (CLI::App* cmd : {c_ttp, c_peirce, c_audit, c_extend, c_factorize, c_decompose, c_generate}) {
    add_common(cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error("CliParseError", "parse", e.what());
    return 2;
  }

  try {
    ordered_json input = read_input(args.input);
    ordered_json out;
    if (*c_ttp) {
      out = run_ttp(input, args);
    } else if (*c_peirce) {
      out = run_peirce(input, args);
    } else if (*c_audit) {
      out = run_audit(input, args);
    } else if (*c_extend) {
      out = run_extend(input, args);
    } else if (*c_factorize) {
      out = run_factorize(input, args);
    } else if (*c_decompose) {
      out = run_decompose(input, args);
    } else if (*c_generate) {
      out = run_generate(input, args);
    }
    write_output(args.output, out);
    return 0;
  } catch (const tk::TripleError& e) {
    print_error(e.kind(), category_name(e.category()), e.what());
    return category_exit_code(e.category());
  } catch (const std::exception& e) {
    print_error("InternalError", "numeric", e.what());
    return 4;
  }
}
