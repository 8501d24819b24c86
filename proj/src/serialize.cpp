#include "triplekit/serialize.hpp"

#include <algorithm>

namespace triplekit {

namespace {

int get_int(const ordered_json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw SchemaError("field '" + key + "' must be an integer");
  }
  return j.at(key).get<int>();
}

std::string get_string(const ordered_json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw SchemaError("field '" + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

ordered_json real_rows(const cmat& m, bool imag) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(imag ? m(i, j).imag() : m(i, j).real());
    rows.push_back(row);
  }
  return rows;
}

void put_matrix(ordered_json& j, const cmat& m) {
  j["re"] = real_rows(m, false);
  j["im"] = real_rows(m, true);
}

rmat rows_to_rmat(const ordered_json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw SchemaError("field '" + key + "' must be an array of rows");
  }
  const ordered_json& rows = j.at(key);
  if (rows.empty()) throw SchemaError("field '" + key + "' must not be empty");
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array()) throw SchemaError("field '" + key + "' must contain rows");
    if (i == 0) cols = rows[i].size();
    if (rows[i].size() != cols || cols == 0) {
      throw SchemaError("field '" + key + "' must be rectangular and nonempty");
    }
    for (const auto& entry : rows[i]) {
      if (!entry.is_number()) throw SchemaError("matrix entries must be numbers");
    }
  }
  rmat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rows[i][c].get<double>();
  }
  return m;
}

cmat get_matrix(const ordered_json& j, int rows, int cols, const std::string& what) {
  rmat re = rows_to_rmat(j, "re");
  rmat im = rows_to_rmat(j, "im");
  if (re.rows() != im.rows() || re.cols() != im.cols()) {
    throw SchemaError(what + ": re and im shapes differ");
  }
  if (re.rows() != rows || re.cols() != cols) {
    throw SchemaError(what + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                      " entries, got " + std::to_string(re.rows()) + "x" +
                      std::to_string(re.cols()));
  }
  cmat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int c = 0; c < cols; ++c) m(i, c) = cplx(re(i, c), im(i, c));
  }
  return m;
}

}  // namespace

void require_keys(const ordered_json& j, const std::vector<std::string>& required,
                  const std::vector<std::string>& optional) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  for (const std::string& key : required) {
    if (!j.contains(key)) throw SchemaError("missing required field '" + key + "'");
  }
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    if (std::find(required.begin(), required.end(), key) == required.end() &&
        std::find(optional.begin(), optional.end(), key) == optional.end()) {
      throw SchemaError("unexpected field '" + key + "'");
    }
  }
}

ordered_json complex_to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

ordered_json matrix_to_json(const cmat& m) {
  ordered_json j;
  put_matrix(j, m);
  return j;
}

ordered_json real_matrix_to_json(const rmat& m) { return real_rows(m.cast<cplx>(), false); }

ordered_json factor_to_json(const FactorDescriptor& f) {
  ordered_json j;
  j["kind"] = kind_name(f.kind);
  if (f.kind == FactorKind::type1) j["m"] = f.m;
  j["n"] = f.n;
  return j;
}

FactorDescriptor factor_from_json(const ordered_json& j) {
  if (!j.is_object()) throw SchemaError("factor must be a JSON object");
  std::string kind = get_string(j, "kind");
  if (kind == "type1") {
    require_keys(j, {"kind", "m", "n"});
    return FactorDescriptor::type1(get_int(j, "m"), get_int(j, "n"));
  }
  require_keys(j, {"kind", "n"});
  int n = get_int(j, "n");
  if (kind == "type2") return FactorDescriptor::type2(n);
  if (kind == "type3") return FactorDescriptor::type3(n);
  if (kind == "spin") return FactorDescriptor::spin(n);
  throw SchemaError("unknown factor kind '" + kind + "'");
}

ordered_json element_to_json(const Element& x) {
  ordered_json j;
  j["factor"] = factor_to_json(x.factor);
  // Spin data is a column internally but serializes as one row.
  cmat view = (x.factor.kind == FactorKind::spin) ? cmat(x.data.transpose()) : x.data;
  put_matrix(j, view);
  return j;
}

Element element_from_json(const ordered_json& j) {
  require_keys(j, {"factor", "re", "im"});
  FactorDescriptor f = factor_from_json(j.at("factor"));
  if (f.kind == FactorKind::spin) {
    cmat row = get_matrix(j, 1, f.n, "spin element");
    return make_element(f, cmat(row.transpose()));
  }
  return make_element(f, get_matrix(j, f.rows(), f.cols(), "element"));
}

ordered_json tripotent_to_json(const Tripotent& e) {
  ordered_json j = element_to_json(e.element());
  j["validated"] = true;
  return j;
}

Tripotent tripotent_from_json(const ordered_json& j, const ToleranceConfig& tol) {
  require_keys(j, {"factor", "re", "im", "validated"});
  if (!j.at("validated").is_boolean() || !j.at("validated").get<bool>()) {
    throw SchemaError("tripotent payloads must carry validated: true");
  }
  ordered_json element = j;
  element.erase("validated");
  return Tripotent(element_from_json(element), tol);
}

Tripotent flexible_tripotent_from_json(const ordered_json& j, const ToleranceConfig& tol) {
  if (j.is_object() && j.contains("validated")) return tripotent_from_json(j, tol);
  return Tripotent(element_from_json(j), tol);
}

ordered_json operator_to_json(const LinearOperator& op) {
  ordered_json j;
  j["src"] = factor_to_json(op.src);
  j["dst"] = factor_to_json(op.dst);
  j["linearity"] = op.linearity == Linearity::linear ? "linear" : "conjugate_linear";
  put_matrix(j, op.matrix);
  return j;
}

LinearOperator operator_from_json(const ordered_json& j) {
  require_keys(j, {"src", "dst", "linearity", "re", "im"});
  LinearOperator op;
  op.src = factor_from_json(j.at("src"));
  op.dst = factor_from_json(j.at("dst"));
  std::string linearity = get_string(j, "linearity");
  if (linearity == "linear") {
    op.linearity = Linearity::linear;
  } else if (linearity == "conjugate_linear") {
    op.linearity = Linearity::conjugate_linear;
  } else {
    throw SchemaError("linearity must be 'linear' or 'conjugate_linear'");
  }
  op.matrix = get_matrix(j, op.dst.dim(), op.src.dim(), "operator matrix");
  return op;
}

ordered_json tolerances_to_json(const ToleranceConfig& tol) {
  ordered_json j;
  j["identity_tol"] = tol.identity_tol;
  j["norm_tol"] = tol.norm_tol;
  j["eig_cluster_tol"] = tol.eig_cluster_tol;
  return j;
}

ordered_json axiom_report_to_json(const AxiomReport& r) {
  ordered_json j;
  j["jordan_residual_max"] = r.jordan_residual_max;
  j["l_selfadjoint_residual_max"] = r.l_selfadjoint_residual_max;
  j["l_min_eigenvalue"] = r.l_min_eigenvalue;
  j["cube_norm_residual_max"] = r.cube_norm_residual_max;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  return j;
}

ordered_json welldefined_report_to_json(const WellDefinedReport& r) {
  ordered_json j;
  j["max_residual"] = r.max_residual;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  return j;
}

ordered_json ttp_report_to_json(const TtpReport& r) {
  ordered_json j;
  j["max_deviation"] = r.max_deviation;
  j["pairs"] = r.pairs;
  j["bad_images"] = r.bad_images;
  j["seed"] = r.seed;
  return j;
}

ordered_json orthogonality_report_to_json(const OrthogonalityReport& r) {
  ordered_json j;
  j["max_violation"] = r.max_violation;
  j["pairs_tested"] = r.pairs_tested;
  j["without_partner"] = r.without_partner;
  j["bad_images"] = r.bad_images;
  j["seed"] = r.seed;
  return j;
}

ordered_json isomorphism_report_to_json(const IsomorphismReport& r) {
  ordered_json j;
  j["morphism_residual"] = r.morphism_residual;
  j["isometry_residual"] = r.isometry_residual;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  return j;
}

ordered_json scale_recovery_to_json(const ScaleRecovery& r) {
  ordered_json j;
  j["gamma"] = r.gamma;
  j["max_norm_spread"] = r.max_norm_spread;
  j["max_orthogonality_violation"] = r.max_orthogonality_violation;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  return j;
}

ordered_json peirce_to_json(const PeirceDecomposition& pd) {
  ordered_json j;
  std::array<int, 3> dims = pd.dims();
  j["dims"] = {dims[0], dims[1], dims[2]};
  ordered_json vals = ordered_json::array();
  for (int k = 0; k < pd.eigenvalues.size(); ++k) vals.push_back(pd.eigenvalues(k));
  j["eigenvalues"] = vals;
  ordered_json projectors = ordered_json::array();
  for (int k = 0; k < 3; ++k) projectors.push_back(matrix_to_json(pd.projectors[k]));
  j["projectors"] = projectors;
  return j;
}

ordered_json decomposition_to_json(const std::vector<WeightedTripotent>& parts) {
  ordered_json arr = ordered_json::array();
  for (const WeightedTripotent& p : parts) {
    ordered_json item;
    item["coef"] = p.coef;
    item["tripotent"] = tripotent_to_json(p.tripotent);
    arr.push_back(item);
  }
  return arr;
}

ordered_json factorization_to_json(const RankOneFactorization& f) {
  ordered_json j;
  j["case"] = case_name(f.kase);
  ordered_json u, v;
  put_matrix(u, f.u);
  put_matrix(v, f.v);
  j["u"] = u;
  j["v"] = v;
  j["residual"] = f.residual;
  j["gauge_note"] = f.gauge_note;
  return j;
}

ordered_json classification_to_json(const AutomorphismClassification& c) {
  ordered_json j;
  j["factorization"] = factorization_to_json(c.factorization);
  j["unitarity_defect_u"] = c.unitarity_defect_u;
  j["unitarity_defect_v"] = c.unitarity_defect_v;
  j["reconstruction_residual"] = c.reconstruction_residual;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  return j;
}

ordered_json sphere_extension_to_json(const SphereExtension& s) {
  ordered_json j;
  j["operator"] = operator_to_json(s.op);
  j["max_gram_defect"] = s.max_gram_defect;
  j["max_consistency_residual"] = s.max_consistency_residual;
  j["isometry_defect"] = s.isometry_defect;
  return j;
}

}  // namespace triplekit
