#include "modrep/io.hpp"

#include <fstream>

namespace modrep {

std::string fnv1a64_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed,
                         const char* what) {
  if (!j.is_object()) fail(Errc::ParseError, std::string(what) + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) fail(Errc::ParseError, std::string("unknown key '") + it.key() + "' in " + what);
  }
}

const Json& require_key(const Json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end())
    fail(Errc::ParseError, std::string(what) + " is missing required key '" + key + "'");
  return *it;
}

std::size_t to_index(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !j.is_number_integer())
    fail(Errc::ParseError, std::string(what) + " must be an integer");
  long long v = j.get<long long>();
  if (v < 0) fail(Errc::ParseError, std::string(what) + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

std::string to_scalar_string(const Json& j, const char* what) {
  if (!j.is_string()) fail(Errc::ParseError, std::string(what) + " must be a scalar string");
  return j.get<std::string>();
}

}  // namespace

Json field_to_json(const FieldDesc& f) {
  Json j;
  if (f.is_prime_field()) {
    j["kind"] = "fp";
    j["p"] = f.p();
  } else {
    j["kind"] = "q";
  }
  return j;
}

FieldDesc field_from_json(const Json& j) {
  reject_unknown_keys(j, {"kind", "p"}, "field");
  std::string kind = require_key(j, "kind", "field").get<std::string>();
  if (kind == "q") {
    if (j.contains("p")) fail(Errc::ParseError, "rational field does not take p");
    return FieldDesc::rationals();
  }
  if (kind == "fp") {
    const Json& p = require_key(j, "p", "field");
    if (!p.is_number_integer() && !p.is_number_unsigned())
      fail(Errc::ParseError, "field p must be an integer");
    return FieldDesc::fp(p.get<std::int64_t>());
  }
  fail(Errc::ParseError, "field kind must be 'fp' or 'q'");
}

Json vec_to_json(const Vec& v) {
  Json j = Json::array();
  for (const auto& s : v) j.push_back(s.to_string());
  return j;
}

Vec vec_from_json(const Json& j, const FieldDesc& f, std::size_t len) {
  if (!j.is_array() || j.size() != len)
    fail(Errc::ParseError, "coordinate vector has wrong length");
  Vec v;
  v.reserve(len);
  for (const auto& e : j) v.push_back(Scalar::parse(f, to_scalar_string(e, "coordinate")));
  return v;
}

Json matrix_to_json(const Matrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(i, c).to_string());
    j.push_back(std::move(row));
  }
  return j;
}

Matrix matrix_from_json(const Json& j, const FieldDesc& f, std::size_t rows,
                        std::size_t cols) {
  if (!j.is_array() || j.size() != rows) fail(Errc::ParseError, "matrix has wrong row count");
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.size() != cols)
      fail(Errc::ParseError, "matrix has wrong column count");
    for (std::size_t c = 0; c < cols; ++c)
      m.at(i, c) = Scalar::parse(f, to_scalar_string(row[c], "matrix entry"));
  }
  return m;
}

Json subspace_to_json(const Subspace& s) { return matrix_to_json(s.basis()); }

Subspace subspace_from_json(const Json& j, const FieldDesc& f, std::size_t ambient) {
  if (!j.is_array()) fail(Errc::ParseError, "subspace must be an array of rows");
  std::vector<Vec> rows;
  for (const auto& row : j) rows.push_back(vec_from_json(row, f, ambient));
  return Subspace::from_spanning(f, ambient, rows);
}

Json poly_to_json(const Poly& p) {
  Json j = Json::array();
  for (const auto& c : p.coeffs()) j.push_back(c.to_string());
  return j;
}

Poly poly_from_json(const Json& j, const FieldDesc& f) {
  if (!j.is_array()) fail(Errc::ParseError, "polynomial must be an array of coefficients");
  std::vector<Scalar> coeffs;
  for (const auto& c : j) coeffs.push_back(Scalar::parse(f, to_scalar_string(c, "coefficient")));
  return Poly(f, std::move(coeffs));
}

Json algebra_to_json(const AlgebraData& a) {
  Json j;
  j["field"] = field_to_json(a.field());
  j["dim"] = a.dim();
  if (!a.labels().empty()) j["labels"] = a.labels();
  j["unit"] = vec_to_json(a.unit());
  Json entries = Json::array();
  for (const auto& e : a.structure()) {
    if (e.value.is_zero()) continue;
    entries.push_back(Json::array({e.i, e.j, e.k, e.value.to_string()}));
  }
  j["structure"] = std::move(entries);
  return j;
}

AlgebraPtr algebra_from_json(const Json& j) {
  reject_unknown_keys(j, {"field", "dim", "labels", "unit", "structure"}, "algebra");
  FieldDesc f = field_from_json(require_key(j, "field", "algebra"));
  std::size_t dim = to_index(require_key(j, "dim", "algebra"), "dim");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) fail(Errc::ParseError, "labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  Vec unit = vec_from_json(require_key(j, "unit", "algebra"), f, dim);
  std::vector<StructureEntry> entries;
  const Json& st = require_key(j, "structure", "algebra");
  if (!st.is_array()) fail(Errc::ParseError, "structure must be an array");
  for (const auto& e : st) {
    if (!e.is_array() || e.size() != 4)
      fail(Errc::ParseError, "structure entries are [i, j, k, value]");
    std::size_t i = to_index(e[0], "structure index");
    std::size_t jj = to_index(e[1], "structure index");
    std::size_t k = to_index(e[2], "structure index");
    if (i >= dim || jj >= dim || k >= dim)
      fail(Errc::ParseError, "structure index out of range");
    entries.push_back({i, jj, k, Scalar::parse(f, to_scalar_string(e[3], "structure value"))});
  }
  return std::make_shared<AlgebraData>(f, dim, std::move(entries), std::move(unit),
                                       std::move(labels));
}

Json module_payload_to_json(const ModuleRep& m) {
  Json j;
  j["dim"] = m.dim();
  Json action = Json::array();
  for (const auto& mat : m.actions()) action.push_back(matrix_to_json(mat));
  j["action"] = std::move(action);
  return j;
}

ModuleRep module_payload_from_json(const Json& j, AlgebraPtr algebra) {
  reject_unknown_keys(j, {"dim", "action"}, "module payload");
  std::size_t dim = to_index(require_key(j, "dim", "module"), "dim");
  const Json& action = require_key(j, "action", "module");
  if (!action.is_array() || action.size() != algebra->dim())
    fail(Errc::ParseError, "module needs one action matrix per algebra basis element");
  std::vector<Matrix> mats;
  for (const auto& a : action)
    mats.push_back(matrix_from_json(a, algebra->field(), dim, dim));
  return ModuleRep(std::move(algebra), dim, std::move(mats));
}

Json module_to_json(const ModuleRep& m, bool inline_algebra) {
  Json j = module_payload_to_json(m);
  if (inline_algebra) j["algebra"] = algebra_to_json(*m.algebra());
  return j;
}

ModuleRep module_from_json(const Json& j, const std::string& base_dir) {
  reject_unknown_keys(j, {"algebra", "dim", "action"}, "module");
  const Json& alg = require_key(j, "algebra", "module");
  AlgebraPtr a;
  if (alg.is_string()) {
    std::string path = alg.get<std::string>();
    if (!path.empty() && path[0] != '/') path = base_dir + "/" + path;
    std::ifstream in(path);
    if (!in) fail(Errc::ParseError, "cannot open referenced algebra file " + path);
    Json parsed;
    try {
      in >> parsed;
    } catch (const Json::exception& e) {
      fail(Errc::ParseError, std::string("bad JSON in referenced algebra: ") + e.what());
    }
    a = algebra_from_json(parsed);
  } else {
    a = algebra_from_json(alg);
  }
  Json payload;
  payload["dim"] = require_key(j, "dim", "module");
  payload["action"] = require_key(j, "action", "module");
  return module_payload_from_json(payload, std::move(a));
}

ModuleRep module_from_json(const Json& j, AlgebraPtr algebra) {
  Json payload;
  payload["dim"] = require_key(j, "dim", "module");
  payload["action"] = require_key(j, "action", "module");
  return module_payload_from_json(payload, std::move(algebra));
}

Json certificate_to_json(const Certificate& c) {
  Json j;
  j["kind"] = certificate_kind_name(c.kind());
  struct Visitor {
    Json& j;
    void operator()(const CertSimpleExhaustive& p) { j["vectors_spun"] = p.vectors_spun; }
    void operator()(const CertSimpleNorton& p) {
      j["element"] = vec_to_json(p.element);
      j["factor"] = poly_to_json(p.factor);
      j["kernel"] = matrix_to_json(p.kernel);
      j["dual_witness"] = vec_to_json(p.dual_witness);
    }
    void operator()(const CertNotSimple& p) { j["witness"] = subspace_to_json(p.witness); }
    void operator()(const CertIndecLocalEnd& p) {
      Json basis = Json::array();
      for (const auto& b : p.end_basis) basis.push_back(matrix_to_json(b));
      j["end_basis"] = std::move(basis);
      j["radical_basis"] = matrix_to_json(p.radical_basis);
      j["residue_degree"] = p.residue_degree;
    }
    void operator()(const CertIndecSimpleTop& p) {
      j["section"] = matrix_to_json(p.section);
      j["ideal_basis"] = matrix_to_json(p.ideal_basis);
      j["maximal"] = subspace_to_json(p.maximal);
      j["top_simple"] = certificate_to_json(*p.top_simple);
    }
    void operator()(const CertProjective& p) { j["section"] = matrix_to_json(p.section); }
    void operator()(const CertDecomposable& p) {
      j["idempotent"] = matrix_to_json(p.idempotent);
    }
  };
  std::visit(Visitor{j}, c.payload());
  return j;
}

Certificate certificate_from_json(const Json& j, const FieldDesc& f, std::size_t module_dim,
                                  std::size_t algebra_dim) {
  std::string kind = require_key(j, "kind", "certificate").get<std::string>();
  if (kind == "simple_by_exhaustive_spin") {
    return Certificate(
        CertSimpleExhaustive{to_index(require_key(j, "vectors_spun", "certificate"), "count")});
  }
  if (kind == "simple_by_norton") {
    Vec element = vec_from_json(require_key(j, "element", "certificate"), f, algebra_dim);
    Poly factor = poly_from_json(require_key(j, "factor", "certificate"), f);
    const Json& ker = require_key(j, "kernel", "certificate");
    Matrix kernel = matrix_from_json(ker, f, ker.size(), module_dim);
    Vec dual = vec_from_json(require_key(j, "dual_witness", "certificate"), f, module_dim);
    return Certificate(CertSimpleNorton{element, factor, kernel, dual});
  }
  if (kind == "not_simple_witness") {
    return Certificate(CertNotSimple{
        subspace_from_json(require_key(j, "witness", "certificate"), f, module_dim)});
  }
  if (kind == "indecomposable_by_local_end") {
    const Json& basis = require_key(j, "end_basis", "certificate");
    std::vector<Matrix> end_basis;
    for (const auto& b : basis)
      end_basis.push_back(matrix_from_json(b, f, module_dim, module_dim));
    const Json& rad = require_key(j, "radical_basis", "certificate");
    Matrix radical = matrix_from_json(rad, f, rad.size(), end_basis.size());
    return Certificate(CertIndecLocalEnd{
        end_basis, radical, to_index(require_key(j, "residue_degree", "certificate"), "deg")});
  }
  if (kind == "indecomposable_by_simple_top") {
    Matrix section = matrix_from_json(require_key(j, "section", "certificate"), f,
                                      module_dim * algebra_dim, module_dim);
    const Json& ib = require_key(j, "ideal_basis", "certificate");
    Matrix ideal = matrix_from_json(ib, f, ib.size(), algebra_dim);
    Subspace maximal =
        subspace_from_json(require_key(j, "maximal", "certificate"), f, module_dim);
    std::size_t top_dim = module_dim - maximal.dim();
    Certificate top = certificate_from_json(require_key(j, "top_simple", "certificate"), f,
                                            top_dim, algebra_dim);
    return Certificate(CertIndecSimpleTop{section, ideal, maximal,
                                          std::make_shared<Certificate>(std::move(top))});
  }
  if (kind == "projective_by_section") {
    return Certificate(CertProjective{matrix_from_json(
        require_key(j, "section", "certificate"), f, module_dim * algebra_dim, module_dim)});
  }
  if (kind == "decomposable_witness") {
    return Certificate(CertDecomposable{matrix_from_json(
        require_key(j, "idempotent", "certificate"), f, module_dim, module_dim)});
  }
  fail(Errc::ParseError, "unknown certificate kind '" + kind + "'");
}

Json validation_report_to_json(const ValidationReport& r) {
  Json j;
  j["valid"] = r.ok();
  Json v = Json::array();
  for (const auto& viol : r.violations) {
    Json one;
    one["kind"] = viol.kind;
    one["indices"] = viol.indices;
    one["detail"] = viol.detail;
    v.push_back(std::move(one));
  }
  j["violations"] = std::move(v);
  return j;
}

Json verification_report_to_json(const VerificationReport& r) {
  Json claims = Json::array();
  Json flags;
  for (const auto& c : r.claims) {
    Json one;
    one["name"] = c.name;
    one["pass"] = c.pass;
    if (!c.pass) one["witness"] = c.witness;
    claims.push_back(std::move(one));
    flags[c.name] = c.pass;
  }
  Json j;
  j["all_pass"] = r.all_pass();
  j["claims"] = std::move(claims);
  j["flags"] = std::move(flags);
  return j;
}

Json comp_series_to_json(const CompSeries& cs) {
  Json j;
  Json chain = Json::array();
  for (const auto& s : cs.chain) chain.push_back(s.dim());
  j["chain_dims"] = std::move(chain);
  Json factors = Json::array();
  for (std::size_t i = 0; i < cs.factors.size(); ++i) {
    Json one;
    one["class_id"] = cs.factor_class_ids[i];
    one["module"] = module_payload_to_json(cs.factors[i]);
    one["certificate"] = certificate_to_json(cs.factor_certs[i]);
    factors.push_back(std::move(one));
  }
  j["factors"] = std::move(factors);
  Json classes = Json::array();
  auto mult = cs.class_multiplicities();
  for (std::size_t c = 0; c < cs.class_reps.size(); ++c) {
    Json one;
    one["class_id"] = c;
    one["dim"] = cs.class_reps[c].dim();
    one["multiplicity"] = mult[c];
    classes.push_back(std::move(one));
  }
  j["classes"] = std::move(classes);
  return j;
}

Json decomposition_report_to_json(const DecompositionReport& rep,
                                  const std::vector<Summand>& summands) {
  Json j;
  Json s = Json::array();
  for (const auto& sm : summands) {
    Json one;
    one["class_id"] = sm.class_id;
    one["dim"] = sm.module.dim();
    one["embedding"] = subspace_to_json(sm.embedding);
    one["module"] = module_payload_to_json(sm.module);
    one["certificate"] = certificate_to_json(sm.indec_cert);
    s.push_back(std::move(one));
  }
  j["summands"] = std::move(s);
  Json classes = Json::array();
  for (std::size_t c = 0; c < rep.class_dims.size(); ++c) {
    Json one;
    one["class_id"] = c;
    one["dim"] = rep.class_dims[c];
    one["multiplicity"] = rep.class_multiplicities[c];
    classes.push_back(std::move(one));
  }
  j["classes"] = std::move(classes);
  return j;
}

Json bijection_table_to_json(const BijectionTable& t) {
  Json j;
  j["algebra"] = algebra_to_json(*t.algebra);
  j["seed"] = t.seed;
  Json rad;
  rad["dim"] = t.radical_space.dim();
  rad["basis"] = subspace_to_json(t.radical_space);
  rad["nilpotency_index"] = t.radical_nilpotency;
  j["radical"] = std::move(rad);

  Json pairs = Json::array();
  for (std::size_t i = 0; i < t.pims.size(); ++i) {
    const PimRecord& p = t.pims[i];
    const SimpleRecord& s = t.simples[t.pairing[i]];
    Json pim;
    pim["class_id"] = p.class_id;
    pim["dim"] = p.module.dim();
    pim["multiplicity"] = p.multiplicity;
    pim["generator"] = vec_to_json(p.generator);
    pim["embedding"] = subspace_to_json(p.embedding);
    pim["unique_maximal"] = subspace_to_json(p.unique_maximal);
    pim["module"] = module_payload_to_json(p.module);
    Json certs;
    certs["projective"] = certificate_to_json(p.proj_cert);
    certs["indecomposable"] = certificate_to_json(p.indec_cert);
    certs["simple_top"] = certificate_to_json(p.simple_top_cert);
    pim["certificates"] = std::move(certs);
    Json simple;
    simple["class_id"] = s.class_id;
    simple["dim"] = s.module.dim();
    simple["end_degree"] = s.end_field_degree;
    simple["module"] = module_payload_to_json(s.module);
    simple["certificate"] = certificate_to_json(s.simple_cert);
    Json pair;
    pair["pim"] = std::move(pim);
    pair["simple"] = std::move(simple);
    pair["hom_dim"] = t.hom_dims[i][t.pairing[i]];
    pairs.push_back(std::move(pair));
  }
  j["pairs"] = std::move(pairs);
  j["hom_dim_matrix"] = t.hom_dims;
  Json flags;
  for (const auto& c : t.checks.claims) flags[c.name] = c.pass;
  j["checks"] = std::move(flags);
  return j;
}

namespace {

void replay_walk(const Json& node, AlgebraPtr algebra, ReplayOutcome& out,
                 const std::string& path) {
  if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i)
      replay_walk(node[i], algebra, out, path + "[" + std::to_string(i) + "]");
    return;
  }
  if (!node.is_object()) return;
  if (node.contains("module") && (node.contains("certificate") || node.contains("certificates"))) {
    ModuleRep m = module_payload_from_json(node["module"], algebra);
    auto replay_one = [&](const Json& cj, const std::string& where) {
      Certificate cert =
          certificate_from_json(cj, algebra->field(), m.dim(), algebra->dim());
      std::string why;
      if (replay_certificate(m, cert, &why)) {
        ++out.verified;
      } else {
        out.failures.push_back(where + ": " + why);
      }
    };
    if (node.contains("certificate")) replay_one(node["certificate"], path);
    if (node.contains("certificates")) {
      for (auto it = node["certificates"].begin(); it != node["certificates"].end(); ++it)
        replay_one(it.value(), path + "." + it.key());
    }
  }
  for (auto it = node.begin(); it != node.end(); ++it) {
    if (it.key() == "module" || it.key() == "certificate" || it.key() == "certificates")
      continue;
    replay_walk(it.value(), algebra, out, path.empty() ? it.key() : path + "." + it.key());
  }
}

}  // namespace

ReplayOutcome replay_report(const Json& report) {
  if (!report.contains("algebra"))
    fail(Errc::ParseError, "report has no embedded algebra");
  AlgebraPtr algebra = algebra_from_json(report["algebra"]);
  ReplayOutcome out;
  replay_walk(report, algebra, out, "");
  return out;
}

}  // namespace modrep
