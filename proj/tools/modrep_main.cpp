#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "modrep/io.hpp"

namespace {

using namespace modrep;

struct CommonOpts {
  std::string input;
  std::string field_override;
  std::uint64_t seed = 0;
  std::string format = "table";
  std::size_t budget = 64;
  std::string module_file;
};

FieldDesc parse_field_spec(const std::string& spec) {
  if (spec == "q") return FieldDesc::rationals();
  if (spec.rfind("fp:", 0) == 0) {
    try {
      return FieldDesc::fp(std::stoll(spec.substr(3)));
    } catch (const std::invalid_argument&) {
      fail(Errc::ParseError, "bad field spec '" + spec + "'");
    } catch (const std::out_of_range&) {
      fail(Errc::ParseError, "bad field spec '" + spec + "'");
    }
  }
  fail(Errc::ParseError, "field spec must be 'q' or 'fp:<prime>', got '" + spec + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(Errc::ParseError, "bad JSON in " + what + ": " + e.what());
  }
}

struct LoadedInput {
  AlgebraPtr algebra;
  std::string hash;
  std::string source;
};

LoadedInput load_algebra(const CommonOpts& opts) {
  std::string text = read_file(opts.input);
  Json j = parse_json_text(text, opts.input);
  if (!opts.field_override.empty()) {
    j["field"] = field_to_json(parse_field_spec(opts.field_override));
  }
  AlgebraPtr a = algebra_from_json(j);
  return {a, fnv1a64_hex(text), opts.input};
}

Json report_header(const std::string& command, const CommonOpts& opts,
                   const LoadedInput& in) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["seed"] = opts.seed;
  j["input_hash"] = in.hash;
  j["input"] = in.source;
  return j;
}

void emit(const Json& j, const CommonOpts& opts, const std::string& table_text) {
  if (opts.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << table_text;
  }
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::ParseError:
    case Errc::BadParam:
    case Errc::UnsupportedField:
    case Errc::UnsupportedCharacteristic:
      return 2;
    case Errc::SearchBudgetExceeded:
      return 3;
    default:
      return 1;
  }
}

std::string fmt_dims(const std::vector<std::size_t>& dims) {
  std::string out = "{";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(dims[i]);
  }
  return out + "}";
}

int cmd_validate(const CommonOpts& opts) {
  LoadedInput in = load_algebra(opts);
  ValidationReport rep = validate_algebra(*in.algebra);
  Json j = report_header("validate", opts, in);
  j.update(validation_report_to_json(rep));
  std::ostringstream t;
  t << (rep.ok() ? "valid" : "INVALID") << " algebra, dim " << in.algebra->dim() << "\n";
  for (const auto& v : rep.violations) t << "  violation: " << v.kind << " " << v.detail << "\n";
  emit(j, opts, t.str());
  return rep.ok() ? 0 : 1;
}

int cmd_info(const CommonOpts& opts) {
  LoadedInput in = load_algebra(opts);
  Json j = report_header("info", opts, in);
  j["dim"] = in.algebra->dim();
  j["field"] = field_to_json(in.algebra->field());
  Json labels = Json::array();
  for (std::size_t i = 0; i < in.algebra->dim(); ++i) labels.push_back(in.algebra->label(i));
  j["labels"] = std::move(labels);
  j["unit"] = vec_to_json(in.algebra->unit());
  j["structure_entries"] = in.algebra->structure().size();
  std::ostringstream t;
  t << "dim " << in.algebra->dim() << " algebra over " << in.algebra->field().to_string()
    << ", " << in.algebra->structure().size() << " structure entries\n";
  emit(j, opts, t.str());
  return 0;
}

int cmd_radical(const CommonOpts& opts) {
  LoadedInput in = load_algebra(opts);
  if (in.algebra->field().is_rationals()) {
    // The decision engine is prime-field only; over Q the trace-form radical
    // is the supported route.
    IdealHandle rad = dickson_radical(in.algebra);
    std::size_t nil = radical_nilpotency_index(*in.algebra, rad);
    Json j = report_header("radical", opts, in);
    j["algebra"] = algebra_to_json(*in.algebra);
    j["radical_dim"] = rad.dim();
    j["radical_basis"] = subspace_to_json(rad.space());
    j["nilpotency_index"] = nil;
    j["method"] = "dickson_trace_form";
    std::ostringstream t;
    t << "radical dim " << rad.dim() << ", nilpotency index " << nil
      << " (trace form; simple modules need a prime field)\n";
    emit(j, opts, t.str());
    return 0;
  }
  RadicalResult rad = algebra_radical(in.algebra, opts.seed);
  std::size_t nil = radical_nilpotency_index(*in.algebra, rad.radical);
  Json j = report_header("radical", opts, in);
  j["algebra"] = algebra_to_json(*in.algebra);
  j["radical_dim"] = rad.radical.dim();
  j["radical_basis"] = subspace_to_json(rad.radical.space());
  j["nilpotency_index"] = nil;
  Json simples = Json::array();
  for (std::size_t i = 0; i < rad.simples.size(); ++i) {
    Json s;
    s["class_id"] = i;
    s["dim"] = rad.simples[i].dim();
    s["module"] = module_payload_to_json(rad.simples[i]);
    s["certificate"] = certificate_to_json(rad.simple_certs[i]);
    simples.push_back(std::move(s));
  }
  j["simples"] = std::move(simples);

  std::ostringstream t;
  t << "radical dim " << rad.radical.dim() << ", nilpotency index " << nil << "\n";
  // Cross-check with the trace form where Dickson's criterion applies.
  const FieldDesc& f = in.algebra->field();
  if (f.is_prime_field() && f.p() > static_cast<std::int64_t>(in.algebra->dim())) {
    IdealHandle dickson = dickson_radical(in.algebra);
    bool agree = dickson.space() == rad.radical.space();
    j["dickson"] = Json{{"applicable", true}, {"agrees", agree}};
    t << "dickson trace-form radical " << (agree ? "agrees" : "DISAGREES") << "\n";
    if (!agree) {
      emit(j, opts, t.str());
      return 1;
    }
  } else {
    j["dickson"] = Json{{"applicable", false}};
  }
  emit(j, opts, t.str());
  return 0;
}

int cmd_decompose(const CommonOpts& opts) {
  LoadedInput in = load_algebra(opts);
  std::optional<ModuleRep> m;
  if (!opts.module_file.empty()) {
    Json mj = parse_json_text(read_file(opts.module_file), opts.module_file);
    m = module_from_json(mj, in.algebra);
    ValidationReport v = validate_module(*m);
    if (!v.ok()) fail(Errc::ParseError, "module file fails validation: " + v.violations[0].detail);
  } else {
    m = regular_module(in.algebra);
  }
  DecompositionReport rep = indecomposable_decomposition(*m, opts.seed, opts.budget);
  Json j = report_header("decompose", opts, in);
  j["algebra"] = algebra_to_json(*in.algebra);
  j["module_dim"] = m->dim();
  j.update(decomposition_report_to_json(rep, rep.summands));
  std::ostringstream t;
  t << rep.summands.size() << " indecomposable summands, " << rep.class_dims.size()
    << " classes, dims " << fmt_dims(rep.class_dims) << "\n";
  emit(j, opts, t.str());
  return 0;
}

int cmd_comp_series(const CommonOpts& opts) {
  LoadedInput in = load_algebra(opts);
  std::optional<ModuleRep> m;
  if (!opts.module_file.empty()) {
    Json mj = parse_json_text(read_file(opts.module_file), opts.module_file);
    m = module_from_json(mj, in.algebra);
    ValidationReport v = validate_module(*m);
    if (!v.ok()) fail(Errc::ParseError, "module file fails validation: " + v.violations[0].detail);
  } else {
    m = regular_module(in.algebra);
  }
  CompSeries cs = composition_series(*m, opts.seed, opts.budget);
  Json j = report_header("comp-series", opts, in);
  j["algebra"] = algebra_to_json(*in.algebra);
  j.update(comp_series_to_json(cs));
  std::ostringstream t;
  t << cs.factors.size() << " composition factors, " << cs.class_reps.size() << " classes\n";
  emit(j, opts, t.str());
  return 0;
}

int cmd_simples(const CommonOpts& opts) {
  LoadedInput in = load_algebra(opts);
  BijectionTable table = bijection(in.algebra, opts.seed);
  Json j = report_header("simples", opts, in);
  j["algebra"] = algebra_to_json(*in.algebra);
  Json simples = Json::array();
  for (const auto& s : table.simples) {
    Json one;
    one["class_id"] = s.class_id;
    one["dim"] = s.module.dim();
    one["end_degree"] = s.end_field_degree;
    one["module"] = module_payload_to_json(s.module);
    one["certificate"] = certificate_to_json(s.simple_cert);
    simples.push_back(std::move(one));
  }
  j["simples"] = std::move(simples);
  std::ostringstream t;
  t << table.simples.size() << " simple classes\n";
  for (const auto& s : table.simples)
    t << "  class " << s.class_id << ": dim " << s.module.dim() << ", End degree "
      << s.end_field_degree << "\n";
  emit(j, opts, t.str());
  return 0;
}

int cmd_pims(const CommonOpts& opts) {
  LoadedInput in = load_algebra(opts);
  BijectionTable table = bijection(in.algebra, opts.seed);
  Json j = report_header("pims", opts, in);
  j["algebra"] = algebra_to_json(*in.algebra);
  Json pims_json = Json::array();
  for (const auto& p : table.pims) {
    Json one;
    one["class_id"] = p.class_id;
    one["dim"] = p.module.dim();
    one["multiplicity"] = p.multiplicity;
    one["generator"] = vec_to_json(p.generator);
    one["top_class_id"] = p.top_class_id;
    one["module"] = module_payload_to_json(p.module);
    Json certs;
    certs["projective"] = certificate_to_json(p.proj_cert);
    certs["indecomposable"] = certificate_to_json(p.indec_cert);
    certs["simple_top"] = certificate_to_json(p.simple_top_cert);
    one["certificates"] = std::move(certs);
    pims_json.push_back(std::move(one));
  }
  j["pims"] = std::move(pims_json);
  std::ostringstream t;
  t << table.pims.size() << " PIM classes\n";
  for (const auto& p : table.pims)
    t << "  class " << p.class_id << ": dim " << p.module.dim() << ", multiplicity "
      << p.multiplicity << "\n";
  emit(j, opts, t.str());
  return 0;
}

int cmd_bijection(const CommonOpts& opts) {
  LoadedInput in = load_algebra(opts);
  BijectionTable table = bijection(in.algebra, opts.seed);
  Json j = report_header("bijection", opts, in);
  j.update(bijection_table_to_json(table));
  std::ostringstream t;
  t << table.pims.size() << " pairs (PIM <-> simple)\n";
  for (std::size_t i = 0; i < table.pims.size(); ++i) {
    const auto& p = table.pims[i];
    const auto& s = table.simples[table.pairing[i]];
    t << "  P" << p.class_id << " (dim " << p.module.dim() << ", mult " << p.multiplicity
      << ") <-> S" << s.class_id << " (dim " << s.module.dim() << ", End degree "
      << s.end_field_degree << "), dim Hom = " << table.hom_dims[i][table.pairing[i]] << "\n";
  }
  t << "radical dim " << table.radical_space.dim() << ", nilpotency index "
    << table.radical_nilpotency << "\n";
  emit(j, opts, t.str());
  return table.checks.all_pass() ? 0 : 1;
}

int cmd_check(const CommonOpts& opts) {
  LoadedInput in = load_algebra(opts);
  VerificationReport rep = verify_theorems(in.algebra, opts.seed);
  Json j = report_header("check", opts, in);
  j["algebra"] = algebra_to_json(*in.algebra);
  j.update(verification_report_to_json(rep));
  std::ostringstream t;
  for (const auto& c : rep.claims) {
    t << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
    if (!c.pass) t << "  [" << c.witness << "]";
    t << "\n";
  }
  emit(j, opts, t.str());
  return rep.all_pass() ? 0 : 1;
}

int cmd_verify_cert(const CommonOpts& opts) {
  std::string text = read_file(opts.input);
  Json report = parse_json_text(text, opts.input);
  ReplayOutcome out = replay_report(report);
  Json j;
  j["tool_version"] = kToolVersion;
  j["command"] = "verify-cert";
  j["input"] = opts.input;
  j["input_hash"] = fnv1a64_hex(text);
  j["seed"] = opts.seed;
  j["verified"] = out.verified;
  j["failures"] = out.failures;
  std::ostringstream t;
  t << out.verified << " certificates verified, " << out.failures.size() << " failed\n";
  for (const auto& f : out.failures) t << "  FAIL " << f << "\n";
  emit(j, opts, t.str());
  return out.failures.empty() ? 0 : 1;
}

struct GenOpts {
  std::string kind;
  std::size_t n = 2;
  std::string left, right;
  std::string field = "fp:5";
  std::string output;
};

AlgebraPtr build_from_spec(const std::string& spec, const FieldDesc& f);

AlgebraPtr build_kind(const std::string& kind, std::size_t n, const std::string& left,
                      const std::string& right, const FieldDesc& f) {
  if (kind == "upper-triangular") return build_upper_triangular(f, n);
  if (kind == "full-matrix") return build_full_matrix(f, n);
  if (kind == "cyclic-group") return build_cyclic_group(f, n);
  if (kind == "truncated-poly") return build_truncated_poly(f, n);
  if (kind == "direct-product") {
    if (left.empty() || right.empty())
      fail(Errc::BadParam, "direct-product needs --left and --right specs like 'cyclic-group:3'");
    return build_direct_product(*build_from_spec(left, f), *build_from_spec(right, f));
  }
  fail(Errc::BadParam, "unknown builder kind '" + kind + "'");
}

AlgebraPtr build_from_spec(const std::string& spec, const FieldDesc& f) {
  auto colon = spec.rfind(':');
  if (colon == std::string::npos)
    fail(Errc::BadParam, "builder spec must look like 'kind:n', got '" + spec + "'");
  std::string kind = spec.substr(0, colon);
  std::size_t n = 0;
  try {
    n = static_cast<std::size_t>(std::stoull(spec.substr(colon + 1)));
  } catch (const std::exception&) {
    fail(Errc::BadParam, "bad builder parameter in '" + spec + "'");
  }
  return build_kind(kind, n, "", "", f);
}

int cmd_gen(const GenOpts& gen, const std::string& format) {
  FieldDesc f = parse_field_spec(gen.field);
  AlgebraPtr a = build_kind(gen.kind, gen.n, gen.left, gen.right, f);
  Json j = algebra_to_json(*a);
  std::string text = j.dump(2) + "\n";
  if (gen.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(gen.output, std::ios::binary);
    if (!out) fail(Errc::ParseError, "cannot write " + gen.output);
    out << text;
    if (format != "json")
      std::cout << "wrote dim-" << a->dim() << " algebra to " << gen.output << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic analysis of finite-dimensional algebras: radicals, "
               "composition series, Krull-Schmidt decompositions and the projective "
               "indecomposable <-> simple correspondence, with replayable certificates."};
  app.require_subcommand(1);

  CommonOpts opts;
  GenOpts gen;
  std::string command;

  auto add_common = [&](CLI::App* sub, bool with_input = true) {
    if (with_input)
      sub->add_option("input", opts.input, "algebra definition file (JSON)")->required();
    sub->add_option("--field", opts.field_override, "override the base field (fp:<p> or q)");
    sub->add_option("--seed", opts.seed, "deterministic seed echoed in all outputs");
    sub->add_option("--format", opts.format, "output format: table or json")
        ->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--budget", opts.budget, "search budget override");
  };

  CLI::App* sub;
  sub = app.add_subcommand("validate", "check the algebra axioms");
  add_common(sub);
  sub->callback([&] { command = "validate"; });
  sub = app.add_subcommand("info", "print basic facts about an algebra file");
  add_common(sub);
  sub->callback([&] { command = "info"; });
  sub = app.add_subcommand("radical", "Jacobson radical, nilpotency index, simple modules");
  add_common(sub);
  sub->callback([&] { command = "radical"; });
  sub = app.add_subcommand("decompose", "Krull-Schmidt decomposition with certificates");
  add_common(sub);
  sub->add_option("--module", opts.module_file, "module file (defaults to the regular module)");
  sub->callback([&] { command = "decompose"; });
  sub = app.add_subcommand("comp-series", "Jordan-Holder composition series");
  add_common(sub);
  sub->add_option("--module", opts.module_file, "module file (defaults to the regular module)");
  sub->callback([&] { command = "comp-series"; });
  sub = app.add_subcommand("simples", "simple module classes with End fields");
  add_common(sub);
  sub->callback([&] { command = "simples"; });
  sub = app.add_subcommand("pims", "projective indecomposable classes");
  add_common(sub);
  sub->callback([&] { command = "pims"; });
  sub = app.add_subcommand("bijection", "the PIM <-> simple correspondence table");
  add_common(sub);
  sub->callback([&] { command = "bijection"; });
  sub = app.add_subcommand("check", "run the full theorem battery");
  add_common(sub);
  sub->callback([&] { command = "check"; });
  sub = app.add_subcommand("verify-cert", "replay the certificates inside a report");
  add_common(sub);
  sub->callback([&] { command = "verify-cert"; });

  sub = app.add_subcommand("gen", "write a builder algebra to a file");
  sub->add_option("kind", gen.kind,
                  "upper-triangular | full-matrix | cyclic-group | truncated-poly | "
                  "direct-product")
      ->required();
  sub->add_option("--n", gen.n, "size parameter");
  sub->add_option("--left", gen.left, "left factor spec for direct-product (kind:n)");
  sub->add_option("--right", gen.right, "right factor spec for direct-product (kind:n)");
  sub->add_option("--field", gen.field, "base field (fp:<p> or q)");
  sub->add_option("--output,-o", gen.output, "output path (stdout if omitted)");
  sub->add_option("--format", opts.format, "output format: table or json")
      ->check(CLI::IsMember({"table", "json"}));
  sub->callback([&] { command = "gen"; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (command == "validate") return cmd_validate(opts);
    if (command == "info") return cmd_info(opts);
    if (command == "radical") return cmd_radical(opts);
    if (command == "decompose") return cmd_decompose(opts);
    if (command == "comp-series") return cmd_comp_series(opts);
    if (command == "simples") return cmd_simples(opts);
    if (command == "pims") return cmd_pims(opts);
    if (command == "bijection") return cmd_bijection(opts);
    if (command == "check") return cmd_check(opts);
    if (command == "verify-cert") return cmd_verify_cert(opts);
    if (command == "gen") return cmd_gen(gen, opts.format);
  } catch (const modrep::Error& e) {
    if (opts.format == "json") {
      Json err;
      err["error"] = Json{{"kind", errc_name(e.code())}, {"message", e.what()}};
      std::cerr << err.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
