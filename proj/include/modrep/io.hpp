#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "modrep/correspondence.hpp"

namespace modrep {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::json;

/// FNV-1a 64-bit content hash, hex encoded; embedded in every report so runs
/// are attributable to exact input bytes.
std::string fnv1a64_hex(std::string_view data);

Json field_to_json(const FieldDesc& f);
FieldDesc field_from_json(const Json& j);

/// Algebra definition files. Strict: unknown keys are rejected.
Json algebra_to_json(const AlgebraData& a);
AlgebraPtr algebra_from_json(const Json& j);

/// Module files; "algebra" may be inline or a path relative to base_dir.
Json module_to_json(const ModuleRep& m, bool inline_algebra = true);
ModuleRep module_from_json(const Json& j, const std::string& base_dir = ".");
ModuleRep module_from_json(const Json& j, AlgebraPtr algebra);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const FieldDesc& f, std::size_t rows, std::size_t cols);
Json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j, const FieldDesc& f, std::size_t ambient);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j, const FieldDesc& f, std::size_t len);

Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j, const FieldDesc& f);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j, const FieldDesc& f,
                                  std::size_t module_dim, std::size_t algebra_dim);

Json module_payload_to_json(const ModuleRep& m);  // dim + action only
ModuleRep module_payload_from_json(const Json& j, AlgebraPtr algebra);

Json validation_report_to_json(const ValidationReport& r);
Json verification_report_to_json(const VerificationReport& r);
Json comp_series_to_json(const CompSeries& cs);
Json decomposition_report_to_json(const DecompositionReport& rep,
                                  const std::vector<Summand>& summands);
Json bijection_table_to_json(const BijectionTable& t);

/// Walk a report and replay every {"module": ..., "certificate(s)": ...}
/// object found against the report's algebra.
struct ReplayOutcome {
  std::size_t verified = 0;
  std::vector<std::string> failures;
};
ReplayOutcome replay_report(const Json& report);

}  // namespace modrep
