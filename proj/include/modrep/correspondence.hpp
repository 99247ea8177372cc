#pragma once

#include "modrep/decomp.hpp"

namespace modrep {

/// One projective indecomposable class: a certified representative summand of
/// the regular module together with its cyclic generator, unique maximal
/// submodule, and simple top.
struct PimRecord {
  ModuleRep module;
  Subspace embedding;  // of the representative inside the regular module
  std::size_t class_id;
  std::size_t multiplicity;  // in the regular module
  Vec generator;             // cyclic generator, module coordinates
  std::size_t top_class_id;
  Subspace unique_maximal;  // = rad(A) * module
  ModuleRep top_module;
  Certificate proj_cert;        // ProjectiveBySection
  Certificate indec_cert;       // IndecomposableByLocalEnd
  Certificate simple_top_cert;  // IndecomposableBySimpleTop
};

struct SimpleRecord {
  ModuleRep module;
  std::size_t class_id;
  std::size_t end_field_degree;  // End(S) = F_{p^d}
  Certificate simple_cert;
};

struct ClaimResult {
  std::string name;
  bool pass;
  std::string witness;  // populated on failure
};

struct VerificationReport {
  std::vector<ClaimResult> claims;
  bool all_pass() const {
    for (const auto& c : claims)
      if (!c.pass) return false;
    return true;
  }
};

struct BijectionTable {
  AlgebraPtr algebra;
  std::uint64_t seed;
  std::vector<PimRecord> pims;
  std::vector<SimpleRecord> simples;
  std::vector<std::size_t> pairing;  // pim class id -> simple class id
  std::vector<std::vector<std::size_t>> hom_dims;  // [pim][simple]
  Subspace radical_space;
  std::size_t radical_nilpotency;
  VerificationReport checks;  // structural flags recorded at build time
};

/// Certified PIM classes of the regular module.
std::vector<PimRecord> pims(AlgebraPtr a, std::uint64_t seed);

/// The unique simple quotient (already certified during table construction).
const ModuleRep& top(const PimRecord& p);

/// The unique PIM class admitting a nonzero hom onto the given simple.
const PimRecord& projective_cover(const BijectionTable& table, const SimpleRecord& s);

/// The full correspondence: PIM classes paired with simple classes by
/// nonzero Hom, cross-checked against top isomorphism.
BijectionTable bijection(AlgebraPtr a, std::uint64_t seed);

/// hom_dims matrix of the table (entry (i, j) = dim Hom(P_i, S_j)).
std::vector<std::vector<std::size_t>> hom_dim_matrix(const BijectionTable& table);

struct EndSimpleReport {
  std::size_t degree;  // End(S) = F_{p^degree}
};
/// Verify End(S) is a finite field and report its degree.
EndSimpleReport end_simple_structure(const SimpleRecord& s);

/// Re-run the pairing-level checks against a (possibly tampered) table;
/// this is the verifier the negative controls exercise.
VerificationReport verify_table(const BijectionTable& table);

/// The full theorem battery for one algebra.
VerificationReport verify_theorems(AlgebraPtr a, std::uint64_t seed);

}  // namespace modrep
