#pragma once

#include <memory>
#include <variant>

#include "modrep/module.hpp"
#include "modrep/rng.hpp"

namespace modrep {

// Certificate payloads. Every certificate is replayable: the payload alone
// re-verifies the claim without re-running any search.

/// All p^dim - 1 nonzero vectors spun to the whole module.
struct CertSimpleExhaustive {
  std::size_t vectors_spun;
};

/// Norton-style: every line of ker f(rho(a)) spins full, and the dual witness
/// spins full in the transpose module.
struct CertSimpleNorton {
  Vec element;       // a, algebra coordinates
  Poly factor;       // irreducible factor of the char poly of rho(a)
  Matrix kernel;     // RREF basis rows of ker f(rho(a))
  Vec dual_witness;  // w in ker f(rho(a)^T)
};

/// A proper nonzero spin-closed subspace.
struct CertNotSimple {
  Subspace witness;
};

/// End(m) is local: its semisimple quotient is commutative with a
/// one-dimensional Frobenius-fixed subspace, i.e. a finite field.
struct CertIndecLocalEnd {
  std::vector<Matrix> end_basis;  // basis of End(m)
  Matrix radical_basis;           // rows: End-coordinates of rad(End) basis
  std::size_t residue_degree;     // dim of End/rad as an F_p-vector space
};

class Certificate;

/// Projective with a simple top: a free-cover section plus a verified
/// nilpotent two-sided ideal whose action carves out the (then unique)
/// maximal submodule.
struct CertIndecSimpleTop {
  Matrix section;        // free-cover section certifying projectivity
  Matrix ideal_basis;    // rows: a nilpotent two-sided ideal of the algebra
  Subspace maximal;      // = ideal * m, with simple quotient
  std::shared_ptr<const Certificate> top_simple;
};

struct CertProjective {
  Matrix section;
};

/// A nontrivial idempotent endomorphism; ker/im split the module.
struct CertDecomposable {
  Matrix idempotent;
};

class Certificate {
 public:
  enum class Kind {
    SimpleByNorton,
    SimpleByExhaustiveSpin,
    IndecomposableByLocalEnd,
    IndecomposableBySimpleTop,
    ProjectiveBySection,
    NotSimpleWitness,
    DecomposableWitness,
  };
  using Payload = std::variant<CertSimpleNorton, CertSimpleExhaustive, CertIndecLocalEnd,
                               CertIndecSimpleTop, CertProjective, CertNotSimple,
                               CertDecomposable>;

  explicit Certificate(Payload payload) : payload_(std::move(payload)) {}

  Kind kind() const;
  const Payload& payload() const { return payload_; }
  bool affirms_simple() const {
    return kind() == Kind::SimpleByNorton || kind() == Kind::SimpleByExhaustiveSpin;
  }
  bool affirms_indecomposable() const {
    return kind() == Kind::IndecomposableByLocalEnd ||
           kind() == Kind::IndecomposableBySimpleTop;
  }

  template <class T>
  const T& as() const {
    return std::get<T>(payload_);
  }

 private:
  Payload payload_;
};

const char* certificate_kind_name(Certificate::Kind k);

/// Re-verify a stored certificate against its module. No search: only
/// deterministic recomputation of the claims the payload makes.
bool replay_certificate(const ModuleRep& m, const Certificate& c, std::string* why = nullptr);

/// Deterministic candidate elements: algebra basis vectors first, then seeded
/// random coordinate vectors.
class ElementStream {
 public:
  ElementStream(const AlgebraData& a, std::uint64_t seed);
  Vec next();

 private:
  const AlgebraData& algebra_;
  Rng rng_;
  std::size_t count_ = 0;
};

/// Search for a proper nonzero invariant subspace: for each candidate a,
/// factor char_poly(rho(a)) and spin the basis vectors of each irreducible
/// factor's kernel. nullopt = budget exhausted (not a proof of simplicity).
std::optional<Subspace> find_proper_submodule(const ModuleRep& m, std::uint64_t seed,
                                              std::size_t budget = 64);

/// Decide simplicity with a replayable certificate either way: exhaustive
/// spins when p^dim <= 4096, Norton's criterion otherwise.
Certificate is_simple(const ModuleRep& m, std::uint64_t seed);

struct CompSeries {
  std::vector<Subspace> chain;     // 0 = chain[0] < ... < chain[r] = full
  std::vector<ModuleRep> factors;  // chain[j+1]/chain[j], each certified simple
  std::vector<Certificate> factor_certs;
  std::vector<std::size_t> factor_class_ids;  // iso-class per factor
  std::vector<ModuleRep> class_reps;          // ordered by (dim, discovery)
  std::vector<Certificate> class_certs;

  std::vector<std::size_t> class_multiplicities() const;
};

/// Jordan-Holder chain by recursive chopping. The budget caps the submodule
/// search per chop node (the simplicity decision itself is budget-free).
CompSeries composition_series(const ModuleRep& m, std::uint64_t seed,
                              std::size_t budget = 64);

struct RadicalResult {
  IdealHandle radical;
  std::vector<ModuleRep> simples;  // complete list of simple-class representatives
  std::vector<Certificate> simple_certs;
};

/// Jacobson radical in any characteristic: composition factors of the regular
/// module, deduplicated, then the intersection of their annihilators.
RadicalResult algebra_radical(AlgebraPtr a, std::uint64_t seed);

/// Least n with rad^n = 0 (1 for semisimple algebras).
std::size_t radical_nilpotency_index(const AlgebraData& a, const IdealHandle& rad);

/// Local-endomorphism-ring test; DecomposableWitness carries an exact
/// nontrivial idempotent obtained by lifting through rad(End).
Certificate is_indecomposable(const ModuleRep& m, std::uint64_t seed);

/// Newton iteration e <- 3e^2 - 2e^3 from an idempotent mod the radical of
/// End(m) to an exact idempotent endomorphism.
EndoMatrix lift_idempotent(const ModuleRep& m, const Matrix& e_approx,
                           const std::vector<Matrix>& radical_endos, std::size_t nil_index);

struct Summand {
  ModuleRep module;
  Subspace embedding;  // image inside the decomposed module
  Certificate indec_cert;
  std::size_t class_id = 0;
};

struct DecompositionReport {
  std::vector<Summand> summands;
  std::vector<std::size_t> class_dims;            // per class id
  std::vector<std::size_t> class_multiplicities;  // per class id
};

/// Krull-Schmidt decomposition with per-summand certificates. The budget is
/// forwarded to the isomorphism grouping of the summands.
DecompositionReport indecomposable_decomposition(const ModuleRep& m, std::uint64_t seed,
                                                 std::size_t budget = 64);

/// Schur test; both modules must come with simplicity certificates.
bool iso_simple(const ModuleRep& s, const Certificate& s_cert, const ModuleRep& t,
                const Certificate& t_cert);

struct IsoResult {
  enum class Kind { Isomorphic, NotIsomorphic, Unknown } kind;
  std::optional<Matrix> witness;
  std::string reason;
};

/// Optional context that unlocks the certified decision paths.
struct IsoHints {
  const Certificate* m_simple = nullptr;
  const Certificate* n_simple = nullptr;
  // PIM path: certified tops of both modules.
  const ModuleRep* m_top = nullptr;
  const Certificate* m_top_cert = nullptr;
  const ModuleRep* n_top = nullptr;
  const Certificate* n_top_cert = nullptr;
};

IsoResult iso_modules(const ModuleRep& m, const ModuleRep& n, std::uint64_t seed,
                      std::size_t budget = 64, const IsoHints* hints = nullptr);

}  // namespace modrep
