#pragma once

#include <cstdint>
#include <optional>

#include "modrep/algebra.hpp"

namespace modrep {

/// A finite-dimensional left module: one action matrix per algebra basis
/// element. Constructing checks shapes; validate_module checks the action
/// axioms (unit acts as identity, products follow the structure constants).
class ModuleRep {
 public:
  ModuleRep(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> action);

  const AlgebraPtr& algebra() const { return algebra_; }
  const FieldDesc& field() const { return algebra_->field(); }
  std::size_t dim() const { return dim_; }
  const Matrix& action(std::size_t i) const { return action_[i]; }
  const std::vector<Matrix>& actions() const { return action_; }

  /// rho(x) for an algebra element in coordinates.
  Matrix action_of(const Vec& x) const;
  /// rho(x) v.
  Vec act(const Vec& x, const Vec& v) const;

  bool same_algebra(const ModuleRep& o) const { return algebra_.get() == o.algebra_.get(); }

 private:
  AlgebraPtr algebra_;
  std::size_t dim_;
  std::vector<Matrix> action_;
};

ValidationReport validate_module(const ModuleRep& m);

/// The algebra acting on itself by left multiplication.
ModuleRep regular_module(AlgebraPtr a);
/// Direct sum of k regular copies (k = 0 gives the zero module).
ModuleRep free_module(AlgebraPtr a, std::size_t k);

/// Smallest action-invariant subspace containing the given vectors.
Subspace spin(const ModuleRep& m, const std::vector<Vec>& vectors);
inline Subspace spin(const ModuleRep& m, const Vec& v) { return spin(m, std::vector<Vec>{v}); }

struct QuotientModule {
  ModuleRep module;
  Matrix projection;  // quotient_dim x dim, a surjective module hom
  Matrix lift;        // dim x quotient_dim coordinate section (projection * lift = id)
};
/// Quotient by an action-invariant subspace, on complement coordinates.
QuotientModule quotient_module(const ModuleRep& m, const Subspace& s);

struct RestrictedModule {
  ModuleRep module;
  Matrix inclusion;  // dim x sub_dim, intertwining
};
/// The submodule s in its own basis.
RestrictedModule submodule_restrict(const ModuleRep& m, const Subspace& s);

ModuleRep direct_sum(const ModuleRep& m, const ModuleRep& n);

/// Basis of the intertwiner space {X : X rho_M(b_i) = rho_N(b_i) X}.
struct HomBasis {
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::vector<Matrix> basis;  // target_dim x source_dim matrices, canonical order
  std::size_t dim() const { return basis.size(); }
};
HomBasis hom_basis(const ModuleRep& m, const ModuleRep& n);

/// End_A(m) packaged as an algebra in a canonical basis of intertwiners.
struct EndAlgebra {
  AlgebraPtr algebra;
  HomBasis basis;
};
EndAlgebra end_algebra(const ModuleRep& m);

/// Module over the opposite algebra with transposed action matrices.
ModuleRep transpose_module(const ModuleRep& m);

/// The submodule I*M.
Subspace ideal_action(const IdealHandle& ideal, const ModuleRep& m);

/// Jacobson radical of m as the common kernel of all homs onto the given
/// complete list of simples. IncompleteSimples if the list is empty but m is
/// not.
Subspace radical_of_module(const ModuleRep& m, const std::vector<ModuleRep>& simples);

/// {x in A : rho(x) = 0}, as a subspace of the algebra.
Subspace annihilator_of_module(const ModuleRep& m);

/// Projectivity by the free-cover section criterion: pi : A^n ->> m sends the
/// j-th unit to the j-th basis vector; a section with pi sigma = id certifies,
/// a Farkas functional on End coordinates refutes.
struct ProjectivityResult {
  std::optional<Matrix> section;      // (n*d) x n when projective
  std::optional<Vec> refutation;      // functional y with y(T_jl) = 0, y(id) != 0
  bool projective() const { return section.has_value(); }
};
ProjectivityResult is_projective(const ModuleRep& m);

/// An endomorphism whose intertwining identity was verified at construction.
class EndoMatrix {
 public:
  EndoMatrix(const ModuleRep& m, Matrix mat);
  const Matrix& matrix() const { return mat_; }

 private:
  Matrix mat_;
};

/// (ker theta^n, im theta^n) with n = dim m; checked to be an invariant
/// direct-sum pair.
std::pair<Subspace, Subspace> fitting_split(const ModuleRep& m, const EndoMatrix& theta);

struct EndoClass {
  enum class Kind { Nilpotent, Invertible, Neither } kind;
  std::size_t nilpotency_index = 0;  // set for Nilpotent
};
EndoClass classify_endo(const ModuleRep& m, const EndoMatrix& theta);

/// Search for a cyclic generator: basis vectors first, then seeded random
/// vectors. Absence of a result is not a proof of non-cyclicity.
std::optional<Vec> find_generator(const ModuleRep& m, std::uint64_t seed,
                                  std::size_t budget = 64);

}  // namespace modrep
