#pragma once

#include <memory>
#include <string>
#include <vector>

#include "modrep/subspace.hpp"

namespace modrep {

/// One sparse entry of the structure-constant tensor: b_i * b_j += value * b_k.
struct StructureEntry {
  std::size_t i, j, k;
  Scalar value;
};

class AlgebraData;
using AlgebraPtr = std::shared_ptr<const AlgebraData>;

/// A finite-dimensional unital algebra given by structure constants over an
/// exact field. Construction checks shape only; validate_algebra checks the
/// axioms (associativity as an operator identity plus the two-sided unit).
class AlgebraData {
 public:
  AlgebraData(const FieldDesc& field, std::size_t dim, std::vector<StructureEntry> structure,
              Vec unit, std::vector<std::string> labels = {});

  const FieldDesc& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::vector<StructureEntry>& structure() const { return structure_; }
  const Vec& unit() const { return unit_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(std::size_t i) const;

  /// Product of coordinate vectors.
  Vec multiply(const Vec& x, const Vec& y) const;
  /// Coordinates of b_i * b_j.
  const Vec& basis_product(std::size_t i, std::size_t j) const {
    return prod_table_[i * dim_ + j];
  }
  /// Left-multiplication operator of basis element b_i.
  const Matrix& left_op(std::size_t i) const { return left_ops_[i]; }

  bool same_algebra_as(const AlgebraData& o) const { return this == &o; }

 private:
  FieldDesc field_;
  std::size_t dim_;
  std::vector<StructureEntry> structure_;
  Vec unit_;
  std::vector<std::string> labels_;
  std::vector<Vec> prod_table_;     // dense dim*dim rows of length dim
  std::vector<Matrix> left_ops_;    // dim matrices dim x dim
};

struct Violation {
  std::string kind;                  // "associativity", "left_unit", "right_unit"
  std::vector<std::size_t> indices;  // witness basis indices
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Accept iff L_{b_i} L_{b_j} = L_{b_i b_j} for all i, j and the unit fixes
/// every basis vector on both sides.
ValidationReport validate_algebra(const AlgebraData& a);

enum class Side { Left, Right };

/// d x d matrix of y -> x*y (Left) or y -> y*x (Right).
Matrix mult_operator(const AlgebraData& a, const Vec& x, Side side);

/// Opposite algebra: c'[i][j][k] = c[j][i][k].
AlgebraPtr opposite(const AlgebraData& a);

enum class Sidedness { Left, TwoSided };

/// A left or two-sided ideal presented as a subspace of the algebra.
/// Construction verifies multiplicative closure.
class IdealHandle {
 public:
  IdealHandle(AlgebraPtr algebra, Subspace space, Sidedness side);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Subspace& space() const { return space_; }
  Sidedness sidedness() const { return side_; }
  std::size_t dim() const { return space_.dim(); }
  bool is_proper() const { return space_.dim() < algebra_->dim(); }

 private:
  AlgebraPtr algebra_;
  Subspace space_;
  Sidedness side_;
};

// Builders. Basis orders are frozen (documented in the README file-format
// notes) because golden outputs depend on them.

/// Upper-triangular n x n matrices; basis e_ij (i <= j) in row-major order.
AlgebraPtr build_upper_triangular(const FieldDesc& f, std::size_t n);
/// Full matrix algebra; basis e_ij in row-major order.
AlgebraPtr build_full_matrix(const FieldDesc& f, std::size_t n);
/// Group algebra of Z/n; basis g^0, ..., g^(n-1).
AlgebraPtr build_cyclic_group(const FieldDesc& f, std::size_t n);
/// K[t]/(t^n); basis 1, t, ..., t^(n-1).
AlgebraPtr build_truncated_poly(const FieldDesc& f, std::size_t n);
/// Product algebra on the concatenated bases with unit (1, 1).
AlgebraPtr build_direct_product(const AlgebraData& a, const AlgebraData& b);

/// Radical over Q, or over F_p with p > dim: kernel of the trace Gram form
/// G[i][j] = tr(L_i L_j). UnsupportedCharacteristic when p <= dim.
IdealHandle dickson_radical(AlgebraPtr a);

/// Quotient by a proper two-sided ideal, on the complement coordinates
/// (non-pivot columns of the ideal basis). Returns the quotient and the
/// coordinate projection.
struct QuotientAlgebra {
  AlgebraPtr algebra;
  Matrix projection;  // new_dim x old_dim
  Matrix lift;        // old_dim x new_dim coordinate section (projection * lift = id)
};
QuotientAlgebra quotient_algebra(AlgebraPtr a, const IdealHandle& ideal);

/// Package a closed unital matrix algebra, given by a linearly independent
/// list of n x n matrices, as structure constants in that basis.
struct EndoPackage {
  AlgebraPtr algebra;
  std::vector<Matrix> inclusion;  // the basis matrices, in order
};
EndoPackage algebra_from_endos(const std::vector<Matrix>& homs);

/// Least n >= 1 with I^n = 0; nullopt if the chain does not reach zero within
/// dim steps (i.e. the ideal is not nilpotent).
std::optional<std::size_t> ideal_nilpotency_index(const AlgebraData& a, const Subspace& ideal);

}  // namespace modrep
