#pragma once

#include <utility>
#include <vector>

#include "modrep/matrix.hpp"

namespace modrep {

/// Subspace of K^n held as a reduced-row-echelon basis (one vector per row,
/// strictly increasing pivots, no zero rows). The representation is canonical,
/// so equality of subspaces is equality of basis matrices.
class Subspace {
 public:
  /// The zero subspace.
  Subspace(const FieldDesc& f, std::size_t ambient_dim)
      : ambient_(ambient_dim), basis_(f, 0, ambient_dim) {}

  static Subspace from_spanning(const FieldDesc& f, std::size_t ambient_dim,
                                const std::vector<Vec>& vectors);
  static Subspace from_matrix_rows(const Matrix& m);
  static Subspace full(const FieldDesc& f, std::size_t ambient_dim);

  const FieldDesc& field() const { return basis_.field(); }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }
  bool is_proper_nonzero() const { return dim() > 0 && dim() < ambient_; }

  /// RREF basis, dim() x ambient_dim().
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  /// Complement coordinates (non-pivot columns), in increasing order.
  std::vector<std::size_t> nonpivots() const;

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v relative to the basis rows; nullopt if outside.
  std::optional<Vec> coordinates(const Vec& v) const;

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  Subspace(std::size_t ambient, Matrix basis, std::vector<std::size_t> pivots)
      : ambient_(ambient), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  std::size_t ambient_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// (u intersect v, u + v) via one Zassenhaus elimination.
std::pair<Subspace, Subspace> subspace_meet_join(const Subspace& u, const Subspace& v);

Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace subspace_intersect(const Subspace& u, const Subspace& v);

/// Kernel {x : m x = 0} as a canonical subspace of K^cols.
Subspace kernel_basis(const Matrix& m);

/// Row space of m.
Subspace row_space(const Matrix& m);

/// {x : phi(x) = 0 for all phi in rows of the given functional matrices}
/// i.e. the annihilated subspace; used for dual-module arguments.
Subspace perp_of_rows(const Matrix& functionals);

}  // namespace modrep
