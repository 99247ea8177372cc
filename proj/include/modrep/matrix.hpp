#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "modrep/field.hpp"
#include "modrep/poly.hpp"

namespace modrep {

using Vec = std::vector<Scalar>;

/// Dense matrix over an exact field, row-major.
class Matrix {
 public:
  Matrix(const FieldDesc& f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), e_(rows * cols, Scalar::zero(f)) {}

  static Matrix identity(const FieldDesc& f, std::size_t n);
  static Matrix from_rows(const FieldDesc& f, const std::vector<Vec>& rows);
  /// n*n matrix from a row-major flat vector.
  static Matrix from_flat(const FieldDesc& f, std::size_t rows, std::size_t cols, Vec flat);

  const FieldDesc& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Scalar& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  Scalar& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  const Vec& flat() const { return e_; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scale(const Scalar& s) const;
  /// *this += c * o, without temporaries.
  void add_scaled(const Matrix& o, const Scalar& c);
  void negate();
  Matrix transpose() const;
  /// Nonnegative power of a square matrix (binary powering).
  Matrix pow(std::uint64_t k) const;
  Vec apply(const Vec& v) const;

  bool operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_identity() const;
  bool is_square() const { return rows_ == cols_; }
  Scalar trace() const;

 private:
  FieldDesc field_;
  std::size_t rows_, cols_;
  Vec e_;
};

/// Incremental reduced-row-echelon accumulator. Rows are kept fully reduced
/// with strictly increasing pivot columns, so feeding rows in any order yields
/// the canonical RREF of their span. Pivots are only chosen among columns
/// < pivot_limit; a row that vanishes there but not beyond is remembered as
/// the last residual (used for consistency certificates).
class RowReducer {
 public:
  RowReducer(const FieldDesc& f, std::size_t cols, std::size_t pivot_limit = SIZE_MAX)
      : field_(f), cols_(cols), pivot_limit_(std::min(pivot_limit, cols)) {}

  /// Returns true if the row added a new pivot.
  bool add_row(Vec row);
  /// Reduce a row against the current basis without inserting it.
  Vec reduce(Vec row) const;
  /// Coordinates of v in terms of the inserted pivot rows, if v lies in the
  /// span (only meaningful when pivot_limit == cols).
  std::optional<Vec> coordinates(const Vec& v) const;

  std::size_t rank() const { return rows_.size(); }
  const std::vector<Vec>& basis_rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const Vec& last_residual() const { return last_residual_; }
  Matrix to_matrix() const;

 private:
  FieldDesc field_;
  std::size_t cols_, pivot_limit_;
  std::vector<Vec> rows_;           // sorted by pivot column
  std::vector<std::size_t> pivots_;  // strictly increasing
  Vec last_residual_;
};

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

/// Unique reduced row echelon form (zero rows kept, in place, at the bottom).
RrefResult rref(const Matrix& m);

/// Deterministic solve of m x = rhs (free variables zero); nullopt if
/// inconsistent. DimensionMismatch if row counts differ.
std::optional<Matrix> solve(const Matrix& m, const Matrix& rhs);

/// Solve A x = b for a single right-hand side, with a Farkas-style
/// inconsistency certificate y (y^T A = 0, y^T b != 0) on failure.
struct AffineSolveResult {
  std::optional<Vec> solution;
  std::optional<Vec> certificate;
};
AffineSolveResult solve_with_certificate(const Matrix& a, const Vec& b);

/// Monic characteristic polynomial via Hessenberg reduction and the
/// leading-minor recurrence (no division-by-integer pitfalls in small
/// characteristic).
Poly char_poly(const Matrix& m);

/// Monic minimal polynomial (lcm of Krylov annihilators).
Poly min_poly(const Matrix& m);

/// Evaluate f at a square matrix (Horner).
Matrix poly_eval_matrix(const Poly& f, const Matrix& m);

}  // namespace modrep
