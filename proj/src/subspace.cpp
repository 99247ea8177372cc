#include "modrep/subspace.hpp"

namespace modrep {

Subspace Subspace::from_spanning(const FieldDesc& f, std::size_t ambient_dim,
                                 const std::vector<Vec>& vectors) {
  RowReducer red(f, ambient_dim);
  for (const auto& v : vectors) red.add_row(v);
  return Subspace(ambient_dim, red.to_matrix(), red.pivots());
}

Subspace Subspace::from_matrix_rows(const Matrix& m) {
  RowReducer red(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) red.add_row(m.row(i));
  return Subspace(m.cols(), red.to_matrix(), red.pivots());
}

Subspace Subspace::full(const FieldDesc& f, std::size_t ambient_dim) {
  std::vector<std::size_t> piv(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) piv[i] = i;
  return Subspace(ambient_dim, Matrix::identity(f, ambient_dim), std::move(piv));
}

std::vector<std::size_t> Subspace::nonpivots() const {
  std::vector<std::size_t> out;
  std::size_t next = 0;
  for (std::size_t j = 0; j < ambient_; ++j) {
    if (next < pivots_.size() && pivots_[next] == j) {
      ++next;
    } else {
      out.push_back(j);
    }
  }
  return out;
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != ambient_) fail(Errc::AmbientMismatch, "vector has wrong ambient dimension");
  Vec r = v;
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    const Scalar& c = r[pivots_[i]];
    if (c.is_zero()) continue;
    Scalar factor = c;
    for (std::size_t j = 0; j < ambient_; ++j) {
      const Scalar& b = basis_.at(i, j);
      if (!b.is_zero()) r[j] -= factor * b;
    }
  }
  for (const auto& x : r)
    if (!x.is_zero()) return false;
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  if (ambient_ != other.ambient_) fail(Errc::AmbientMismatch, "ambient dimensions differ");
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (v.size() != ambient_) fail(Errc::AmbientMismatch, "vector has wrong ambient dimension");
  Vec coords(dim(), Scalar::zero(field()));
  Vec r = v;
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    const Scalar& c = r[pivots_[i]];
    if (c.is_zero()) continue;
    coords[i] = c;
    Scalar factor = c;
    for (std::size_t j = 0; j < ambient_; ++j) {
      const Scalar& b = basis_.at(i, j);
      if (!b.is_zero()) r[j] -= factor * b;
    }
  }
  for (const auto& x : r)
    if (!x.is_zero()) return std::nullopt;
  return coords;
}

std::pair<Subspace, Subspace> subspace_meet_join(const Subspace& u, const Subspace& v) {
  if (u.field() != v.field()) fail(Errc::FieldMismatch, "subspaces over different fields");
  if (u.ambient_dim() != v.ambient_dim())
    fail(Errc::AmbientMismatch, "subspaces in different ambient spaces");
  const FieldDesc& f = u.field();
  std::size_t n = u.ambient_dim();
  // Zassenhaus: reduce rows [u|u] and [v|0]; pivots in the left half read off
  // the sum, fully-left-zero rows carry the intersection in the right half.
  RowReducer red(f, 2 * n);
  std::vector<Vec> meet_rows;
  auto feed = [&](const Matrix& basis, bool duplicate) {
    for (std::size_t i = 0; i < basis.rows(); ++i) {
      Vec row(2 * n, Scalar::zero(f));
      for (std::size_t j = 0; j < n; ++j) {
        row[j] = basis.at(i, j);
        if (duplicate) row[n + j] = basis.at(i, j);
      }
      red.add_row(std::move(row));
    }
  };
  feed(u.basis(), true);
  feed(v.basis(), false);
  std::vector<Vec> join_rows;
  for (std::size_t r = 0; r < red.rank(); ++r) {
    const Vec& row = red.basis_rows()[r];
    if (red.pivots()[r] < n) {
      join_rows.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
    } else {
      meet_rows.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(n), row.end());
    }
  }
  return {Subspace::from_spanning(f, n, meet_rows), Subspace::from_spanning(f, n, join_rows)};
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  return subspace_meet_join(u, v).second;
}

Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
  return subspace_meet_join(u, v).first;
}

Subspace kernel_basis(const Matrix& m) {
  RrefResult r = rref(m);
  const FieldDesc& f = m.field();
  std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vec> gens;
  for (std::size_t c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    Vec v(n, Scalar::zero(f));
    v[c] = Scalar::one(f);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced.at(i, c);
    gens.push_back(std::move(v));
  }
  return Subspace::from_spanning(f, n, gens);
}

Subspace row_space(const Matrix& m) { return Subspace::from_matrix_rows(m); }

Subspace perp_of_rows(const Matrix& functionals) { return kernel_basis(functionals); }

}  // namespace modrep
