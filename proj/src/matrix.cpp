#include "modrep/matrix.hpp"

#include <algorithm>

namespace modrep {

Matrix Matrix::identity(const FieldDesc& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_rows(const FieldDesc& f, const std::vector<Vec>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  Matrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) fail(Errc::DimensionMismatch, "ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_flat(const FieldDesc& f, std::size_t rows, std::size_t cols, Vec flat) {
  if (flat.size() != rows * cols) fail(Errc::DimensionMismatch, "flat size mismatch");
  Matrix m(f, rows, cols);
  m.e_ = std::move(flat);
  return m;
}

Vec Matrix::row(std::size_t i) const {
  return Vec(e_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             e_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec Matrix::col(std::size_t j) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
  return v;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (field_ != o.field_) fail(Errc::FieldMismatch, "matrix product over different fields");
  if (cols_ != o.rows_) fail(Errc::DimensionMismatch, "matrix product shape mismatch");
  Matrix out(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (!b.is_zero()) out.at(i, j) += a * b;
      }
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (field_ != o.field_) fail(Errc::FieldMismatch, "matrix sum over different fields");
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(Errc::DimensionMismatch, "matrix sum shape");
  Matrix out(field_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] + o.e_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (field_ != o.field_) fail(Errc::FieldMismatch, "matrix difference over different fields");
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(Errc::DimensionMismatch, "matrix diff shape");
  Matrix out(field_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] - o.e_[i];
  return out;
}

Matrix Matrix::scale(const Scalar& s) const {
  Matrix out(field_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] * s;
  return out;
}

void Matrix::negate() {
  for (auto& x : e_)
    if (!x.is_zero()) x = -x;
}

void Matrix::add_scaled(const Matrix& o, const Scalar& c) {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(Errc::DimensionMismatch, "add_scaled shape");
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (!o.e_[i].is_zero()) e_[i] += c * o.e_[i];
  }
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

Matrix Matrix::pow(std::uint64_t k) const {
  if (!is_square()) fail(Errc::NonSquare, "matrix power of a non-square matrix");
  Matrix result = identity(field_, rows_);
  Matrix base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) fail(Errc::DimensionMismatch, "matrix apply shape mismatch");
  Vec out(rows_, Scalar::zero(field_));
  for (std::size_t i = 0; i < rows_; ++i) {
    Scalar acc = Scalar::zero(field_);
    for (std::size_t j = 0; j < cols_; ++j) {
      const Scalar& a = at(i, j);
      if (!a.is_zero() && !v[j].is_zero()) acc += a * v[j];
    }
    out[i] = acc;
  }
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& s : e_)
    if (!s.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
    }
  return true;
}

Scalar Matrix::trace() const {
  if (!is_square()) fail(Errc::NonSquare, "trace of a non-square matrix");
  Scalar acc = Scalar::zero(field_);
  for (std::size_t i = 0; i < rows_; ++i) acc += at(i, i);
  return acc;
}

bool RowReducer::add_row(Vec row) {
  if (row.size() != cols_) fail(Errc::DimensionMismatch, "row width mismatch");
  // Eliminate against existing pivots.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Scalar& c = row[pivots_[r]];
    if (c.is_zero()) continue;
    Scalar factor = c;  // pivot entries are normalized to 1
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!rows_[r][j].is_zero()) row[j] -= factor * rows_[r][j];
    }
  }
  std::size_t lead = pivot_limit_;
  for (std::size_t j = 0; j < pivot_limit_; ++j) {
    if (!row[j].is_zero()) {
      lead = j;
      break;
    }
  }
  if (lead == pivot_limit_) {
    last_residual_ = std::move(row);
    return false;
  }
  Scalar inv = row[lead].inv();
  for (auto& x : row) x *= inv;
  // Back-substitute into existing rows to keep them fully reduced.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Scalar& c = rows_[r][lead];
    if (c.is_zero()) continue;
    Scalar factor = c;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!row[j].is_zero()) rows_[r][j] -= factor * row[j];
    }
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead);
  std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
  pivots_.insert(pos, lead);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(row));
  return true;
}

Vec RowReducer::reduce(Vec row) const {
  if (row.size() != cols_) fail(Errc::DimensionMismatch, "row width mismatch");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Scalar& c = row[pivots_[r]];
    if (c.is_zero()) continue;
    Scalar factor = c;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!rows_[r][j].is_zero()) row[j] -= factor * rows_[r][j];
    }
  }
  return row;
}

std::optional<Vec> RowReducer::coordinates(const Vec& v) const {
  Vec coords(rows_.size(), Scalar::zero(field_));
  Vec row = v;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Scalar& c = row[pivots_[r]];
    if (c.is_zero()) continue;
    coords[r] = c;
    Scalar factor = c;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!rows_[r][j].is_zero()) row[j] -= factor * rows_[r][j];
    }
  }
  for (const auto& x : row)
    if (!x.is_zero()) return std::nullopt;
  return coords;
}

Matrix RowReducer::to_matrix() const {
  Matrix m(field_, rows_.size(), cols_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = rows_[i][j];
  return m;
}

RrefResult rref(const Matrix& m) {
  RowReducer red(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) red.add_row(m.row(i));
  Matrix out(m.field(), m.rows(), m.cols());
  for (std::size_t i = 0; i < red.rank(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = red.basis_rows()[i][j];
  return {out, red.pivots()};
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& rhs) {
  if (m.field() != rhs.field()) fail(Errc::FieldMismatch, "solve over different fields");
  if (m.rows() != rhs.rows()) fail(Errc::DimensionMismatch, "solve: row count mismatch");
  std::size_t n = m.cols(), w = rhs.cols();
  RowReducer red(m.field(), n + w, n);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Vec row = m.row(i);
    Vec r = rhs.row(i);
    row.insert(row.end(), r.begin(), r.end());
    if (!red.add_row(std::move(row))) {
      for (const auto& x : red.last_residual())
        if (!x.is_zero()) return std::nullopt;
    }
  }
  Matrix x(m.field(), n, w);
  for (std::size_t r = 0; r < red.rank(); ++r) {
    std::size_t p = red.pivots()[r];
    for (std::size_t j = 0; j < w; ++j) x.at(p, j) = red.basis_rows()[r][n + j];
  }
  return x;
}

AffineSolveResult solve_with_certificate(const Matrix& a, const Vec& b) {
  if (a.rows() != b.size()) fail(Errc::DimensionMismatch, "solve: rhs length mismatch");
  std::size_t n = a.cols(), rows = a.rows();
  // Rows [a_i | b_i | e_i]; a residual that vanishes on the unknowns but not
  // on b exposes the combination y of input rows proving inconsistency.
  RowReducer red(a.field(), n + 1 + rows, n);
  for (std::size_t i = 0; i < rows; ++i) {
    Vec row = a.row(i);
    row.push_back(b[i]);
    for (std::size_t k = 0; k < rows; ++k)
      row.push_back(i == k ? Scalar::one(a.field()) : Scalar::zero(a.field()));
    if (!red.add_row(std::move(row))) {
      const Vec& res = red.last_residual();
      if (!res[n].is_zero()) {
        Vec cert(res.begin() + static_cast<std::ptrdiff_t>(n + 1), res.end());
        return {std::nullopt, cert};
      }
    }
  }
  Vec x(n, Scalar::zero(a.field()));
  for (std::size_t r = 0; r < red.rank(); ++r) x[red.pivots()[r]] = red.basis_rows()[r][n];
  return {x, std::nullopt};
}

Poly char_poly(const Matrix& m) {
  if (!m.is_square()) fail(Errc::NonSquare, "characteristic polynomial of non-square matrix");
  const FieldDesc& f = m.field();
  std::size_t n = m.rows();
  if (n == 0) return Poly::one(f);

  // Similarity reduction to upper Hessenberg form.
  Matrix h = m;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = n;
    for (std::size_t i = j + 1; i < n; ++i) {
      if (!h.at(i, j).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h.at(piv, c), h.at(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h.at(r, piv), h.at(r, j + 1));
    }
    Scalar inv = h.at(j + 1, j).inv();
    for (std::size_t i = j + 2; i < n; ++i) {
      if (h.at(i, j).is_zero()) continue;
      Scalar factor = h.at(i, j) * inv;
      for (std::size_t c = 0; c < n; ++c) h.at(i, c) -= factor * h.at(j + 1, c);
      for (std::size_t r = 0; r < n; ++r) h.at(r, j + 1) += factor * h.at(r, i);
    }
  }

  // Leading-minor recurrence for Hessenberg matrices.
  std::vector<Poly> p;
  p.reserve(n + 1);
  p.push_back(Poly::one(f));
  Poly t = Poly::x(f);
  for (std::size_t k = 1; k <= n; ++k) {
    Poly pk = (t - Poly::constant(h.at(k - 1, k - 1))) * p[k - 1];
    Scalar subdiag = Scalar::one(f);
    for (std::size_t i = k - 1; i >= 1; --i) {
      subdiag *= h.at(i, i - 1);
      if (subdiag.is_zero()) break;
      Scalar c = h.at(i - 1, k - 1) * subdiag;
      if (!c.is_zero()) pk = pk - p[i - 1].scale(c);
    }
    p.push_back(pk);
  }
  return p[n];
}

Matrix poly_eval_matrix(const Poly& f, const Matrix& m) {
  if (!m.is_square()) fail(Errc::NonSquare, "polynomial of a non-square matrix");
  const FieldDesc& fd = m.field();
  Matrix acc(fd, m.rows(), m.rows());
  for (int i = f.degree(); i >= 0; --i) {
    acc = acc * m;
    Scalar c = f.coeff(static_cast<std::size_t>(i));
    if (!c.is_zero()) {
      for (std::size_t d = 0; d < m.rows(); ++d) acc.at(d, d) += c;
    }
  }
  return acc;
}

Poly min_poly(const Matrix& m) {
  if (!m.is_square()) fail(Errc::NonSquare, "minimal polynomial of non-square matrix");
  const FieldDesc& f = m.field();
  std::size_t n = m.rows();
  if (n == 0) return Poly::one(f);
  Poly acc = Poly::one(f);
  for (std::size_t s = 0; s < n; ++s) {
    // Least annihilator of theingredient Krylov sequence e_s, m e_s, ...
    RowReducer red(f, n + n + 1, n);
    Vec v(n, Scalar::zero(f));
    v[s] = Scalar::one(f);
    for (std::size_t k = 0; k <= n; ++k) {
      Vec row = v;
      row.resize(n + n + 1, Scalar::zero(f));
      row[n + k] = Scalar::one(f);
      if (!red.add_row(std::move(row))) {
        const Vec& res = red.last_residual();
        std::vector<Scalar> coeffs(res.begin() + static_cast<std::ptrdiff_t>(n), res.end());
        Poly local(f, std::move(coeffs));
        acc = poly_lcm(acc, local.monic());
        break;
      }
      v = m.apply(v);
    }
    if (static_cast<std::size_t>(acc.degree()) == n) break;  // cannot exceed char_poly degree
  }
  if (!poly_eval_matrix(acc, m).is_zero())
    fail(Errc::InternalInvariantViolation, "minimal polynomial does not annihilate");
  return acc.monic();
}

}  // namespace modrep
