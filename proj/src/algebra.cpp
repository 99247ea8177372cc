#include "modrep/algebra.hpp"

#include <algorithm>

namespace modrep {

AlgebraData::AlgebraData(const FieldDesc& field, std::size_t dim,
                         std::vector<StructureEntry> structure, Vec unit,
                         std::vector<std::string> labels)
    : field_(field),
      dim_(dim),
      structure_(std::move(structure)),
      unit_(std::move(unit)),
      labels_(std::move(labels)) {
  if (dim_ < 1) fail(Errc::BadParam, "algebra dimension must be >= 1");
  if (unit_.size() != dim_) fail(Errc::DimensionMismatch, "unit coordinate length != dim");
  if (!labels_.empty() && labels_.size() != dim_)
    fail(Errc::DimensionMismatch, "label count != dim");
  for (const auto& e : structure_) {
    if (e.i >= dim_ || e.j >= dim_ || e.k >= dim_)
      fail(Errc::BadParam, "structure index out of range");
    if (e.value.field() != field_) fail(Errc::FieldMismatch, "structure constant field");
  }
  for (const auto& s : unit_)
    if (s.field() != field_) fail(Errc::FieldMismatch, "unit coordinate field");

  prod_table_.assign(dim_ * dim_, Vec(dim_, Scalar::zero(field_)));
  for (const auto& e : structure_) prod_table_[e.i * dim_ + e.j][e.k] += e.value;
  left_ops_.reserve(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Matrix li(field_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      const Vec& p = prod_table_[i * dim_ + j];
      for (std::size_t k = 0; k < dim_; ++k) li.at(k, j) = p[k];
    }
    left_ops_.push_back(std::move(li));
  }
}

std::string AlgebraData::label(std::size_t i) const {
  if (i < labels_.size()) return labels_[i];
  return "b" + std::to_string(i);
}

Vec AlgebraData::multiply(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    fail(Errc::DimensionMismatch, "coordinate vector length != dim");
  Vec z(dim_, Scalar::zero(field_));
  for (const auto& e : structure_) {
    if (x[e.i].is_zero() || y[e.j].is_zero()) continue;
    z[e.k] += x[e.i] * y[e.j] * e.value;
  }
  return z;
}

ValidationReport validate_algebra(const AlgebraData& a) {
  ValidationReport rep;
  const FieldDesc& f = a.field();
  std::size_t d = a.dim();

  for (std::size_t j = 0; j < d; ++j) {
    Vec ej(d, Scalar::zero(f));
    ej[j] = Scalar::one(f);
    Vec left = a.multiply(a.unit(), ej);
    if (left != ej) rep.violations.push_back({"left_unit", {j}, "unit*" + a.label(j)});
    Vec right = a.multiply(ej, a.unit());
    if (right != ej) rep.violations.push_back({"right_unit", {j}, a.label(j) + "*unit"});
  }

  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Matrix lhs = a.left_op(i) * a.left_op(j);
      Matrix rhs(f, d, d);
      const Vec& prod = a.basis_product(i, j);
      for (std::size_t k = 0; k < d; ++k) {
        if (prod[k].is_zero()) continue;
        rhs.add_scaled(a.left_op(k), prod[k]);
      }
      if (lhs != rhs) {
        // Find a concrete witness triple for the report.
        std::size_t w = 0;
        for (std::size_t c = 0; c < d; ++c) {
          if (lhs.col(c) != rhs.col(c)) {
            w = c;
            break;
          }
        }
        rep.violations.push_back(
            {"associativity", {i, j, w},
             "(" + a.label(i) + "*" + a.label(j) + ")*" + a.label(w) + " != " + a.label(i) +
                 "*(" + a.label(j) + "*" + a.label(w) + ")"});
      }
    }
  }
  return rep;
}

Matrix mult_operator(const AlgebraData& a, const Vec& x, Side side) {
  if (x.size() != a.dim()) fail(Errc::DimensionMismatch, "element coordinate length != dim");
  std::size_t d = a.dim();
  Matrix m(a.field(), d, d);
  for (const auto& e : a.structure()) {
    if (side == Side::Left) {
      // column j of L_x gets x_i * c[i][j][k] at row k
      if (!x[e.i].is_zero()) m.at(e.k, e.j) += x[e.i] * e.value;
    } else {
      // column j of R_x: (b_j * x)_k = sum_i c[j][i][k] x_i
      if (!x[e.j].is_zero()) m.at(e.k, e.i) += x[e.j] * e.value;
    }
  }
  return m;
}

AlgebraPtr opposite(const AlgebraData& a) {
  std::vector<StructureEntry> entries;
  entries.reserve(a.structure().size());
  for (const auto& e : a.structure()) entries.push_back({e.j, e.i, e.k, e.value});
  return std::make_shared<AlgebraData>(a.field(), a.dim(), std::move(entries), a.unit(),
                                       a.labels());
}

IdealHandle::IdealHandle(AlgebraPtr algebra, Subspace space, Sidedness side)
    : algebra_(std::move(algebra)), space_(std::move(space)), side_(side) {
  if (space_.ambient_dim() != algebra_->dim())
    fail(Errc::AmbientMismatch, "ideal subspace has wrong ambient dimension");
  std::size_t d = algebra_->dim();
  for (std::size_t r = 0; r < space_.dim(); ++r) {
    Vec v = space_.basis().row(r);
    for (std::size_t i = 0; i < d; ++i) {
      if (!space_.contains(algebra_->left_op(i).apply(v)))
        fail(Errc::NotAnIdeal, "not closed under left multiplication by basis element " +
                                   std::to_string(i));
      if (side_ == Sidedness::TwoSided) {
        Vec ei(d, Scalar::zero(algebra_->field()));
        ei[i] = Scalar::one(algebra_->field());
        if (!space_.contains(algebra_->multiply(v, ei)))
          fail(Errc::NotAnIdeal, "not closed under right multiplication by basis element " +
                                     std::to_string(i));
      }
    }
  }
}

namespace {

void require_valid(const AlgebraPtr& a, const char* what) {
  ValidationReport rep = validate_algebra(*a);
  if (!rep.ok())
    fail(Errc::InternalInvariantViolation,
         std::string(what) + " produced an invalid algebra: " + rep.violations[0].kind);
}

}  // namespace

AlgebraPtr build_upper_triangular(const FieldDesc& f, std::size_t n) {
  if (n < 1) fail(Errc::BadParam, "upper_triangular needs n >= 1");
  // Basis e_ij for i <= j, row-major: (0,0), (0,1), ..., (0,n-1), (1,1), ...
  std::vector<std::pair<std::size_t, std::size_t>> basis;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      basis.emplace_back(i, j);
      labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  }
  std::size_t d = basis.size();
  auto index_of = [&](std::size_t i, std::size_t j) {
    // position of (i,j) within the row-major upper-triangular listing
    std::size_t base = i * n - (i * (i - 1)) / 2;
    return base + (j - i);
  };
  Scalar one = Scalar::one(f);
  std::vector<StructureEntry> entries;
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t y = 0; y < d; ++y) {
      auto [i, j] = basis[x];
      auto [k, l] = basis[y];
      if (j == k) entries.push_back({x, y, index_of(i, l), one});
    }
  }
  Vec unit(d, Scalar::zero(f));
  for (std::size_t i = 0; i < n; ++i) unit[index_of(i, i)] = one;
  auto alg = std::make_shared<AlgebraData>(f, d, std::move(entries), std::move(unit),
                                           std::move(labels));
  require_valid(alg, "build_upper_triangular");
  return alg;
}

AlgebraPtr build_full_matrix(const FieldDesc& f, std::size_t n) {
  if (n < 1) fail(Errc::BadParam, "full_matrix needs n >= 1");
  std::size_t d = n * n;
  Scalar one = Scalar::one(f);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
  std::vector<StructureEntry> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        entries.push_back({i * n + j, j * n + l, i * n + l, one});
  Vec unit(d, Scalar::zero(f));
  for (std::size_t i = 0; i < n; ++i) unit[i * n + i] = one;
  auto alg = std::make_shared<AlgebraData>(f, d, std::move(entries), std::move(unit),
                                           std::move(labels));
  require_valid(alg, "build_full_matrix");
  return alg;
}

AlgebraPtr build_cyclic_group(const FieldDesc& f, std::size_t n) {
  if (n < 1) fail(Errc::BadParam, "cyclic_group needs n >= 1");
  Scalar one = Scalar::one(f);
  std::vector<StructureEntry> entries;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) entries.push_back({i, j, (i + j) % n, one});
  Vec unit(n, Scalar::zero(f));
  unit[0] = one;
  auto alg =
      std::make_shared<AlgebraData>(f, n, std::move(entries), std::move(unit), std::move(labels));
  require_valid(alg, "build_cyclic_group");
  return alg;
}

AlgebraPtr build_truncated_poly(const FieldDesc& f, std::size_t n) {
  if (n < 1) fail(Errc::BadParam, "truncated_poly needs n >= 1");
  Scalar one = Scalar::one(f);
  std::vector<StructureEntry> entries;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    labels.push_back(i == 0 ? "1" : (i == 1 ? "t" : "t^" + std::to_string(i)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) entries.push_back({i, j, i + j, one});
  Vec unit(n, Scalar::zero(f));
  unit[0] = one;
  auto alg =
      std::make_shared<AlgebraData>(f, n, std::move(entries), std::move(unit), std::move(labels));
  require_valid(alg, "build_truncated_poly");
  return alg;
}

AlgebraPtr build_direct_product(const AlgebraData& a, const AlgebraData& b) {
  if (a.field() != b.field()) fail(Errc::FieldMismatch, "direct product over different fields");
  std::size_t da = a.dim(), d = da + b.dim();
  std::vector<StructureEntry> entries;
  for (const auto& e : a.structure()) entries.push_back(e);
  for (const auto& e : b.structure()) entries.push_back({e.i + da, e.j + da, e.k + da, e.value});
  Vec unit(d, Scalar::zero(a.field()));
  for (std::size_t i = 0; i < da; ++i) unit[i] = a.unit()[i];
  for (std::size_t i = 0; i < b.dim(); ++i) unit[da + i] = b.unit()[i];
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < da; ++i) labels.push_back("l." + a.label(i));
  for (std::size_t i = 0; i < b.dim(); ++i) labels.push_back("r." + b.label(i));
  auto alg =
      std::make_shared<AlgebraData>(a.field(), d, std::move(entries), std::move(unit),
                                    std::move(labels));
  require_valid(alg, "build_direct_product");
  return alg;
}

std::optional<std::size_t> ideal_nilpotency_index(const AlgebraData& a, const Subspace& ideal) {
  if (ideal.is_zero()) return 1;
  std::vector<Matrix> left_mults;
  for (std::size_t r = 0; r < ideal.dim(); ++r)
    left_mults.push_back(mult_operator(a, ideal.basis().row(r), Side::Left));
  Subspace power = ideal;
  for (std::size_t n = 2; n <= a.dim() + 1; ++n) {
    std::vector<Vec> products;
    for (const auto& lm : left_mults)
      for (std::size_t s = 0; s < power.dim(); ++s)
        products.push_back(lm.apply(power.basis().row(s)));
    Subspace next = Subspace::from_spanning(a.field(), a.dim(), products);
    if (next.is_zero()) return n;
    if (next == power) return std::nullopt;  // stabilized above zero
    power = next;
  }
  return std::nullopt;
}

IdealHandle dickson_radical(AlgebraPtr a) {
  const FieldDesc& f = a->field();
  if (f.is_prime_field() && f.p() <= static_cast<std::int64_t>(a->dim()))
    fail(Errc::UnsupportedCharacteristic,
         "trace-form radical needs char 0 or p > dim (p=" + std::to_string(f.p()) +
             ", dim=" + std::to_string(a->dim()) + ")");
  std::size_t d = a->dim();
  Matrix gram(f, d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Scalar acc = Scalar::zero(f);
      const Matrix& li = a->left_op(i);
      const Matrix& lj = a->left_op(j);
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          const Scalar& x = li.at(k, l);
          if (!x.is_zero()) acc += x * lj.at(l, k);
        }
      gram.at(i, j) = acc;
    }
  }
  Subspace ker = kernel_basis(gram);
  IdealHandle rad(a, ker, Sidedness::TwoSided);
  if (!ideal_nilpotency_index(*a, ker).has_value())
    fail(Errc::InternalInvariantViolation, "trace-form kernel is not nilpotent");
  return rad;
}

QuotientAlgebra quotient_algebra(AlgebraPtr a, const IdealHandle& ideal) {
  if (ideal.sidedness() != Sidedness::TwoSided)
    fail(Errc::NotTwoSided, "quotient needs a two-sided ideal");
  if (!ideal.is_proper()) fail(Errc::ImproperIdeal, "quotient by the whole algebra");
  const FieldDesc& f = a->field();
  std::size_t d = a->dim();
  const Subspace& s = ideal.space();
  std::vector<std::size_t> comp = s.nonpivots();
  std::size_t q = comp.size();

  // projection: reduce modulo the ideal basis, then read complement coords.
  Matrix proj(f, q, d);
  for (std::size_t c = 0; c < q; ++c) proj.at(c, comp[c]) = Scalar::one(f);
  for (std::size_t r = 0; r < s.dim(); ++r) {
    std::size_t piv = s.pivots()[r];
    for (std::size_t c = 0; c < q; ++c) proj.at(c, piv) -= s.basis().at(r, comp[c]);
  }

  auto embed = [&](const Vec& y) {
    Vec x(d, Scalar::zero(f));
    for (std::size_t c = 0; c < q; ++c) x[comp[c]] = y[c];
    return x;
  };

  std::vector<StructureEntry> entries;
  for (std::size_t x = 0; x < q; ++x) {
    for (std::size_t y = 0; y < q; ++y) {
      Vec ex(q, Scalar::zero(f)), ey(q, Scalar::zero(f));
      ex[x] = Scalar::one(f);
      ey[y] = Scalar::one(f);
      Vec prod = proj.apply(a->multiply(embed(ex), embed(ey)));
      for (std::size_t k = 0; k < q; ++k)
        if (!prod[k].is_zero()) entries.push_back({x, y, k, prod[k]});
    }
  }
  Vec unit = proj.apply(a->unit());
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < q; ++c) labels.push_back(a->label(comp[c]));
  auto alg =
      std::make_shared<AlgebraData>(f, q, std::move(entries), std::move(unit), std::move(labels));
  require_valid(alg, "quotient_algebra");
  Matrix lift(f, d, q);
  for (std::size_t c = 0; c < q; ++c) lift.at(comp[c], c) = Scalar::one(f);
  return {alg, proj, lift};
}

EndoPackage algebra_from_endos(const std::vector<Matrix>& homs) {
  if (homs.empty()) fail(Errc::BadParam, "empty endomorphism basis");
  const FieldDesc& f = homs[0].field();
  std::size_t n = homs[0].rows();
  for (const auto& h : homs) {
    if (h.field() != f) fail(Errc::FieldMismatch, "mixed fields in endomorphism basis");
    if (h.rows() != n || h.cols() != n)
      fail(Errc::DimensionMismatch, "endomorphism basis entries must be square, same size");
  }
  std::size_t k = homs.size();

  // Rows [vec(h_i) | e_i]; the tail tracks coordinates in the original list.
  RowReducer red(f, n * n + k, n * n);
  for (std::size_t i = 0; i < k; ++i) {
    Vec row = homs[i].flat();
    row.resize(n * n + k, Scalar::zero(f));
    row[n * n + i] = Scalar::one(f);
    if (!red.add_row(std::move(row)))
      fail(Errc::BadParam, "endomorphism list is not linearly independent");
  }
  auto express = [&](const Matrix& m) -> std::optional<Vec> {
    Vec row = m.flat();
    row.resize(n * n + k, Scalar::zero(f));
    Vec res = red.reduce(std::move(row));
    for (std::size_t j = 0; j < n * n; ++j)
      if (!res[j].is_zero()) return std::nullopt;
    Vec coords(k, Scalar::zero(f));
    for (std::size_t j = 0; j < k; ++j) coords[j] = -res[n * n + j];
    return coords;
  };

  std::vector<StructureEntry> entries;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      auto coords = express(homs[i] * homs[j]);
      if (!coords)
        fail(Errc::NotClosed, "product of basis endomorphisms " + std::to_string(i) + "," +
                                  std::to_string(j) + " falls outside the span");
      for (std::size_t l = 0; l < k; ++l)
        if (!(*coords)[l].is_zero()) entries.push_back({i, j, l, (*coords)[l]});
    }
  }
  auto unit_coords = express(Matrix::identity(f, n));
  if (!unit_coords) fail(Errc::NoIdentity, "identity matrix is not in the span");
  auto alg = std::make_shared<AlgebraData>(f, k, std::move(entries), std::move(*unit_coords));
  require_valid(alg, "algebra_from_endos");
  return {alg, homs};
}

}  // namespace modrep
