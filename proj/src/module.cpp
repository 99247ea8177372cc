#include "modrep/module.hpp"

#include <deque>

#include "modrep/rng.hpp"

namespace modrep {

ModuleRep::ModuleRep(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> action)
    : algebra_(std::move(algebra)), dim_(dim), action_(std::move(action)) {
  if (action_.size() != algebra_->dim())
    fail(Errc::DimensionMismatch, "need one action matrix per algebra basis element");
  for (const auto& a : action_) {
    if (a.rows() != dim_ || a.cols() != dim_)
      fail(Errc::DimensionMismatch, "action matrices must be dim x dim");
    if (a.field() != algebra_->field()) fail(Errc::FieldMismatch, "action matrix field");
  }
}

Matrix ModuleRep::action_of(const Vec& x) const {
  if (x.size() != algebra_->dim()) fail(Errc::DimensionMismatch, "element coordinate length");
  Matrix out(field(), dim_, dim_);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    out.add_scaled(action_[i], x[i]);
  }
  return out;
}

Vec ModuleRep::act(const Vec& x, const Vec& v) const {
  if (x.size() != algebra_->dim()) fail(Errc::DimensionMismatch, "element coordinate length");
  Vec out(dim_, Scalar::zero(field()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    Vec w = action_[i].apply(v);
    for (std::size_t j = 0; j < dim_; ++j) out[j] += x[i] * w[j];
  }
  return out;
}

ValidationReport validate_module(const ModuleRep& m) {
  ValidationReport rep;
  const AlgebraData& a = *m.algebra();
  std::size_t d = a.dim();
  if (!m.action_of(a.unit()).is_identity())
    rep.violations.push_back({"unit_action", {}, "rho(1) != id"});
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Matrix lhs = m.action(i) * m.action(j);
      Matrix rhs(m.field(), m.dim(), m.dim());
      const Vec& prod = a.basis_product(i, j);
      for (std::size_t k = 0; k < d; ++k)
        if (!prod[k].is_zero()) rhs.add_scaled(m.action(k), prod[k]);
      if (lhs != rhs)
        rep.violations.push_back({"action_product", {i, j},
                                  "rho(" + a.label(i) + ") rho(" + a.label(j) +
                                      ") != rho(" + a.label(i) + "*" + a.label(j) + ")"});
    }
  }
  return rep;
}

ModuleRep regular_module(AlgebraPtr a) {
  std::size_t d = a->dim();
  std::vector<Matrix> action;
  action.reserve(d);
  for (std::size_t i = 0; i < d; ++i) action.push_back(a->left_op(i));
  return ModuleRep(std::move(a), d, std::move(action));
}

ModuleRep free_module(AlgebraPtr a, std::size_t k) {
  std::size_t d = a->dim();
  std::size_t n = d * k;
  std::vector<Matrix> action;
  action.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    Matrix big(a->field(), n, n);
    const Matrix& li = a->left_op(i);
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t s = 0; s < d; ++s) big.at(c * d + r, c * d + s) = li.at(r, s);
    action.push_back(std::move(big));
  }
  return ModuleRep(std::move(a), n, std::move(action));
}

Subspace spin(const ModuleRep& m, const std::vector<Vec>& vectors) {
  const FieldDesc& f = m.field();
  std::size_t n = m.dim();
  RowReducer red(f, n);
  std::deque<Vec> work;
  for (const auto& v : vectors) {
    if (v.size() != n) fail(Errc::DimensionMismatch, "spin vector has wrong length");
    if (red.add_row(v)) work.push_back(v);
  }
  std::size_t d = m.algebra()->dim();
  while (!work.empty()) {
    Vec v = std::move(work.front());
    work.pop_front();
    for (std::size_t i = 0; i < d; ++i) {
      Vec w = m.action(i).apply(v);
      if (red.add_row(w)) work.push_back(std::move(w));
    }
  }
  return Subspace::from_matrix_rows(red.to_matrix());
}

namespace {

void require_invariant(const ModuleRep& m, const Subspace& s) {
  if (s.ambient_dim() != m.dim()) fail(Errc::AmbientMismatch, "subspace of wrong ambient dim");
  for (std::size_t r = 0; r < s.dim(); ++r) {
    Vec v = s.basis().row(r);
    for (std::size_t i = 0; i < m.algebra()->dim(); ++i) {
      if (!s.contains(m.action(i).apply(v)))
        fail(Errc::NotInvariant, "subspace is not closed under the action");
    }
  }
}

}  // namespace

QuotientModule quotient_module(const ModuleRep& m, const Subspace& s) {
  require_invariant(m, s);
  const FieldDesc& f = m.field();
  std::size_t n = m.dim();
  auto comp = s.nonpivots();
  std::size_t q = comp.size();

  Matrix proj(f, q, n);
  for (std::size_t c = 0; c < q; ++c) proj.at(c, comp[c]) = Scalar::one(f);
  for (std::size_t r = 0; r < s.dim(); ++r) {
    std::size_t piv = s.pivots()[r];
    for (std::size_t c = 0; c < q; ++c) proj.at(c, piv) -= s.basis().at(r, comp[c]);
  }
  Matrix lift(f, n, q);
  for (std::size_t c = 0; c < q; ++c) lift.at(comp[c], c) = Scalar::one(f);

  std::vector<Matrix> action;
  action.reserve(m.algebra()->dim());
  for (std::size_t i = 0; i < m.algebra()->dim(); ++i)
    action.push_back(proj * m.action(i) * lift);
  return {ModuleRep(m.algebra(), q, std::move(action)), std::move(proj), std::move(lift)};
}

RestrictedModule submodule_restrict(const ModuleRep& m, const Subspace& s) {
  require_invariant(m, s);
  const FieldDesc& f = m.field();
  std::size_t r = s.dim();
  Matrix incl = s.basis().transpose();  // dim x r
  std::vector<Matrix> action;
  action.reserve(m.algebra()->dim());
  for (std::size_t i = 0; i < m.algebra()->dim(); ++i) {
    Matrix sub(f, r, r);
    for (std::size_t j = 0; j < r; ++j) {
      Vec w = m.action(i).apply(s.basis().row(j));
      auto coords = s.coordinates(w);
      if (!coords)
        fail(Errc::InternalInvariantViolation, "restriction left the subspace");
      for (std::size_t k = 0; k < r; ++k) sub.at(k, j) = (*coords)[k];
    }
    action.push_back(std::move(sub));
  }
  return {ModuleRep(m.algebra(), r, std::move(action)), std::move(incl)};
}

ModuleRep direct_sum(const ModuleRep& m, const ModuleRep& n) {
  if (!m.same_algebra(n)) fail(Errc::AlgebraMismatch, "direct sum over different algebras");
  std::size_t nm = m.dim(), nn = n.dim();
  std::vector<Matrix> action;
  action.reserve(m.algebra()->dim());
  for (std::size_t i = 0; i < m.algebra()->dim(); ++i) {
    Matrix big(m.field(), nm + nn, nm + nn);
    for (std::size_t r = 0; r < nm; ++r)
      for (std::size_t c = 0; c < nm; ++c) big.at(r, c) = m.action(i).at(r, c);
    for (std::size_t r = 0; r < nn; ++r)
      for (std::size_t c = 0; c < nn; ++c) big.at(nm + r, nm + c) = n.action(i).at(r, c);
    action.push_back(std::move(big));
  }
  return ModuleRep(m.algebra(), nm + nn, std::move(action));
}

namespace {

// Spinning basis with memory: each basis vector is either a seed or
// rho(gen) applied to an earlier one. Homs out of the module are then
// determined by the seed images, which cuts the intertwiner solve from
// (n_M n_N)^2-sized systems to n_N-per-seed unknowns.
struct SpunBasis {
  std::vector<Vec> vecs;
  struct Origin {
    bool is_seed;
    std::size_t seed_index;  // when seed
    std::size_t parent, gen;  // when derived
  };
  std::vector<Origin> origins;
  std::size_t seed_count = 0;
  Matrix b_inv_t;  // inverse of the transposed basis matrix, for coordinates

  explicit SpunBasis(const FieldDesc& f) : b_inv_t(f, 0, 0) {}
};

SpunBasis spin_with_memory(const ModuleRep& m) {
  const FieldDesc& f = m.field();
  std::size_t n = m.dim(), d = m.algebra()->dim();
  SpunBasis sb(f);
  RowReducer red(f, n);
  std::deque<std::size_t> work;
  for (std::size_t s = 0; s < n; ++s) {
    Vec e(n, Scalar::zero(f));
    e[s] = Scalar::one(f);
    if (!red.add_row(e)) continue;
    sb.vecs.push_back(std::move(e));
    sb.origins.push_back({true, sb.seed_count++, 0, 0});
    work.push_back(sb.vecs.size() - 1);
    while (!work.empty()) {
      std::size_t k = work.front();
      work.pop_front();
      for (std::size_t g = 0; g < d; ++g) {
        Vec w = m.action(g).apply(sb.vecs[k]);
        if (red.add_row(w)) {
          sb.vecs.push_back(std::move(w));
          sb.origins.push_back({false, 0, k, g});
          work.push_back(sb.vecs.size() - 1);
        }
      }
    }
  }
  // Invert B^T once; coordinates of t in the spun basis are B_inv_t * t.
  Matrix bt(f, n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t r = 0; r < n; ++r) bt.at(r, k) = sb.vecs[k][r];
  auto inv = solve(bt, Matrix::identity(f, n));
  if (!inv) fail(Errc::InternalInvariantViolation, "spun basis is singular");
  sb.b_inv_t = std::move(*inv);
  return sb;
}

}  // namespace

HomBasis hom_basis(const ModuleRep& m, const ModuleRep& n) {
  if (!m.same_algebra(n)) fail(Errc::AlgebraMismatch, "hom over different algebras");
  const FieldDesc& f = m.field();
  std::size_t nm = m.dim(), nn = n.dim(), d = m.algebra()->dim();
  HomBasis out;
  out.source_dim = nm;
  out.target_dim = nn;
  if (nm == 0 || nn == 0) return out;

  SpunBasis sb = spin_with_memory(m);
  std::size_t r = sb.seed_count;
  std::size_t unknowns = r * nn;

  // Image maps C_k: seed images W |-> image of basis vector u_k.
  std::vector<Matrix> c;
  c.reserve(nm);
  for (std::size_t k = 0; k < nm; ++k) {
    const auto& o = sb.origins[k];
    if (o.is_seed) {
      Matrix sel(f, nn, unknowns);
      for (std::size_t i = 0; i < nn; ++i)
        sel.at(i, o.seed_index * nn + i) = Scalar::one(f);
      c.push_back(std::move(sel));
    } else {
      c.push_back(n.action(o.gen) * c[o.parent]);
    }
  }

  // Constraints: X(rho(g) u_k) = rho_N(g) X(u_k) for every non-defining pair.
  RowReducer constraints(f, unknowns);
  for (std::size_t k = 0; k < nm; ++k) {
    for (std::size_t g = 0; g < d; ++g) {
      bool defining = false;
      for (std::size_t k2 = k + 1; k2 < nm && !defining; ++k2) {
        const auto& o = sb.origins[k2];
        defining = !o.is_seed && o.parent == k && o.gen == g;
      }
      if (defining) continue;
      Vec t = m.action(g).apply(sb.vecs[k]);
      Vec lambda = sb.b_inv_t.apply(t);
      Matrix block = n.action(g) * c[k];
      block.negate();
      for (std::size_t l = 0; l < nm; ++l) {
        if (lambda[l].is_zero()) continue;
        block.add_scaled(c[l], lambda[l]);
      }
      for (std::size_t row = 0; row < nn; ++row) constraints.add_row(block.row(row));
    }
  }

  Subspace sols = kernel_basis(constraints.to_matrix());
  // Reconstruct each hom from its seed images and canonicalize the basis.
  std::vector<Vec> vecs;
  for (std::size_t sidx = 0; sidx < sols.dim(); ++sidx) {
    Vec w = sols.basis().row(sidx);
    Matrix y(f, nn, nm);
    for (std::size_t k = 0; k < nm; ++k) {
      Vec img = c[k].apply(w);
      for (std::size_t i = 0; i < nn; ++i) y.at(i, k) = img[i];
    }
    Matrix x = y * sb.b_inv_t;
    vecs.push_back(x.flat());
  }
  Subspace canon = Subspace::from_spanning(f, nn * nm, vecs);
  for (std::size_t i = 0; i < canon.dim(); ++i)
    out.basis.push_back(Matrix::from_flat(f, nn, nm, canon.basis().row(i)));
  return out;
}

EndAlgebra end_algebra(const ModuleRep& m) {
  if (m.dim() == 0) fail(Errc::ZeroModule, "End of the zero module");
  HomBasis h = hom_basis(m, m);
  EndoPackage pkg = algebra_from_endos(h.basis);
  return {pkg.algebra, std::move(h)};
}

ModuleRep transpose_module(const ModuleRep& m) {
  AlgebraPtr op = opposite(*m.algebra());
  std::vector<Matrix> action;
  action.reserve(m.algebra()->dim());
  for (std::size_t i = 0; i < m.algebra()->dim(); ++i)
    action.push_back(m.action(i).transpose());
  return ModuleRep(std::move(op), m.dim(), std::move(action));
}

Subspace ideal_action(const IdealHandle& ideal, const ModuleRep& m) {
  if (ideal.algebra().get() != m.algebra().get())
    fail(Errc::AlgebraMismatch, "ideal belongs to a different algebra");
  std::vector<Vec> gens;
  for (std::size_t r = 0; r < ideal.space().dim(); ++r) {
    Matrix op = m.action_of(ideal.space().basis().row(r));
    for (std::size_t j = 0; j < m.dim(); ++j) gens.push_back(op.col(j));
  }
  // I*M is already invariant for a left ideal; spinning certifies it.
  return spin(m, gens);
}

Subspace radical_of_module(const ModuleRep& m, const std::vector<ModuleRep>& simples) {
  const FieldDesc& f = m.field();
  if (m.dim() == 0) return Subspace(f, 0);
  if (simples.empty())
    fail(Errc::IncompleteSimples, "radical needs a complete list of simples");
  Subspace rad = Subspace::full(f, m.dim());
  for (const auto& s : simples) {
    HomBasis h = hom_basis(m, s);
    if (h.dim() == 0) continue;
    Matrix stacked(f, h.dim() * s.dim(), m.dim());
    for (std::size_t i = 0; i < h.dim(); ++i)
      for (std::size_t r = 0; r < s.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c)
          stacked.at(i * s.dim() + r, c) = h.basis[i].at(r, c);
    rad = subspace_intersect(rad, kernel_basis(stacked));
  }
  return rad;
}

Subspace annihilator_of_module(const ModuleRep& m) {
  const FieldDesc& f = m.field();
  std::size_t d = m.algebra()->dim(), n = m.dim();
  Matrix sys(f, n * n, d);
  for (std::size_t i = 0; i < d; ++i) {
    const Vec& flat = m.action(i).flat();
    for (std::size_t e = 0; e < n * n; ++e) sys.at(e, i) = flat[e];
  }
  return kernel_basis(sys);
}

ProjectivityResult is_projective(const ModuleRep& m) {
  const FieldDesc& f = m.field();
  std::size_t n = m.dim(), d = m.algebra()->dim();
  if (n == 0) return {Matrix(f, 0, 0), std::nullopt};

  // pi : A^n ->> m, (a_1, ..., a_n) |-> sum rho(a_j) e_j. A section is a sum
  // of slot-embedded elements of Hom(m, A), so solve for coefficients x_jl
  // with sum x_jl (M_j phi_l) = id, where M_j maps a |-> rho(a) e_j.
  ModuleRep reg = regular_module(m.algebra());
  HomBasis h0 = hom_basis(m, reg);
  std::vector<Matrix> mj;
  mj.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    Matrix block(f, n, d);
    for (std::size_t i = 0; i < d; ++i) {
      Vec col = m.action(i).col(j);
      for (std::size_t rr = 0; rr < n; ++rr) block.at(rr, i) = col[rr];
    }
    mj.push_back(std::move(block));
  }
  std::size_t unknowns = n * h0.dim();
  Matrix sys(f, n * n, unknowns);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < h0.dim(); ++l) {
      Matrix t = mj[j] * h0.basis[l];
      const Vec& flat = t.flat();
      for (std::size_t e = 0; e < n * n; ++e) sys.at(e, j * h0.dim() + l) = flat[e];
    }
  }
  Vec rhs = Matrix::identity(f, n).flat();
  AffineSolveResult res = solve_with_certificate(sys, rhs);
  if (!res.solution) return {std::nullopt, res.certificate};

  Matrix sigma(f, n * d, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < h0.dim(); ++l) {
      const Scalar& x = (*res.solution)[j * h0.dim() + l];
      if (x.is_zero()) continue;
      for (std::size_t rr = 0; rr < d; ++rr)
        for (std::size_t cc = 0; cc < n; ++cc)
          sigma.at(j * d + rr, cc) += x * h0.basis[l].at(rr, cc);
    }
  }
  return {sigma, std::nullopt};
}

EndoMatrix::EndoMatrix(const ModuleRep& m, Matrix mat) : mat_(std::move(mat)) {
  if (mat_.rows() != m.dim() || mat_.cols() != m.dim())
    fail(Errc::NotEndomorphism, "endomorphism matrix has wrong shape");
  if (mat_.field() != m.field()) fail(Errc::NotEndomorphism, "endomorphism field mismatch");
  for (std::size_t i = 0; i < m.algebra()->dim(); ++i) {
    if (mat_ * m.action(i) != m.action(i) * mat_)
      fail(Errc::NotEndomorphism,
           "matrix does not commute with the action of basis element " + std::to_string(i));
  }
}

std::pair<Subspace, Subspace> fitting_split(const ModuleRep& m, const EndoMatrix& theta) {
  std::size_t n = m.dim();
  if (theta.matrix().rows() != n) fail(Errc::NotEndomorphism, "endomorphism of another module");
  Matrix power = theta.matrix().pow(n);
  Subspace ker = kernel_basis(power);
  Subspace im = row_space(power.transpose());
  auto [meet, join] = subspace_meet_join(ker, im);
  if (!meet.is_zero() || !join.is_full())
    fail(Errc::InternalInvariantViolation, "Fitting split is not a direct sum");
  return {ker, im};
}

EndoClass classify_endo(const ModuleRep& m, const EndoMatrix& theta) {
  if (theta.matrix().rows() != m.dim())
    fail(Errc::NotEndomorphism, "endomorphism of another module");
  if (m.dim() == 0) return {EndoClass::Kind::Invertible, 0};
  Poly cp = char_poly(theta.matrix());
  if (!cp.coeff(0).is_zero()) return {EndoClass::Kind::Invertible, 0};
  Poly mp = min_poly(theta.matrix());
  bool power_of_t = true;
  for (int i = 0; i < mp.degree(); ++i) {
    if (!mp.coeff(static_cast<std::size_t>(i)).is_zero()) {
      power_of_t = false;
      break;
    }
  }
  if (power_of_t) return {EndoClass::Kind::Nilpotent, static_cast<std::size_t>(mp.degree())};
  return {EndoClass::Kind::Neither, 0};
}

std::optional<Vec> find_generator(const ModuleRep& m, std::uint64_t seed, std::size_t budget) {
  const FieldDesc& f = m.field();
  std::size_t n = m.dim();
  if (n == 0) return std::nullopt;
  for (std::size_t s = 0; s < n; ++s) {
    Vec e(n, Scalar::zero(f));
    e[s] = Scalar::one(f);
    if (spin(m, e).is_full()) return e;
  }
  if (!f.is_prime_field()) return std::nullopt;
  Rng rng(derive_seed(seed, 0x67656e));
  for (std::size_t t = 0; t < budget; ++t) {
    Vec v(n, Scalar::zero(f));
    for (auto& x : v)
      x = Scalar::from_int(f, static_cast<std::int64_t>(rng.below(
                                  static_cast<std::uint64_t>(f.p()))));
    if (spin(m, v).is_full()) return v;
  }
  return std::nullopt;
}

}  // namespace modrep
