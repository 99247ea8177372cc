#include "modrep/poly.hpp"

#include <algorithm>

#include "modrep/rng.hpp"

namespace modrep {

Poly Poly::from_ints(const FieldDesc& f, const std::vector<std::int64_t>& ints) {
  std::vector<Scalar> c;
  c.reserve(ints.size());
  for (auto n : ints) c.push_back(Scalar::from_int(f, n));
  return Poly(f, std::move(c));
}

Scalar Poly::leading() const {
  if (is_zero()) fail(Errc::ZeroPolynomial, "zero polynomial has no leading coefficient");
  return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Scalar> c(std::max(c_.size(), o.c_.size()), Scalar::zero(field_));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
  return Poly(field_, std::move(c));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Scalar> c(std::max(c_.size(), o.c_.size()), Scalar::zero(field_));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - o.coeff(i);
  return Poly(field_, std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(field_);
  std::vector<Scalar> c(c_.size() + o.c_.size() - 1, Scalar::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  }
  return Poly(field_, std::move(c));
}

Poly Poly::operator-() const {
  std::vector<Scalar> c;
  c.reserve(c_.size());
  for (const auto& s : c_) c.push_back(-s);
  return Poly(field_, std::move(c));
}

Poly Poly::scale(const Scalar& s) const {
  std::vector<Scalar> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(x * s);
  return Poly(field_, std::move(c));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scale(leading().inv());
}

Scalar Poly::eval(const Scalar& at) const {
  Scalar acc = Scalar::zero(field_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(field_);
  std::vector<Scalar> c;
  c.reserve(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    c.push_back(c_[i] * Scalar::from_int(field_, static_cast<std::int64_t>(i)));
  return Poly(field_, std::move(c));
}

Poly Poly::inflate(std::size_t k) const {
  if (is_zero() || k == 1) return *this;
  std::vector<Scalar> c((c_.size() - 1) * k + 1, Scalar::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) c[i * k] = c_[i];
  return Poly(field_, std::move(c));
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (i == 0 || !c_[i].is_one()) out += c_[i].to_string();
    if (i >= 1) {
      if (!c_[i].is_one()) out += "*";
      out += "t";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

bool Poly::sort_less(const Poly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != o.c_[i]) return c_[i].sort_less(o.c_[i]);
  }
  return false;
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(Errc::DivisionByZero, "polynomial division by zero");
  const FieldDesc& f = a.field();
  if (f != b.field()) fail(Errc::FieldMismatch, "poly_divmod over different fields");
  std::vector<Scalar> rem(a.coeffs());
  int db = b.degree();
  if (a.degree() < db) return {Poly(f), a};
  std::vector<Scalar> quot(a.degree() - db + 1, Scalar::zero(f));
  Scalar lead_inv = b.leading().inv();
  for (int k = a.degree() - db; k >= 0; --k) {
    Scalar q = rem[k + db] * lead_inv;
    quot[k] = q;
    if (q.is_zero()) continue;
    for (int j = 0; j <= db; ++j) rem[k + j] -= q * b.coeff(j);
  }
  return {Poly(f, std::move(quot)), Poly(f, std::move(rem))};
}

Poly poly_div_exact(const Poly& a, const Poly& b) {
  auto [q, r] = poly_divmod(a, b);
  if (!r.is_zero())
    fail(Errc::InternalInvariantViolation, "expected exact polynomial division");
  return q;
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

PolyXgcd poly_extended_gcd(const Poly& a, const Poly& b) {
  const FieldDesc& f = a.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::one(f), s1 = Poly::zero(f);
  Poly t0 = Poly::zero(f), t1 = Poly::one(f);
  while (!r1.is_zero()) {
    auto [q, r] = poly_divmod(r0, r1);
    Poly s2 = s0 - q * s1;
    Poly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Scalar lead_inv = r0.leading().inv();
  return {r0.scale(lead_inv), s0.scale(lead_inv), t0.scale(lead_inv)};
}

Poly poly_lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.field());
  return poly_div_exact(a * b, poly_gcd(a, b)).monic();
}

Poly poly_powmod(const Poly& base, const mpz_class& e, const Poly& m) {
  Poly result = Poly::one(base.field());
  Poly b = poly_divmod(base, m).second;
  mpz_class k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result = poly_divmod(result * b, m).second;
    k >>= 1;
    if (k > 0) b = poly_divmod(b * b, m).second;
  }
  return result;
}

namespace {

// x^(p^e) mod f via e rounds of p-th powering.
Poly frobenius_power(const Poly& f, const Poly& start, int e) {
  mpz_class p(static_cast<long>(f.field().p()));
  Poly h = start;
  for (int i = 0; i < e; ++i) h = poly_powmod(h, p, f);
  return h;
}

// Squarefree decomposition over F_p (standard char-p algorithm; p-th roots
// over the prime field are just index division since Frobenius fixes F_p).
void squarefree_decompose(const Poly& f, int outer_mult,
                          std::vector<std::pair<Poly, int>>& out) {
  const FieldDesc& fd = f.field();
  std::int64_t p = fd.p();
  Poly d = f.derivative();
  if (d.is_zero()) {
    // f = g(t^p) = g(t)^p.
    std::vector<Scalar> c;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) c.push_back(f.coeff(i));
    squarefree_decompose(Poly(fd, std::move(c)), outer_mult * static_cast<int>(p), out);
    return;
  }
  Poly c = poly_gcd(f, d);
  Poly w = poly_div_exact(f, c).monic();
  int i = 1;
  while (!w.is_one()) {
    Poly y = poly_gcd(w, c);
    Poly z = poly_div_exact(w, y).monic();
    if (!z.is_one()) out.emplace_back(z, i * outer_mult);
    ++i;
    w = y;
    c = poly_div_exact(c, y);
  }
  if (!c.is_one()) {
    std::vector<Scalar> cc;
    for (int j = 0; j <= c.degree(); j += static_cast<int>(p)) cc.push_back(c.coeff(j));
    squarefree_decompose(Poly(fd, std::move(cc)).monic(), outer_mult * static_cast<int>(p), out);
  }
}

Poly random_poly_below(const FieldDesc& fd, int deg_bound, Rng& rng) {
  std::vector<Scalar> c;
  c.reserve(static_cast<std::size_t>(deg_bound));
  for (int i = 0; i < deg_bound; ++i)
    c.push_back(Scalar::from_int(
        fd, static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(fd.p())))));
  return Poly(fd, std::move(c));
}

// Cantor-Zassenhaus split of a product of irreducibles all of degree d.
void equal_degree_split(const Poly& f, int d, Rng& rng, std::vector<Poly>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  const FieldDesc& fd = f.field();
  mpz_class p(static_cast<long>(fd.p()));
  while (true) {
    Poly r = random_poly_below(fd, f.degree(), rng);
    if (r.degree() < 1) continue;
    Poly g = poly_gcd(f, r);
    if (!g.is_one() && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(poly_div_exact(f, g).monic(), d, rng, out);
      return;
    }
    Poly s(fd);
    if (fd.p() == 2) {
      // Trace map r + r^2 + r^4 + ... over F_2.
      Poly acc = poly_divmod(r, f).second;
      Poly term = acc;
      for (int i = 1; i < d; ++i) {
        term = poly_divmod(term * term, f).second;
        acc = acc + term;
      }
      s = acc;
    } else {
      mpz_class e;
      mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
      e = (e - 1) / 2;
      s = poly_powmod(r, e, f) - Poly::one(fd);
    }
    g = poly_gcd(f, s);
    if (!g.is_one() && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(poly_div_exact(f, g).monic(), d, rng, out);
      return;
    }
  }
}

}  // namespace

bool poly_is_irreducible(const Poly& f) {
  if (!f.field().is_prime_field())
    fail(Errc::UnsupportedField, "irreducibility test needs a prime field");
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "zero polynomial");
  int n = f.degree();
  if (n == 0) return false;
  if (n == 1) return true;
  Poly g = f.monic();
  Poly x = Poly::x(f.field());
  // Rabin: x^(p^n) == x mod g, and x^(p^(n/q)) - x coprime to g for primes q | n.
  if (frobenius_power(g, x, n) != poly_divmod(x, g).second) return false;
  int m = n;
  for (int q = 2; q * q <= m; ++q) {
    if (n % q != 0) continue;
    while (m % q == 0) m /= q;
    Poly h = frobenius_power(g, x, n / q) - x;
    if (!poly_gcd(g, h).is_one()) return false;
  }
  if (m > 1 && m < n) {
    Poly h = frobenius_power(g, x, n / m) - x;
    if (!poly_gcd(g, h).is_one()) return false;
  }
  return true;
}

std::vector<std::pair<Poly, int>> poly_factor(const Poly& f, std::uint64_t seed) {
  if (!f.field().is_prime_field())
    fail(Errc::UnsupportedField, "factorization is only available over prime fields");
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "cannot factor the zero polynomial");
  std::vector<std::pair<Poly, int>> result;
  if (f.degree() == 0) return result;

  Rng rng(derive_seed(seed, 0x706f6c79));
  std::vector<std::pair<Poly, int>> squarefree;
  squarefree_decompose(f.monic(), 1, squarefree);

  const FieldDesc& fd = f.field();
  Poly x = Poly::x(fd);
  for (auto& [part, mult] : squarefree) {
    // Distinct-degree splitting of the squarefree part.
    Poly rest = part.monic();
    Poly h = poly_divmod(x, rest).second;
    mpz_class p(static_cast<long>(fd.p()));
    int d = 0;
    while (rest.degree() > 0) {
      ++d;
      if (2 * d > rest.degree()) {
        result.emplace_back(rest, mult);
        break;
      }
      h = poly_powmod(h, p, rest);
      Poly g = poly_gcd(h - x, rest);
      if (!g.is_one()) {
        std::vector<Poly> irreducibles;
        equal_degree_split(g, d, rng, irreducibles);
        for (auto& irr : irreducibles) result.emplace_back(irr, mult);
        rest = poly_div_exact(rest, g).monic();
        h = poly_divmod(h, rest).second;
      }
    }
  }

  std::sort(result.begin(), result.end(),
            [](const auto& a, const auto& b) { return a.first.sort_less(b.first); });
  return result;
}

}  // namespace modrep
