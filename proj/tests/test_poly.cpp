#include <doctest.h>

#include <optional>

#include "modrep/poly.hpp"
#include "modrep/rng.hpp"

using namespace modrep;

namespace {

Poly p_of(const FieldDesc& f, std::initializer_list<std::int64_t> coeffs) {
  return Poly::from_ints(f, coeffs);
}

// Test-side oracle: trial division by every monic polynomial of the given
// degree (coefficients enumerated exhaustively).
std::optional<Poly> divides_some_monic(const Poly& f, int deg) {
  const FieldDesc& fd = f.field();
  std::int64_t p = fd.p();
  std::vector<std::int64_t> digits(static_cast<std::size_t>(deg), 0);
  while (true) {
    std::vector<Scalar> coeffs;
    for (auto d : digits) coeffs.push_back(Scalar::from_int(fd, d));
    coeffs.push_back(Scalar::one(fd));
    Poly cand(fd, coeffs);
    if (poly_divmod(f, cand).second.is_zero()) return cand;
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] >= p) digits[i++] = 0;
    if (i == digits.size()) return std::nullopt;
  }
}

bool has_root(const Poly& f) {
  for (std::int64_t a = 0; a < f.field().p(); ++a)
    if (f.eval(Scalar::from_int(f.field(), a)).is_zero()) return true;
  return false;
}

}  // namespace

TEST_CASE("factor t^3+1 over F_2") {
  FieldDesc f2 = FieldDesc::fp(2);
  Poly f = p_of(f2, {1, 0, 0, 1});

  // Oracle: the only monic linear divisor is t+1, and the cofactor t^2+t+1
  // has no roots over F_2, hence is irreducible.
  auto lin = divides_some_monic(f, 1);
  REQUIRE(lin.has_value());
  CHECK(*lin == p_of(f2, {1, 1}));
  Poly cofactor = poly_div_exact(f, *lin);
  CHECK(cofactor == p_of(f2, {1, 1, 1}));
  CHECK(!has_root(cofactor));

  auto factors = poly_factor(f, 0);
  REQUIRE(factors.size() == 2);
  CHECK(factors[0].first == p_of(f2, {1, 1}));
  CHECK(factors[0].second == 1);
  CHECK(factors[1].first == p_of(f2, {1, 1, 1}));
  CHECK(factors[1].second == 1);
}

TEST_CASE("factor t^2 over F_5") {
  FieldDesc f5 = FieldDesc::fp(5);
  auto factors = poly_factor(p_of(f5, {0, 0, 1}), 0);
  REQUIRE(factors.size() == 1);
  CHECK(factors[0].first == p_of(f5, {0, 1}));
  CHECK(factors[0].second == 2);
}

TEST_CASE("factor (t-1)^3 over F_3") {
  FieldDesc f3 = FieldDesc::fp(3);
  // Oracle: cube t+2 by schoolbook multiplication.
  Poly lin = p_of(f3, {2, 1});
  Poly cube = lin * lin * lin;
  CHECK(cube == p_of(f3, {2, 0, 0, 1}));  // t^3 + 2

  auto factors = poly_factor(cube, 7);
  REQUIRE(factors.size() == 1);
  CHECK(factors[0].first == lin);
  CHECK(factors[0].second == 3);
}

TEST_CASE("factorization errors") {
  FieldDesc q = FieldDesc::rationals();
  CHECK_THROWS_AS(poly_factor(Poly::from_ints(q, {1, 1}), 0), Error);
  FieldDesc f5 = FieldDesc::fp(5);
  CHECK_THROWS_AS(poly_factor(Poly::zero(f5), 0), Error);
  CHECK(poly_factor(p_of(f5, {3}), 0).empty());  // constants have no factors
}

TEST_CASE("re-expansion reproduces the input exactly") {
  for (std::int64_t p : {2, 3, 5, 7}) {
    FieldDesc f = FieldDesc::fp(p);
    Rng rng(1000 + static_cast<std::uint64_t>(p));
    for (int trial = 0; trial < 30; ++trial) {
      int deg = 1 + static_cast<int>(rng.below(8));
      std::vector<Scalar> coeffs;
      for (int i = 0; i < deg; ++i)
        coeffs.push_back(Scalar::from_int(f, static_cast<std::int64_t>(rng.below(
                                                 static_cast<std::uint64_t>(p)))));
      coeffs.push_back(Scalar::from_int(
          f, 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p - 1)))));
      Poly poly(f, coeffs);
      auto factors = poly_factor(poly, 17 * static_cast<std::uint64_t>(trial));
      Poly product = Poly::constant(poly.leading());
      for (const auto& [g, mult] : factors) {
        CHECK(g.leading().is_one());
        for (int i = 0; i < mult; ++i) product = product * g;
      }
      CHECK(product == poly);

      // Claimed-irreducible checks: no roots in low degree, Frobenius gcd
      // condition above that.
      for (const auto& [g, mult] : factors) {
        if (g.degree() >= 2 && g.degree() <= 3) {
          CHECK(!has_root(g));
        } else if (g.degree() > 3) {
          Poly x = Poly::x(f);
          mpz_class pk = 1;
          for (int k = 1; k < g.degree(); ++k) {
            pk *= static_cast<long>(p);
            Poly xq = poly_powmod(x, pk, g);
            CHECK(poly_gcd(xq - x, g).is_one());
          }
        }
        CHECK(poly_is_irreducible(g));
      }
    }
  }
}

TEST_CASE("determinism across repeated runs, variation across seeds allowed") {
  FieldDesc f7 = FieldDesc::fp(7);
  // (t^2+1)(t^2+t+3)(t+5) over F_7, a nontrivial equal-degree split
  Poly f = p_of(f7, {1, 0, 1}) * p_of(f7, {3, 1, 1}) * p_of(f7, {5, 1});
  auto a = poly_factor(f, 123);
  auto b = poly_factor(f, 123);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].first == b[i].first);
    CHECK(a[i].second == b[i].second);
  }
  // sorted by (degree, coefficient order)
  for (std::size_t i = 1; i < a.size(); ++i)
    CHECK(!a[i].first.sort_less(a[i - 1].first));
}

TEST_CASE("divmod, gcd, lcm, xgcd") {
  FieldDesc f5 = FieldDesc::fp(5);
  Poly a = p_of(f5, {1, 2, 0, 3});
  Poly b = p_of(f5, {4, 1});
  auto [quot, rem] = poly_divmod(a, b);
  CHECK(quot * b + rem == a);
  CHECK(rem.degree() < b.degree());

  Poly g = p_of(f5, {1, 1});
  Poly x = g * p_of(f5, {2, 0, 1});
  Poly y = g * p_of(f5, {3, 1});
  CHECK(poly_gcd(x, y) == g);
  CHECK(poly_lcm(x, y) == poly_div_exact(x * y, g).monic());

  auto xg = poly_extended_gcd(x, y);
  CHECK(xg.g == g);
  CHECK(xg.s * x + xg.t * y == g);

  CHECK_THROWS_AS(poly_divmod(a, Poly::zero(f5)), Error);
}

TEST_CASE("derivative and inflate") {
  FieldDesc f3 = FieldDesc::fp(3);
  // d/dt (t^3) = 0 in characteristic 3
  CHECK(p_of(f3, {0, 0, 0, 1}).derivative().is_zero());
  CHECK(p_of(f3, {1, 1}).inflate(3) == p_of(f3, {1, 0, 0, 1}));
  FieldDesc q = FieldDesc::rationals();
  CHECK(Poly::from_ints(q, {5, 0, 3}).derivative() == Poly::from_ints(q, {0, 6}));
}

TEST_CASE("irreducibility test") {
  FieldDesc f2 = FieldDesc::fp(2);
  CHECK(poly_is_irreducible(p_of(f2, {1, 1, 1})));
  CHECK(!poly_is_irreducible(p_of(f2, {1, 0, 1})));  // (t+1)^2
  CHECK(poly_is_irreducible(p_of(f2, {1, 1, 0, 0, 1})));   // t^4+t+1
  CHECK(!poly_is_irreducible(p_of(f2, {1, 1, 0, 1, 1})));  // (t^2+t+1)^2
}
