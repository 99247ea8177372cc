#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "modrep/field.hpp"

namespace modrep {

/// Dense univariate polynomial, coefficients lowest degree first with
/// trailing zeros stripped (the zero polynomial has an empty list).
class Poly {
 public:
  explicit Poly(const FieldDesc& f) : field_(f) {}
  Poly(const FieldDesc& f, std::vector<Scalar> coeffs) : field_(f), c_(std::move(coeffs)) {
    trim();
  }

  static Poly zero(const FieldDesc& f) { return Poly(f); }
  static Poly constant(const Scalar& s) { return Poly(s.field(), {s}); }
  static Poly one(const FieldDesc& f) { return constant(Scalar::one(f)); }
  /// The monomial t.
  static Poly x(const FieldDesc& f) {
    return Poly(f, {Scalar::zero(f), Scalar::one(f)});
  }
  /// c_0 + c_1 t + ... from int coefficients.
  static Poly from_ints(const FieldDesc& f, const std::vector<std::int64_t>& ints);

  const FieldDesc& field() const { return field_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : Scalar::zero(field_);
  }
  Scalar leading() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scale(const Scalar& s) const;
  bool operator==(const Poly& o) const { return field_ == o.field_ && c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly monic() const;
  Scalar eval(const Scalar& at) const;
  Poly derivative() const;
  /// Substitute t -> t^k.
  Poly inflate(std::size_t k) const;

  std::string to_string() const;

  /// Deterministic order: by degree, then coefficients from constant term up.
  bool sort_less(const Poly& o) const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  FieldDesc field_;
  std::vector<Scalar> c_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
/// Exact division; InternalInvariantViolation if the remainder is nonzero.
Poly poly_div_exact(const Poly& a, const Poly& b);
/// Monic gcd (gcd(0,0) = 0).
Poly poly_gcd(Poly a, Poly b);
/// (g, s, t) with s*a + t*b = g, g the monic gcd.
struct PolyXgcd {
  Poly g, s, t;
};
PolyXgcd poly_extended_gcd(const Poly& a, const Poly& b);
Poly poly_lcm(const Poly& a, const Poly& b);
/// base^e mod m, with an arbitrary-precision exponent.
Poly poly_powmod(const Poly& base, const mpz_class& e, const Poly& m);

/// Deterministic Rabin test over F_p.
bool poly_is_irreducible(const Poly& f);

/// Factor f over a prime field into monic irreducibles with multiplicities,
/// sorted by (degree, coefficient order). Squarefree decomposition, then
/// distinct-degree splitting, then seeded Cantor-Zassenhaus equal-degree
/// splitting; the seed makes the run reproducible.
std::vector<std::pair<Poly, int>> poly_factor(const Poly& f, std::uint64_t seed = 0);

}  // namespace modrep
