#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "modrep/errors.hpp"

namespace modrep {

enum class FieldKind : std::int32_t { PrimeField, Rationals };

/// Description of the base field: F_p for a prime p < 2^31, or Q.
/// Primality is checked at construction, so a FieldDesc in hand is valid.
class FieldDesc {
 public:
  static FieldDesc fp(std::int64_t p);
  static FieldDesc rationals();

  FieldKind kind() const { return kind_; }
  bool is_prime_field() const { return kind_ == FieldKind::PrimeField; }
  bool is_rationals() const { return kind_ == FieldKind::Rationals; }

  /// The characteristic p; only meaningful for prime fields.
  std::int64_t p() const { return p_; }

  bool operator==(const FieldDesc& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const FieldDesc& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  FieldDesc(FieldKind kind, std::int32_t p) : kind_(kind), p_(p) {}

  FieldKind kind_;
  std::int32_t p_;  // 0 for Q
};

bool is_prime_u63(std::int64_t n);

/// Exact field element. Residues are kept reduced in [0, p); rationals are
/// kept in lowest terms with positive denominator, so representation equality
/// is value equality. Prime-field values are plain machine words; the heap is
/// touched only by rational scalars.
class Scalar {
 public:
  Scalar() : field_(FieldDesc::rationals()) {}
  Scalar(const Scalar& o)
      : field_(o.field_), res_(o.res_), rat_(o.rat_ ? new mpq_class(*o.rat_) : nullptr) {}
  Scalar(Scalar&& o) noexcept : field_(o.field_), res_(o.res_), rat_(o.rat_) {
    o.rat_ = nullptr;
  }
  Scalar& operator=(const Scalar& o) {
    if (this != &o) {
      field_ = o.field_;
      res_ = o.res_;
      if (o.rat_) {
        if (rat_) {
          *rat_ = *o.rat_;
        } else {
          rat_ = new mpq_class(*o.rat_);
        }
      } else {
        delete rat_;
        rat_ = nullptr;
      }
    }
    return *this;
  }
  Scalar& operator=(Scalar&& o) noexcept {
    if (this != &o) {
      field_ = o.field_;
      res_ = o.res_;
      delete rat_;
      rat_ = o.rat_;
      o.rat_ = nullptr;
    }
    return *this;
  }
  ~Scalar() { delete rat_; }

  static Scalar zero(const FieldDesc& f);
  static Scalar one(const FieldDesc& f);
  /// Embed an integer (reduced mod p for prime fields).
  static Scalar from_int(const FieldDesc& f, std::int64_t n);
  static Scalar from_fraction(const FieldDesc& f, std::int64_t num, std::int64_t den);
  /// Parse the wire format: decimal residue for F_p, "num/den" or "num" for Q.
  static Scalar parse(const FieldDesc& f, const std::string& text);

  const FieldDesc& field() const { return field_; }
  bool is_zero() const { return rat_ ? *rat_ == 0 : res_ == 0; }
  bool is_one() const { return rat_ ? *rat_ == 1 : res_ == 1; }

  /// Residue in [0, p); only valid for prime-field scalars.
  std::int64_t residue() const { return res_; }
  const mpq_class& fraction() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  /// Multiplicative inverse; DivisionByZero on zero.
  Scalar inv() const;
  Scalar operator/(const Scalar& o) const { return *this * o.inv(); }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Power with nonnegative integer exponent.
  Scalar pow(std::uint64_t e) const;

  /// Canonical wire format (see parse).
  std::string to_string() const;

  /// Total order used only for deterministic tie-breaking (factor sorting and
  /// the like); it has no algebraic meaning.
  bool sort_less(const Scalar& o) const;

 private:
  Scalar(const FieldDesc& f, std::int64_t residue) : field_(f), res_(residue) {}
  Scalar(const FieldDesc& f, mpq_class q) : field_(f), rat_(new mpq_class(std::move(q))) {}

  void check_same_field(const Scalar& o) const {
    if (field_ != o.field_) fail(Errc::FieldMismatch, "operands live in different fields");
  }
  const mpq_class& q() const;

  FieldDesc field_;
  std::int64_t res_ = 0;       // prime-field payload
  mpq_class* rat_ = nullptr;   // rational payload (null means 0 for Q)
};

/// Inverse as a free function, matching the operation-level naming.
inline Scalar scalar_inv(const Scalar& x) { return x.inv(); }

}  // namespace modrep
