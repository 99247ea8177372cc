#include "modrep/field.hpp"

#include <cstdlib>

namespace modrep {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::UnsupportedField: return "UnsupportedField";
    case Errc::UnsupportedCharacteristic: return "UnsupportedCharacteristic";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::NonSquare: return "NonSquare";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::AmbientMismatch: return "AmbientMismatch";
    case Errc::AlgebraMismatch: return "AlgebraMismatch";
    case Errc::NoSolution: return "NoSolution";
    case Errc::NotInvariant: return "NotInvariant";
    case Errc::NotEndomorphism: return "NotEndomorphism";
    case Errc::NotAnIdeal: return "NotAnIdeal";
    case Errc::NotTwoSided: return "NotTwoSided";
    case Errc::ImproperIdeal: return "ImproperIdeal";
    case Errc::NotClosed: return "NotClosed";
    case Errc::NoIdentity: return "NoIdentity";
    case Errc::ZeroModule: return "ZeroModule";
    case Errc::IncompleteSimples: return "IncompleteSimples";
    case Errc::NotApproxIdempotent: return "NotApproxIdempotent";
    case Errc::NotCertifiedSimple: return "NotCertifiedSimple";
    case Errc::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case Errc::StructureViolation: return "StructureViolation";
    case Errc::InternalInvariantViolation: return "InternalInvariantViolation";
    case Errc::BadParam: return "BadParam";
    case Errc::ParseError: return "ParseError";
  }
  return "UnknownError";
}

bool is_prime_u63(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::int64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

FieldDesc FieldDesc::fp(std::int64_t p) {
  if (p < 2 || p >= (std::int64_t{1} << 31))
    fail(Errc::BadParam, "prime must satisfy 2 <= p < 2^31, got " + std::to_string(p));
  if (!is_prime_u63(p)) fail(Errc::BadParam, std::to_string(p) + " is not prime");
  return FieldDesc(FieldKind::PrimeField, static_cast<std::int32_t>(p));
}

FieldDesc FieldDesc::rationals() { return FieldDesc(FieldKind::Rationals, 0); }

std::string FieldDesc::to_string() const {
  return is_prime_field() ? "fp:" + std::to_string(p_) : "q";
}

namespace {

std::int64_t mod_reduce(std::int64_t n, std::int64_t p) {
  std::int64_t r = n % p;
  return r < 0 ? r + p : r;
}

// Extended Euclid inverse of a mod p, a in [1, p).
std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return mod_reduce(t, p);
}

const mpq_class& zero_mpq() {
  static const mpq_class z(0);
  return z;
}

}  // namespace

const mpq_class& Scalar::q() const { return rat_ ? *rat_ : zero_mpq(); }

const mpq_class& Scalar::fraction() const { return q(); }

Scalar Scalar::zero(const FieldDesc& f) { return from_int(f, 0); }

Scalar Scalar::one(const FieldDesc& f) { return from_int(f, 1); }

Scalar Scalar::from_int(const FieldDesc& f, std::int64_t n) {
  if (f.is_prime_field()) return Scalar(f, mod_reduce(n, f.p()));
  return Scalar(f, mpq_class(static_cast<long>(n)));
}

Scalar Scalar::from_fraction(const FieldDesc& f, std::int64_t num, std::int64_t den) {
  if (den == 0) fail(Errc::DivisionByZero, "zero denominator");
  if (f.is_prime_field()) {
    Scalar d = from_int(f, den);
    return from_int(f, num) * d.inv();
  }
  mpq_class q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return Scalar(f, std::move(q));
}

Scalar Scalar::parse(const FieldDesc& f, const std::string& text) {
  if (text.empty()) fail(Errc::ParseError, "empty scalar literal");
  std::size_t slash = text.find('/');
  auto parse_int = [](const std::string& s) -> mpz_class {
    if (s.empty()) fail(Errc::ParseError, "empty integer literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) fail(Errc::ParseError, "bad integer literal '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') fail(Errc::ParseError, "bad integer literal '" + s + "'");
    return mpz_class(s, 10);
  };
  mpz_class num = parse_int(slash == std::string::npos ? text : text.substr(0, slash));
  mpz_class den = 1;
  if (slash != std::string::npos) {
    den = parse_int(text.substr(slash + 1));
    if (den == 0) fail(Errc::ParseError, "zero denominator in '" + text + "'");
  }
  if (f.is_rationals()) {
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(f, std::move(q));
  }
  mpz_class p(static_cast<long>(f.p()));
  mpz_class num_r = num % p;
  if (num_r < 0) num_r += p;
  mpz_class den_r = den % p;
  if (den_r < 0) den_r += p;
  Scalar n = Scalar(f, static_cast<std::int64_t>(num_r.get_si()));
  Scalar d = Scalar(f, static_cast<std::int64_t>(den_r.get_si()));
  return slash == std::string::npos ? n : n * d.inv();
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  if (field_.is_prime_field()) {
    std::int64_t s = res_ + o.res_;
    if (s >= field_.p()) s -= field_.p();
    return Scalar(field_, s);
  }
  return Scalar(field_, mpq_class(q() + o.q()));
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same_field(o);
  if (field_.is_prime_field()) {
    std::int64_t s = res_ - o.res_;
    if (s < 0) s += field_.p();
    return Scalar(field_, s);
  }
  return Scalar(field_, mpq_class(q() - o.q()));
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  // p < 2^31 keeps the product inside int64.
  if (field_.is_prime_field()) return Scalar(field_, (res_ * o.res_) % field_.p());
  return Scalar(field_, mpq_class(q() * o.q()));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_prime_field()) {
    res_ += o.res_;
    if (res_ >= field_.p()) res_ -= field_.p();
    return *this;
  }
  if (!rat_) rat_ = new mpq_class(0);
  *rat_ += o.q();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_prime_field()) {
    res_ -= o.res_;
    if (res_ < 0) res_ += field_.p();
    return *this;
  }
  if (!rat_) rat_ = new mpq_class(0);
  *rat_ -= o.q();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_prime_field()) {
    res_ = (res_ * o.res_) % field_.p();
    return *this;
  }
  if (!rat_) rat_ = new mpq_class(0);
  *rat_ *= o.q();
  return *this;
}

Scalar Scalar::operator-() const {
  if (field_.is_prime_field()) return Scalar(field_, res_ == 0 ? 0 : field_.p() - res_);
  return Scalar(field_, mpq_class(-q()));
}

Scalar Scalar::inv() const {
  if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero");
  if (field_.is_prime_field()) return Scalar(field_, mod_inverse(res_, field_.p()));
  return Scalar(field_, mpq_class(1 / q()));
}

bool Scalar::operator==(const Scalar& o) const {
  if (field_ != o.field_) return false;
  if (field_.is_prime_field()) return res_ == o.res_;
  return q() == o.q();
}

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar result = Scalar::one(field_);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::string Scalar::to_string() const {
  if (field_.is_prime_field()) return std::to_string(res_);
  return q().get_num().get_str() + "/" + q().get_den().get_str();
}

bool Scalar::sort_less(const Scalar& o) const {
  if (field_.is_prime_field()) return res_ < o.res_;
  return q() < o.q();
}

}  // namespace modrep
