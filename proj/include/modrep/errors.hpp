#pragma once

#include <stdexcept>
#include <string>

namespace modrep {

/// Error categories surfaced by the library. The CLI maps these onto exit
/// codes, so the set is part of the external contract.
enum class Errc {
  DivisionByZero,
  FieldMismatch,
  UnsupportedField,
  UnsupportedCharacteristic,
  ZeroPolynomial,
  NonSquare,
  DimensionMismatch,
  AmbientMismatch,
  AlgebraMismatch,
  NoSolution,
  NotInvariant,
  NotEndomorphism,
  NotAnIdeal,
  NotTwoSided,
  ImproperIdeal,
  NotClosed,
  NoIdentity,
  ZeroModule,
  IncompleteSimples,
  NotApproxIdempotent,
  NotCertifiedSimple,
  SearchBudgetExceeded,
  StructureViolation,
  InternalInvariantViolation,
  BadParam,
  ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace modrep
