#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xbar {

enum class Errc {
  DivisionByZero,
  SingularMatrix,
  DimensionMismatch,
  InvalidContext,
  IndexOutsidePiece,
  ZeroDiagonal,
  NotSubPiece,
  NotCanonicalBasis,
  NotASeminorm,
  NotANorm,
  DependentInput,
  ZeroFunctional,
  KernelMismatch,
  SubspaceNotPreserved,
  NonIntegralTranslation,
  NotMonomial,
  DegreeCap,
  InvalidArgument,
};

constexpr std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidContext: return "InvalidContext";
    case Errc::IndexOutsidePiece: return "IndexOutsidePiece";
    case Errc::ZeroDiagonal: return "ZeroDiagonal";
    case Errc::NotSubPiece: return "NotSubPiece";
    case Errc::NotCanonicalBasis: return "NotCanonicalBasis";
    case Errc::NotASeminorm: return "NotASeminorm";
    case Errc::NotANorm: return "NotANorm";
    case Errc::DependentInput: return "DependentInput";
    case Errc::ZeroFunctional: return "ZeroFunctional";
    case Errc::KernelMismatch: return "KernelMismatch";
    case Errc::SubspaceNotPreserved: return "SubspaceNotPreserved";
    case Errc::NonIntegralTranslation: return "NonIntegralTranslation";
    case Errc::NotMonomial: return "NotMonomial";
    case Errc::DegreeCap: return "DegreeCap";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Domain error raised by library operations. The code is stable and is
/// what the CLI reports in its error envelope.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }
  std::string_view code_name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

/// Malformed input document. `where` is a JSON-pointer-like location.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what),
        where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace xbar
