#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "xbar/error.hpp"

namespace xbar {

/// Elements of K. K is modelled as Q with the p-adic valuation, so every
/// field operation is exact.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) fail(Errc::DivisionByZero, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "num/den" with a positive denominator, always including the slash.
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Accepts "a/b" or a bare integer "a"; the result is reduced.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&] {
    return ParseError("", "malformed rational '" + std::string(text) + "'");
  };
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+'))
      s.remove_prefix(1);
    if (s.empty()) return false;
    for (char ch : s)
      if (ch < '0' || ch > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : text.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
  std::string num_s(num);
  if (!num_s.empty() && num_s[0] == '+') num_s.erase(0, 1);
  Integer n(num_s, 10), d(std::string(den), 10);
  if (d == 0) throw ParseError("", "zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Smallest integer >= r.
inline Integer ceil(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

/// Largest integer <= r.
inline Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Rationals extended by +inf and -inf. Used for valuations (v(0) = +inf)
/// and for the filtration thresholds f_Sigma(a).
class ExtRational {
 public:
  enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

  ExtRational() = default;
  ExtRational(Rational value) : kind_(Kind::Finite), value_(std::move(value)) { value_.canonicalize(); }  // NOLINT

  static ExtRational pos_inf() { return ExtRational(Kind::PosInf); }
  static ExtRational neg_inf() { return ExtRational(Kind::NegInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  const Rational& value() const {
    if (!is_finite()) fail(Errc::InvalidArgument, "value() of an infinite ExtRational");
    return value_;
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.kind_ != b.kind_) return false;
    return !a.is_finite() || a.value_ == b.value_;
  }

  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (!a.is_finite()) return std::strong_ordering::equal;
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.is_finite() && b.is_finite()) return ExtRational(a.value_ + b.value_);
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
      fail(Errc::InvalidArgument, "+inf + -inf is undefined");
    return a.is_finite() ? b : a;
  }

  ExtRational operator-() const {
    if (is_pos_inf()) return neg_inf();
    if (is_neg_inf()) return pos_inf();
    return ExtRational(-value_);
  }

 private:
  explicit ExtRational(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  Rational value_;
};

inline std::string to_string(const ExtRational& x) {
  switch (x.kind()) {
    case ExtRational::Kind::PosInf: return "+inf";
    case ExtRational::Kind::NegInf: return "-inf";
    default: return to_string(x.value());
  }
}

inline std::ostream& operator<<(std::ostream& os, const ExtRational& x) {
  return os << to_string(x);
}

/// A nonnegative real restricted to q^Q ∪ {0}, carried as its base-q
/// logarithm. Zero sorts below every finite value and absorbs products.
class LogValue {
 public:
  LogValue() = default;  // Finite(0), i.e. the real number 1

  static LogValue zero() {
    LogValue z;
    z.zero_ = true;
    return z;
  }
  static LogValue finite(Rational log) {
    LogValue v;
    v.log_ = std::move(log);
    v.log_.canonicalize();
    return v;
  }
  static LogValue one() { return LogValue(); }

  bool is_zero() const { return zero_; }
  bool is_finite() const { return !zero_; }

  const Rational& log() const {
    if (zero_) fail(Errc::InvalidArgument, "log() of Zero");
    return log_;
  }

  friend bool operator==(const LogValue& a, const LogValue& b) {
    if (a.zero_ || b.zero_) return a.zero_ == b.zero_;
    return a.log_ == b.log_;
  }

  friend std::strong_ordering operator<=>(const LogValue& a, const LogValue& b) {
    if (a.zero_ || b.zero_) {
      if (a.zero_ == b.zero_) return std::strong_ordering::equal;
      return a.zero_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    int c = cmp(a.log_, b.log_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend LogValue operator*(const LogValue& a, const LogValue& b) {
    if (a.zero_ || b.zero_) return zero();
    return finite(a.log_ + b.log_);
  }

  /// a / b for finite b.
  friend LogValue operator/(const LogValue& a, const LogValue& b) {
    if (b.zero_) fail(Errc::DivisionByZero, "division by the Zero value");
    if (a.zero_) return zero();
    return finite(a.log_ - b.log_);
  }

  /// Multiplication by q^shift.
  LogValue scaled(const Rational& shift) const {
    return zero_ ? zero() : finite(log_ + shift);
  }

  /// this^k for k >= 0 with 0^0 = 1.
  LogValue pow(unsigned k) const {
    if (k == 0) return one();
    if (zero_) return zero();
    return finite(log_ * k);
  }

 private:
  bool zero_ = false;
  Rational log_;
};

inline LogValue max(const LogValue& a, const LogValue& b) { return a < b ? b : a; }

inline std::string to_string(const LogValue& v) {
  return v.is_zero() ? std::string("zero") : "q^(" + to_string(v.log()) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const LogValue& v) {
  return os << to_string(v);
}

}  // namespace xbar
