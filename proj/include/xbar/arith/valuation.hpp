#pragma once

#include <cstddef>
#include <string>

#include "xbar/arith/rational.hpp"

namespace xbar {

/// The fixed data of a computation: the prime p (so q = p, residue field
/// F_p), the dimension n of V, and the ramification index e of the
/// Eisenstein extension L = K[pi]/(pi^e - p).
class PrimeContext {
 public:
  PrimeContext(unsigned long p, std::size_t n, std::size_t e = 1) : p_(p), n_(n), e_(e) {
    if (p < 2 || mpz_probab_prime_p(Integer(p).get_mpz_t(), 30) == 0)
      fail(Errc::InvalidContext, "p = " + std::to_string(p) + " is not prime");
    if (n < 2) fail(Errc::InvalidContext, "n must be at least 2");
    if (e < 1) fail(Errc::InvalidContext, "e must be at least 1");
  }

  unsigned long p() const { return p_; }
  unsigned long q() const { return p_; }
  std::size_t n() const { return n_; }
  std::size_t e() const { return e_; }

  PrimeContext with_n(std::size_t n) const { return PrimeContext(p_, n, e_); }
  PrimeContext with_e(std::size_t e) const { return PrimeContext(p_, n_, e); }

  friend bool operator==(const PrimeContext&, const PrimeContext&) = default;

 private:
  unsigned long p_;
  std::size_t n_;
  std::size_t e_;
};

namespace detail {
inline long strip_prime(const Integer& z, unsigned long p) {
  Integer rest;
  Integer prime(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), prime.get_mpz_t()));
}
}  // namespace detail

/// p-adic valuation of a nonzero integer.
inline long valuation_int(const Integer& z, unsigned long p) {
  if (z == 0) fail(Errc::InvalidArgument, "valuation of integer zero");
  return detail::strip_prime(abs(z), p);
}

/// v_p(c), normalised so v(p) = 1; v(0) = +inf.
inline ExtRational val_k(const Rational& c, const PrimeContext& ctx) {
  if (c == 0) return ExtRational::pos_inf();
  long v = valuation_int(c.get_num(), ctx.p()) - valuation_int(c.get_den(), ctx.p());
  return ExtRational(Rational(v));
}

/// Integer valuation of a nonzero element; the common case in loops.
inline long val_k_int(const Rational& c, const PrimeContext& ctx) {
  if (c == 0) fail(Errc::InvalidArgument, "val_k_int of zero");
  return valuation_int(c.get_num(), ctx.p()) - valuation_int(c.get_den(), ctx.p());
}

/// |c| = q^{-v(c)}.
inline LogValue abs_k(const Rational& c, const PrimeContext& ctx) {
  if (c == 0) return LogValue::zero();
  return LogValue::finite(Rational(-val_k_int(c, ctx)));
}

/// p^k as an element of K, for any integer k.
inline Rational prime_power(const PrimeContext& ctx, long k) {
  Integer pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), ctx.p(), static_cast<unsigned long>(k < 0 ? -k : k));
  return k >= 0 ? Rational(pk) : Rational(Rational(1) / pk);
}

}  // namespace xbar
