#pragma once

#include <cstddef>
#include <vector>

#include "xbar/arith/matrix.hpp"
#include "xbar/arith/valuation.hpp"

namespace xbar {

/// Element sum_i a_i pi^i of the totally ramified extension
/// L = K[pi]/(pi^e - p). The valuation extends v_p with v(pi) = 1/e.
class LScalar {
 public:
  LScalar(KVector coeffs, const PrimeContext& ctx) : c_(std::move(coeffs)), p_(ctx.p()) {
    if (c_.size() != ctx.e())
      fail(Errc::DimensionMismatch, "LScalar needs exactly e coefficients");
  }

  /// Embedding of K into L.
  static LScalar from_k(const Rational& a, const PrimeContext& ctx) {
    KVector c(ctx.e());
    c[0] = a;
    return LScalar(std::move(c), ctx);
  }

  /// The uniformiser pi (equal to p when e = 1).
  static LScalar uniformizer(const PrimeContext& ctx) {
    KVector c(ctx.e());
    if (ctx.e() == 1)
      c[0] = Rational(ctx.p());
    else
      c[1] = 1;
    return LScalar(std::move(c), ctx);
  }

  std::size_t degree() const { return c_.size(); }
  unsigned long prime() const { return p_; }
  const KVector& coeffs() const { return c_; }
  const Rational& operator[](std::size_t i) const { return c_[i]; }

  bool is_zero() const { return xbar::is_zero(c_); }
  bool in_k() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  friend bool operator==(const LScalar& a, const LScalar& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }

  friend LScalar operator+(const LScalar& a, const LScalar& b) {
    a.check_compatible(b);
    LScalar r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }

  friend LScalar operator-(const LScalar& a, const LScalar& b) {
    a.check_compatible(b);
    LScalar r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }

  LScalar operator-() const {
    LScalar r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  /// Product reduced with pi^e = p.
  friend LScalar operator*(const LScalar& a, const LScalar& b) {
    a.check_compatible(b);
    const std::size_t e = a.c_.size();
    KVector out(e);
    for (std::size_t i = 0; i < e; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < e; ++j) {
        if (b.c_[j] == 0) continue;
        Rational t = a.c_[i] * b.c_[j];
        if (i + j >= e)
          out[i + j - e] += t * a.p_;
        else
          out[i + j] += t;
      }
    }
    LScalar r = a;
    r.c_ = std::move(out);
    return r;
  }

  friend LScalar operator*(const Rational& k, const LScalar& z) {
    LScalar r = z;
    for (auto& x : r.c_) x *= k;
    return r;
  }

  /// Multiplication-by-this as a K-linear map on the power basis; column
  /// j holds the coefficients of this * pi^j.
  KMatrix multiplication_matrix() const {
    const std::size_t e = c_.size();
    KMatrix m(e, e);
    for (std::size_t j = 0; j < e; ++j)
      for (std::size_t i = 0; i < e; ++i) {
        if (c_[i] == 0) continue;
        if (i + j >= e)
          m(i + j - e, j) += c_[i] * p_;
        else
          m(i + j, j) += c_[i];
      }
    return m;
  }

  LScalar inv() const {
    if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero in L");
    KVector one(c_.size());
    one[0] = 1;
    LScalar r = *this;
    r.c_ = solve_linear(multiplication_matrix(), one);
    return r;
  }

 private:
  void check_compatible(const LScalar& o) const {
    if (o.p_ != p_ || o.c_.size() != c_.size())
      fail(Errc::DimensionMismatch, "LScalar operands from different extensions");
  }

  KVector c_;
  unsigned long p_;
};

/// v(sum a_i pi^i) = min_i (v_p(a_i) + i/e): the terms have pairwise
/// distinct valuations modulo 1, so the minimum is attained once.
inline ExtRational val_l(const LScalar& z) {
  const std::size_t e = z.degree();
  ExtRational best = ExtRational::pos_inf();
  for (std::size_t i = 0; i < e; ++i) {
    if (z[i] == 0) continue;
    long v = valuation_int(z[i].get_num(), z.prime()) - valuation_int(z[i].get_den(), z.prime());
    ExtRational cand(Rational(v) + make_rational(static_cast<long>(i), static_cast<long>(e)));
    if (cand < best) best = cand;
  }
  return best;
}

/// |z|_L = q^{-v(z)}.
inline LogValue abs_l(const LScalar& z) {
  ExtRational v = val_l(z);
  return v.is_pos_inf() ? LogValue::zero() : LogValue::finite(-v.value());
}

/// Rank over K of the coefficient vectors of the given elements of L.
inline std::size_t k_rank(const std::vector<LScalar>& zs) {
  if (zs.empty()) fail(Errc::InvalidArgument, "k_rank of an empty family");
  std::vector<KVector> rows;
  rows.reserve(zs.size());
  for (const auto& z : zs) rows.push_back(z.coeffs());
  return rank_of(rows);
}

}  // namespace xbar
