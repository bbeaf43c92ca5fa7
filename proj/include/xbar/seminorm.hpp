#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "xbar/apartment.hpp"
#include "xbar/arith.hpp"

namespace xbar {

/// A seminorm on K^n that is canonical with respect to the columns
/// w_1..w_n of `basis`:
///     gamma(sum lambda_i w_i) = max_i |lambda_i| * values[i].
/// Zero values mark basis vectors in the kernel.
class DiagonalSeminorm {
 public:
  DiagonalSeminorm(const PrimeContext& ctx, KMatrix basis, std::vector<LogValue> values)
      : DiagonalSeminorm(ctx.p(), std::move(basis), std::move(values)) {}

  DiagonalSeminorm(unsigned long p, KMatrix basis, std::vector<LogValue> values)
      : p_(p), basis_(std::move(basis)), values_(std::move(values)) {
    if (!basis_.is_square() || basis_.rows() != values_.size() || values_.empty())
      fail(Errc::DimensionMismatch, "seminorm basis and values disagree in size");
    if (std::all_of(values_.begin(), values_.end(), [](const LogValue& v) { return v.is_zero(); }))
      fail(Errc::NotASeminorm, "a seminorm is not identically zero");
    inverse_ = inverse(basis_);
  }

  /// Canonical with respect to the standard basis.
  static DiagonalSeminorm standard(const PrimeContext& ctx, std::vector<LogValue> values) {
    const std::size_t n = values.size();
    return DiagonalSeminorm(ctx.p(), KMatrix::identity(n), std::move(values));
  }

  unsigned long prime() const { return p_; }
  std::size_t dim() const { return values_.size(); }
  const KMatrix& basis() const { return basis_; }
  const KMatrix& basis_inverse() const { return inverse_; }
  const std::vector<LogValue>& values() const { return values_; }

  bool is_norm() const {
    return std::none_of(values_.begin(), values_.end(), [](const LogValue& v) { return v.is_zero(); });
  }

  /// Coordinates of v in the basis w.
  KVector coordinates(const KVector& v) const { return inverse_ * v; }

  std::vector<std::size_t> kernel_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (values_[i].is_zero()) out.push_back(i);
    return out;
  }

  /// This seminorm multiplied by q^shift.
  DiagonalSeminorm scaled(const Rational& shift) const {
    std::vector<LogValue> v = values_;
    for (auto& x : v) x = x.scaled(shift);
    return DiagonalSeminorm(p_, basis_, std::move(v));
  }

 private:
  unsigned long p_;
  KMatrix basis_;
  std::vector<LogValue> values_;
  KMatrix inverse_;
};

inline LogValue abs_p(const Rational& c, unsigned long p) {
  if (c == 0) return LogValue::zero();
  return LogValue::finite(Rational(valuation_int(c.get_den(), p) - valuation_int(c.get_num(), p)));
}

/// max_i |lambda_i| gamma(w_i) for the coordinates lambda of v.
inline LogValue evaluate_coordinates(const DiagonalSeminorm& g, const KVector& lambda) {
  LogValue best = LogValue::zero();
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] == 0 || g.values()[i].is_zero()) continue;
    best = max(best, abs_p(lambda[i], g.prime()) * g.values()[i]);
  }
  return best;
}

inline LogValue evaluate(const DiagonalSeminorm& g, const KVector& v) {
  if (v.size() != g.dim()) fail(Errc::DimensionMismatch, "vector length differs from seminorm dimension");
  return evaluate_coordinates(g, g.coordinates(v));
}

/// Basis of ker(gamma) in reduced echelon form.
inline std::vector<KVector> kernel_of(const DiagonalSeminorm& g) {
  std::vector<KVector> cols;
  for (auto i : g.kernel_columns()) cols.push_back(g.basis().column(i));
  return echelon_basis(cols, g.dim());
}

/// g(gamma) = gamma o g^{-1}: the basis moves by g, the values stay.
inline DiagonalSeminorm compose_with(const DiagonalSeminorm& gamma, const KMatrix& g) {
  if (!g.is_square() || g.rows() != gamma.dim()) fail(Errc::DimensionMismatch, "group element has the wrong size");
  if (!is_invertible(g)) fail(Errc::SingularMatrix, "group element is singular");
  return DiagonalSeminorm(gamma.prime(), g * gamma.basis(), gamma.values());
}

/// phi(x): gamma(sum lambda_i v_i) = sup_{i in I} |lambda_i| q^{-x_i}.
inline DiagonalSeminorm phi_from_apartment(const ApartmentPoint& x, const PrimeContext& ctx) {
  std::vector<LogValue> values(x.n(), LogValue::zero());
  for (auto i : x.piece()) values[i] = LogValue::finite(-x.coords()[i]);
  return DiagonalSeminorm(ctx.p(), KMatrix::identity(x.n()), std::move(values));
}

/// gamma1 = gamma2 as functions. If beta is canonical for (w_i) and
/// alpha(w_i) = beta(w_i) for all i, the ultrametric inequality gives
/// alpha <= beta; checking both bases gives equality.
inline bool equals(const DiagonalSeminorm& a, const DiagonalSeminorm& b) {
  if (a.dim() != b.dim() || a.prime() != b.prime()) return false;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    if (evaluate(b, a.basis().column(i)) != a.values()[i]) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (evaluate(a, b.basis().column(i)) != b.values()[i]) return false;
  return true;
}

/// gamma1 = c * gamma2 for some c > 0.
inline bool class_equals(const DiagonalSeminorm& a, const DiagonalSeminorm& b) {
  if (a.dim() != b.dim() || a.prime() != b.prime()) return false;
  if (kernel_of(a) != kernel_of(b)) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.values()[i].is_zero()) continue;
    KVector w = a.basis().column(i);
    LogValue bw = evaluate(b, w);
    if (bw.is_zero()) return false;
    return equals(a, b.scaled(a.values()[i].log() - bw.log()));
  }
  return false;
}

/// phi^{-1} for a seminorm canonical with respect to the standard basis
/// (whatever basis it is presented in).
inline ApartmentPoint phi_inverse(const DiagonalSeminorm& g) {
  const std::size_t n = g.dim();
  std::vector<LogValue> at_std(n);
  for (std::size_t i = 0; i < n; ++i) at_std[i] = evaluate(g, unit_vector(n, i));
  if (std::all_of(at_std.begin(), at_std.end(), [](const LogValue& v) { return v.is_zero(); }))
    fail(Errc::NotCanonicalBasis, "seminorm is not canonical for the standard basis");
  DiagonalSeminorm candidate(g.prime(), KMatrix::identity(n), at_std);
  if (!equals(candidate, g)) fail(Errc::NotCanonicalBasis, "seminorm is not canonical for the standard basis");
  Piece piece;
  KVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (at_std[i].is_zero()) continue;
    piece.push_back(i);
    x[i] = -at_std[i].log();
  }
  return ApartmentPoint(n, std::move(piece), std::move(x));
}

/// A homothety class of seminorms, held by a representative in class
/// gauge: non-kernel columns first, sorted by decreasing value (stable),
/// scaled so the first value is q^0; kernel columns replaced by the
/// reduced echelon basis of the kernel. The representative is not unique
/// (bases are not); compare classes with class_equals.
class SeminormClass {
 public:
  explicit SeminormClass(const DiagonalSeminorm& g) : rep_(gauge(g)) {}

  const DiagonalSeminorm& representative() const { return rep_; }
  std::vector<KVector> kernel() const { return kernel_of(rep_); }
  bool is_norm() const { return rep_.is_norm(); }

  friend bool operator==(const SeminormClass& a, const SeminormClass& b) {
    return class_equals(a.rep_, b.rep_);
  }

 private:
  static DiagonalSeminorm gauge(const DiagonalSeminorm& g) {
    const std::size_t n = g.dim();
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < n; ++i)
      if (!g.values()[i].is_zero()) live.push_back(i);
    std::stable_sort(live.begin(), live.end(),
                     [&](std::size_t a, std::size_t b) { return g.values()[b] < g.values()[a]; });
    std::vector<KVector> cols;
    std::vector<LogValue> values;
    const Rational shift = -g.values()[live.front()].log();
    for (auto i : live) {
      cols.push_back(g.basis().column(i));
      values.push_back(g.values()[i].scaled(shift));
    }
    for (auto& k : kernel_of(g)) {
      cols.push_back(std::move(k));
      values.push_back(LogValue::zero());
    }
    return DiagonalSeminorm(g.prime(), KMatrix::from_columns(cols, n), std::move(values));
  }

  DiagonalSeminorm rep_;
};

inline bool class_equals(const SeminormClass& a, const SeminormClass& b) { return a == b; }

namespace detail {

// Weighted norm max_i |c_i| * w_i of a coordinate row, and a coordinate
// attaining it (first on ties).
inline std::pair<LogValue, std::size_t> dominant(const KVector& c, const std::vector<LogValue>& w,
                                                 unsigned long p) {
  LogValue best = LogValue::zero();
  std::size_t arg = c.size();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    LogValue t = abs_p(c[i], p) * w[i];
    if (arg == c.size() || best < t) {
      best = t;
      arg = i;
    }
  }
  return {best, arg};
}

struct Reduction {
  std::vector<KVector> rows;       // reduced coordinate rows
  KMatrix transform;               // rows = transform * input rows
  std::vector<LogValue> norms;     // weighted norm of each reduced row
};

// Ultrametric reduced echelon form: each row gets a dominant coordinate as
// pivot, and that coordinate is cleared from every other row. Clearing
// with a row whose pivot dominates never raises another row above its own
// pivot entry, so earlier pivots stay dominant and the result is
// orthogonal: the pivot coordinate of sum lambda_k b_k is lambda_k times
// the pivot entry of b_k.
inline Reduction reduce_ultrametric(std::vector<KVector> rows, const std::vector<LogValue>& weights,
                                    unsigned long p) {
  const std::size_t m = rows.size();
  KMatrix t = KMatrix::identity(m);
  std::vector<std::size_t> pivots;
  for (std::size_t k = 0; k < m; ++k) {
    auto [norm, piv] = dominant(rows[k], weights, p);
    if (piv == rows[k].size() || norm.is_zero())
      fail(Errc::DependentInput, "input vectors are linearly dependent");
    for (std::size_t r = 0; r < m; ++r) {
      if (r == k || rows[r][piv] == 0) continue;
      Rational f = rows[r][piv] / rows[k][piv];
      for (std::size_t c = 0; c < rows[r].size(); ++c) rows[r][c] -= f * rows[k][c];
      for (std::size_t c = 0; c < m; ++c) t(r, c) -= f * t(k, c);
    }
    pivots.push_back(piv);
  }
  Reduction out{std::move(rows), std::move(t), {}};
  for (const auto& r : out.rows) out.norms.push_back(dominant(r, weights, p).first);
  return out;
}

inline Reduction orthogonalize_rows(const std::vector<KVector>& rows, const std::vector<LogValue>& weights,
                                    unsigned long p) {
  Reduction red = reduce_ultrametric(rows, weights, p);
  const std::size_t m = rows.size();
  if (m < 2) {
    red.rows = rows;
    red.transform = KMatrix::identity(m);
    red.norms.clear();
    for (const auto& r : rows) red.norms.push_back(dominant(r, weights, p).first);
    return red;
  }
  // Keep the input when it is already orthogonal: compare, on the span, the
  // seminorm canonical for the input with the one canonical for the reduced
  // rows (coordinates taken in the reduced basis).
  KMatrix back = inverse(red.transform);  // input = back * reduced
  std::vector<LogValue> input_norms;
  for (const auto& r : rows) input_norms.push_back(dominant(r, weights, p).first);
  DiagonalSeminorm reduced_form(p, KMatrix::identity(m), red.norms);
  DiagonalSeminorm input_form(p, back.transpose(), input_norms);
  if (equals(reduced_form, input_form)) {
    red.rows = rows;
    red.transform = KMatrix::identity(m);
    red.norms = std::move(input_norms);
  }
  return red;
}

}  // namespace detail

/// A basis of span(us) with respect to which the restriction of the
/// ambient norm is canonical. An already-canonical family is returned
/// unchanged.
inline std::vector<KVector> orthogonalize(const std::vector<KVector>& us, const DiagonalSeminorm& ambient) {
  if (!ambient.is_norm()) fail(Errc::NotANorm, "ambient seminorm must be a norm");
  if (us.empty()) return {};
  if (us.size() > ambient.dim()) fail(Errc::DependentInput, "more vectors than the dimension");
  std::vector<KVector> rows;
  for (const auto& u : us) {
    if (u.size() != ambient.dim()) fail(Errc::DimensionMismatch, "vector length differs from ambient dimension");
    rows.push_back(ambient.coordinates(u));
  }
  if (rank_of(rows) < rows.size()) fail(Errc::DependentInput, "input vectors are linearly dependent");
  detail::Reduction red = detail::orthogonalize_rows(rows, ambient.values(), ambient.prime());
  std::vector<KVector> out;
  out.reserve(us.size());
  for (const auto& r : red.rows) out.push_back(ambient.basis() * r);
  return out;
}

/// The norm |.|_L on L = K^e in the power basis: |pi^k| = q^{-k/e}.
inline DiagonalSeminorm power_basis_norm(const PrimeContext& ctx) {
  const std::size_t e = ctx.e();
  std::vector<LogValue> v;
  for (std::size_t k = 0; k < e; ++k)
    v.push_back(LogValue::finite(-make_rational(static_cast<long>(k), static_cast<long>(e))));
  return DiagonalSeminorm(ctx.p(), KMatrix::identity(e), std::move(v));
}

/// Coefficient matrix (e x n) of the K-linear map v -> sum_i z_i v^{(i)}.
inline KMatrix functional_matrix(const std::vector<LScalar>& z, const PrimeContext& ctx) {
  KMatrix m(ctx.e(), z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i].degree() != ctx.e()) fail(Errc::DimensionMismatch, "functional entry has the wrong degree");
    for (std::size_t k = 0; k < ctx.e(); ++k) m(k, i) = z[i][k];
  }
  return m;
}

/// Direct evaluation z(v) = sum_i z_i v^{(i)} in L.
inline LScalar apply_functional(const std::vector<LScalar>& z, const KVector& v, const PrimeContext& ctx) {
  if (z.size() != v.size()) fail(Errc::DimensionMismatch, "functional and vector lengths differ");
  LScalar acc(KVector(ctx.e()), ctx);
  for (std::size_t i = 0; i < z.size(); ++i)
    if (v[i] != 0) acc = acc + v[i] * z[i];
  return acc;
}

/// Diagonal form of v -> |z(v)|_L.
inline DiagonalSeminorm pullback_from_functional(const std::vector<LScalar>& z, const PrimeContext& ctx) {
  const std::size_t n = z.size();
  if (n == 0) fail(Errc::ZeroFunctional, "empty functional");
  KMatrix zm = functional_matrix(z, ctx);
  RowEchelon ech = rref(zm);
  if (ech.rank() == 0) fail(Errc::ZeroFunctional, "functional is zero");
  std::vector<KVector> images;
  for (auto c : ech.pivots) images.push_back(zm.column(c));
  DiagonalSeminorm lnorm = power_basis_norm(ctx);
  detail::Reduction red = detail::orthogonalize_rows(images, lnorm.values(), ctx.p());

  std::vector<KVector> cols;
  std::vector<LogValue> values;
  for (std::size_t k = 0; k < images.size(); ++k) {
    KVector y(n);
    for (std::size_t l = 0; l < images.size(); ++l) y[ech.pivots[l]] += red.transform(k, l);
    cols.push_back(std::move(y));
    values.push_back(red.norms[k]);
  }
  for (auto& k : nullspace(zm)) {
    cols.push_back(std::move(k));
    values.push_back(LogValue::zero());
  }
  return DiagonalSeminorm(ctx.p(), KMatrix::from_columns(cols, n), std::move(values));
}

/// Tight constants (s, t) with gamma1 <= q^s gamma2 and gamma2 <= q^t gamma1.
inline std::pair<Rational, Rational> distance_constants(const DiagonalSeminorm& a, const DiagonalSeminorm& b) {
  if (a.dim() != b.dim()) fail(Errc::DimensionMismatch, "seminorm dimensions differ");
  if (kernel_of(a) != kernel_of(b)) fail(Errc::KernelMismatch, "seminorms have different kernels");
  auto one_side = [](const DiagonalSeminorm& num, const DiagonalSeminorm& den) {
    bool have = false;
    Rational best;
    for (std::size_t i = 0; i < den.dim(); ++i) {
      if (den.values()[i].is_zero()) continue;
      Rational r = evaluate(num, den.basis().column(i)).log() - den.values()[i].log();
      if (!have || r > best) best = r;
      have = true;
    }
    return best;
  };
  return {one_side(a, b), one_side(b, a)};
}

}  // namespace xbar
