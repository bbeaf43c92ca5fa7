#pragma once

#include <cstddef>
#include <map>
#include <numeric>
#include <vector>

#include "xbar/building.hpp"
#include "xbar/seminorm.hpp"

namespace xbar {

/// Exponent multi-index nu = (nu_1, ..., nu_n).
using MultiIndex = std::vector<unsigned>;

inline unsigned total_degree(const MultiIndex& nu) { return std::accumulate(nu.begin(), nu.end(), 0u); }

/// Element of Sym V = K[v_1, ..., v_n]: a sparse map nu -> a_nu without
/// zero coefficients.
class Polynomial {
 public:
  explicit Polynomial(std::size_t vars) : vars_(vars) {}

  static Polynomial constant(std::size_t vars, const Rational& c) {
    Polynomial f(vars);
    f.add_term(MultiIndex(vars, 0), c);
    return f;
  }

  /// The linear form sum_i c_i v_i.
  static Polynomial linear(const KVector& c) {
    Polynomial f(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      MultiIndex nu(c.size(), 0);
      nu[i] = 1;
      f.add_term(nu, c[i]);
    }
    return f;
  }

  std::size_t vars() const { return vars_; }
  const std::map<MultiIndex, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [nu, c] : terms_) d = std::max(d, total_degree(nu));
    return d;
  }

  void add_term(const MultiIndex& nu, const Rational& c) {
    if (nu.size() != vars_) fail(Errc::DimensionMismatch, "multi-index length differs from variable count");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(nu, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial r = a;
    for (const auto& [nu, c] : b.terms_) r.add_term(nu, c);
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial r(a.vars_);
    MultiIndex nu(a.vars_);
    for (const auto& [na, ca] : a.terms_)
      for (const auto& [nb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.vars_; ++i) nu[i] = na[i] + nb[i];
        r.add_term(nu, ca * cb);
      }
    return r;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void check(const Polynomial& o) const {
    if (o.vars_ != vars_) fail(Errc::DimensionMismatch, "polynomials in different variable counts");
  }

  std::size_t vars_;
  std::map<MultiIndex, Rational> terms_;
};

/// Degree bound for substitution into new coordinates.
inline constexpr unsigned kDefaultDegreeCap = 8;

/// Rewrites f(v_1..v_n) in the coordinates of the basis w = columns of
/// `basis`: v_i = sum_k (basis^{-1})_{ki} w_k.
inline Polynomial change_coordinates(const Polynomial& f, const KMatrix& basis_inverse,
                                     unsigned degree_cap = kDefaultDegreeCap) {
  const std::size_t n = f.vars();
  if (f.degree() > degree_cap) fail(Errc::DegreeCap, "polynomial degree exceeds the cap");
  std::vector<std::vector<Polynomial>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    KVector col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = basis_inverse(k, i);
    powers[i].push_back(Polynomial::constant(n, 1));
    powers[i].push_back(Polynomial::linear(col));
  }
  auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
    while (powers[i].size() <= k) powers[i].push_back(powers[i].back() * powers[i][1]);
    return powers[i][k];
  };
  Polynomial out(n);
  for (const auto& [nu, c] : f.terms()) {
    Polynomial term = Polynomial::constant(n, c);
    for (std::size_t i = 0; i < n; ++i)
      if (nu[i] > 0) term = term * power(i, nu[i]);
    out = out + term;
  }
  return out;
}

/// A monomial point of P(V)^an: alpha(sum a_nu w^nu) = max |a_nu| prod r_k^{nu_k}
/// for a basis w (columns of `basis`) and radii r.
class MonomialPoint {
 public:
  MonomialPoint(unsigned long p, KMatrix basis, std::vector<LogValue> radii) : radius_form_(p, std::move(basis), std::move(radii)) {}
  MonomialPoint(const PrimeContext& ctx, KMatrix basis, std::vector<LogValue> radii)
      : MonomialPoint(ctx.p(), std::move(basis), std::move(radii)) {}

  static MonomialPoint gauss_point(const PrimeContext& ctx) {
    return MonomialPoint(ctx, KMatrix::identity(ctx.n()), std::vector<LogValue>(ctx.n(), LogValue::one()));
  }

  unsigned long prime() const { return radius_form_.prime(); }
  std::size_t dim() const { return radius_form_.dim(); }
  const KMatrix& basis() const { return radius_form_.basis(); }
  const std::vector<LogValue>& radii() const { return radius_form_.values(); }
  /// The degree-one part: the diagonal seminorm with the same basis and radii.
  const DiagonalSeminorm& radius_seminorm() const { return radius_form_; }

  /// g.P: the basis moves by g.
  MonomialPoint transformed(const KMatrix& g) const {
    DiagonalSeminorm moved = compose_with(radius_form_, g);
    return MonomialPoint(moved.prime(), moved.basis(), moved.values());
  }

 private:
  DiagonalSeminorm radius_form_;
};

inline LogValue alpha_evaluate(const MonomialPoint& P, const Polynomial& f, unsigned degree_cap = kDefaultDegreeCap) {
  if (f.vars() != P.dim()) fail(Errc::DimensionMismatch, "polynomial and point dimensions differ");
  Polynomial g = change_coordinates(f, P.radius_seminorm().basis_inverse(), degree_cap);
  LogValue best = LogValue::zero();
  for (const auto& [nu, c] : g.terms()) {
    LogValue t = abs_p(c, P.prime());
    for (std::size_t k = 0; k < nu.size(); ++k) t = t * P.radii()[k].pow(nu[k]);
    best = max(best, t);
  }
  return best;
}

/// alpha ~ beta iff alpha(f) = c^d beta(f) in each degree d. Both are
/// determined by their degree-one parts, so this compares those classes.
inline bool monomial_class_equals(const MonomialPoint& a, const MonomialPoint& b) {
  return class_equals(a.radius_seminorm(), b.radius_seminorm());
}

/// r: restriction to degree one.
inline BuildingPoint r_reduce_monomial(const MonomialPoint& P) { return BuildingPoint(P.radius_seminorm()); }

/// j: the multiplicative extension of a diagonal representative.
inline MonomialPoint j_section(const BuildingPoint& b) {
  const DiagonalSeminorm& g = b.representative();
  return MonomialPoint(g.prime(), g.basis(), g.values());
}

/// A point of P(V) over L: the line through the functional z in (V ⊗ L)^*.
class LFunctional {
 public:
  LFunctional(std::vector<LScalar> z, const PrimeContext& ctx) : z_(std::move(z)), ctx_(ctx) {
    if (z_.size() != ctx_.n()) fail(Errc::DimensionMismatch, "functional needs n entries");
    for (const auto& zi : z_)
      if (zi.degree() != ctx_.e() || zi.prime() != ctx_.p())
        fail(Errc::DimensionMismatch, "functional entries live in a different extension");
    if (std::all_of(z_.begin(), z_.end(), [](const LScalar& s) { return s.is_zero(); }))
      fail(Errc::ZeroFunctional, "functional is zero");
  }

  const std::vector<LScalar>& entries() const { return z_; }
  const PrimeContext& context() const { return ctx_; }

 private:
  std::vector<LScalar> z_;
  PrimeContext ctx_;
};

/// r of a K-rational point z: the class of v -> |z(v)|, a boundary point
/// with one-dimensional quotient.
inline BuildingPoint r_reduce_rational(const KVector& z, const PrimeContext& ctx) {
  if (is_zero(z)) fail(Errc::ZeroFunctional, "functional is zero");
  PrimeContext k_ctx(ctx.p(), z.size(), 1);
  std::vector<LScalar> entries;
  for (const auto& c : z) entries.push_back(LScalar::from_k(c, k_ctx));
  return BuildingPoint(pullback_from_functional(entries, k_ctx));
}

inline BuildingPoint r_reduce_L_point(const LFunctional& z) {
  return BuildingPoint(pullback_from_functional(z.entries(), z.context()));
}

/// z in Omega: no K-rational hyperplane contains the point, i.e. the
/// entries of z are K-linearly independent in L.
inline bool in_omega(const LFunctional& z) { return k_rank(z.entries()) == z.entries().size(); }

inline bool check_multiplicative(const MonomialPoint& P, const Polynomial& f, const Polynomial& g,
                                 unsigned degree_cap = kDefaultDegreeCap) {
  return alpha_evaluate(P, f * g, degree_cap) == alpha_evaluate(P, f, degree_cap) * alpha_evaluate(P, g, degree_cap);
}

}  // namespace xbar
