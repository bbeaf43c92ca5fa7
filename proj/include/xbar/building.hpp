#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include "xbar/apartment.hpp"
#include "xbar/seminorm.hpp"

namespace xbar {

/// A point of the compactified building, identified with its homothety
/// class of seminorms on V.
class BuildingPoint {
 public:
  explicit BuildingPoint(const DiagonalSeminorm& g) : cls_(g) {}
  explicit BuildingPoint(SeminormClass c) : cls_(std::move(c)) {}

  const SeminormClass& seminorm_class() const { return cls_; }
  const DiagonalSeminorm& representative() const { return cls_.representative(); }
  std::vector<KVector> kernel() const { return cls_.kernel(); }
  bool is_interior() const { return cls_.is_norm(); }
  std::size_t dim() const { return representative().dim(); }

  friend bool operator==(const BuildingPoint& a, const BuildingPoint& b) { return a.cls_ == b.cls_; }

 private:
  SeminormClass cls_;
};

/// (g, x) in G x A-bar.
struct ChartPoint {
  KMatrix g;
  ApartmentPoint x;
};

/// u in U_{a_ij}: identity plus omega at (i, j), so v_j -> v_j + omega v_i.
struct ElementaryUnipotent {
  Root root;
  Rational omega;

  KMatrix matrix(std::size_t n) const {
    KMatrix u = KMatrix::identity(n);
    u(root.i, root.j) = omega;
    return u;
  }
};

/// psi_a(u) = v(omega).
inline ExtRational psi(const ElementaryUnipotent& u, const PrimeContext& ctx) { return val_k(u.omega, ctx); }

/// The point g(phi(x)).
inline BuildingPoint from_chart(const ChartPoint& c, const PrimeContext& ctx) {
  return BuildingPoint(compose_with(phi_from_apartment(c.x, ctx), c.g));
}

inline BuildingPoint act_group(const KMatrix& g, const BuildingPoint& b) {
  return BuildingPoint(compose_with(b.representative(), g));
}

/// (g, x) ~ (h, y). Decided on seminorm classes; phi is injective on the
/// quotient, so this is exactly the chart relation.
inline bool chart_equivalent(const ChartPoint& a, const ChartPoint& b, const PrimeContext& ctx) {
  return from_chart(a, ctx) == from_chart(b, ctx);
}

/// g in P_x, via P_x = Stab(phi(x)).
inline bool in_stabilizer_P_x(const KMatrix& g, const ApartmentPoint& x, const PrimeContext& ctx) {
  DiagonalSeminorm base = phi_from_apartment(x, ctx);
  return class_equals(compose_with(base, g), base);
}

/// u in U_{a, f_Sigma(a)}. U_{a,+inf} = {1}, U_{a,-inf} = U_a.
inline bool in_U_a_sigma(const ElementaryUnipotent& u, const std::vector<ApartmentPoint>& sigma,
                         const PrimeContext& ctx) {
  ExtRational f = f_sigma(sigma, u.root);
  if (f.is_neg_inf()) return true;
  if (u.omega == 0) return true;
  if (f.is_pos_inf()) return false;
  return psi(u, ctx) >= f;
}

/// m in N_Sigma.
inline bool fixes_pointwise(const MonomialElement& m, const std::vector<ApartmentPoint>& sigma) {
  return std::all_of(sigma.begin(), sigma.end(), [&](const ApartmentPoint& x) { return act_monomial(m, x) == x; });
}

/// Induced matrix on V / V_{n \ I} in the basis {v_i + V_{n \ I} : i in I}.
inline KMatrix sigma_project(const KMatrix& g, const Piece& piece) {
  if (!g.is_square()) fail(Errc::DimensionMismatch, "group element must be square");
  const std::size_t n = g.rows();
  Piece I = normalize_piece(piece, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (piece_contains(I, k)) continue;
    for (auto i : I)
      if (g(i, k) != 0) fail(Errc::SubspaceNotPreserved, "g does not preserve the span of v_k, k outside I");
  }
  KMatrix out(I.size(), I.size());
  for (std::size_t a = 0; a < I.size(); ++a)
    for (std::size_t b = 0; b < I.size(); ++b) out(a, b) = g(I[a], I[b]);
  return out;
}

/// Knobs for sample_P_x_generators. `factors` bounds the number of
/// generators multiplied together, `spread` the extra valuation put on
/// root-group entries beyond the threshold.
struct SamplerBounds {
  std::size_t factors = 4;
  long spread = 2;
};

namespace detail {

inline Rational random_unit(std::mt19937_64& rng, unsigned long p) {
  std::uniform_int_distribution<long> d(1, 9);
  for (;;) {
    long a = d(rng), b = d(rng);
    if (a % static_cast<long>(p) == 0 || b % static_cast<long>(p) == 0) continue;
    Rational r(a, b);
    r.canonicalize();
    return (rng() & 1u) ? r : Rational(-r);
  }
}

// Random element of N_x with integral translation, or identity when the
// drawn permutation of the piece admits none.
inline KMatrix random_fixing_monomial(const ApartmentPoint& x, const PrimeContext& ctx, std::mt19937_64& rng) {
  const std::size_t n = x.n();
  Piece inside = x.piece();
  Piece outside = complement(inside, n);
  Permutation w = identity_permutation(n);
  Piece shuffled_in = inside, shuffled_out = outside;
  std::shuffle(shuffled_in.begin(), shuffled_in.end(), rng);
  std::shuffle(shuffled_out.begin(), shuffled_out.end(), rng);
  for (std::size_t k = 0; k < inside.size(); ++k) w[inside[k]] = shuffled_in[k];
  for (std::size_t k = 0; k < outside.size(); ++k) w[outside[k]] = shuffled_out[k];

  // Fixing x forces trans_{w(i)} = x_{w(i)} - x_i + c on the piece.
  KVector t(n);
  const std::size_t i0 = inside.front();
  Rational c = -(x.coords()[w[i0]] - x.coords()[i0]);
  c = c - Rational(floor(c));
  bool ok = true;
  for (auto i : inside) {
    t[w[i]] = x.coords()[w[i]] - x.coords()[i] + c;
    if (!is_integer(t[w[i]])) ok = false;
  }
  if (!ok) {
    w = identity_permutation(n);
    std::fill(t.begin(), t.end(), Rational(0));
  }
  std::uniform_int_distribution<long> shift(-2, 2);
  for (auto i : outside) t[i] = shift(rng);
  KMatrix m = to_matrix(MonomialElement(w, t), ctx);
  // Unit rescalings leave nu unchanged.
  for (std::size_t col = 0; col < n; ++col)
    for (std::size_t row = 0; row < n; ++row)
      if (m(row, col) != 0) m(row, col) *= random_unit(rng, ctx.p());
  return m;
}

inline KMatrix random_root_element(const ApartmentPoint& x, const PrimeContext& ctx, const SamplerBounds& bounds,
                                   std::mt19937_64& rng) {
  const std::size_t n = x.n();
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> extra(0, std::max(0L, bounds.spread));
  for (;;) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    Root a(i, j);
    ExtRational f = f_point(x, a);
    if (f.is_pos_inf()) continue;
    long base = f.is_neg_inf() ? -bounds.spread : ceil(f.value()).get_si();
    Rational omega = prime_power(ctx, base + extra(rng)) * random_unit(rng, ctx.p());
    return ElementaryUnipotent{a, omega}.matrix(n);
  }
}

}  // namespace detail

/// Random elements of P_x = U_x N_x: products of root-group elements
/// u(a, omega) with v(omega) >= f_x(a) and monomials fixing x.
inline std::vector<KMatrix> sample_P_x_generators(const ApartmentPoint& x, const PrimeContext& ctx, std::size_t count,
                                                  const SamplerBounds& bounds, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<KMatrix> out;
  out.reserve(count);
  std::uniform_int_distribution<std::size_t> nf(0, bounds.factors);
  for (std::size_t s = 0; s < count; ++s) {
    KMatrix g = KMatrix::identity(x.n());
    const std::size_t factors = bounds.factors == 0 ? 0 : std::max<std::size_t>(1, nf(rng));
    for (std::size_t k = 0; k < factors; ++k) {
      if (rng() % 4 == 0)
        g = g * detail::random_fixing_monomial(x, ctx, rng);
      else
        g = g * detail::random_root_element(x, ctx, bounds, rng);
    }
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace xbar
