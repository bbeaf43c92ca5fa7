#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "xbar/arith.hpp"
#include "xbar/fourier_motzkin.hpp"

namespace xbar {

/// Nonempty sorted subset of {0, ..., n-1} (zero-based throughout the
/// library; documents use one-based indices).
using Piece = std::vector<std::size_t>;

inline Piece full_piece(std::size_t n) {
  Piece p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

inline bool piece_contains(const Piece& piece, std::size_t i) {
  return std::binary_search(piece.begin(), piece.end(), i);
}

inline bool is_subpiece(const Piece& sub, const Piece& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

inline Piece complement(const Piece& piece, std::size_t n) {
  Piece out;
  for (std::size_t i = 0; i < n; ++i)
    if (!piece_contains(piece, i)) out.push_back(i);
  return out;
}

inline Piece normalize_piece(Piece piece, std::size_t n) {
  std::sort(piece.begin(), piece.end());
  piece.erase(std::unique(piece.begin(), piece.end()), piece.end());
  if (piece.empty()) fail(Errc::InvalidArgument, "piece must be nonempty");
  if (piece.back() >= n) fail(Errc::InvalidArgument, "piece index out of range");
  return piece;
}

/// A point x = sum_{i in I} x_i eta_i^I of the piece A_I of the compactified
/// apartment. Coordinates are classes modulo constants; the stored
/// representative has x_{min I} = 0 and zeros off the piece.
class ApartmentPoint {
 public:
  /// `coords` has length n; entries outside the piece are ignored.
  ApartmentPoint(std::size_t n, Piece piece, KVector coords)
      : piece_(normalize_piece(std::move(piece), n)), x_(std::move(coords)) {
    if (x_.size() != n) fail(Errc::DimensionMismatch, "apartment point needs n coordinates");
    if (n < 2) fail(Errc::InvalidArgument, "apartment dimension must be at least 2");
    regauge();
  }

  static ApartmentPoint interior(KVector coords) {
    const std::size_t n = coords.size();
    return ApartmentPoint(n, full_piece(n), std::move(coords));
  }

  /// `values[k]` is the coordinate at piece[k].
  static ApartmentPoint on_piece(std::size_t n, Piece piece, const KVector& values) {
    Piece sorted = normalize_piece(piece, n);
    if (sorted.size() != piece.size() || values.size() != piece.size())
      fail(Errc::DimensionMismatch, "one value per piece index required");
    KVector x(n);
    for (std::size_t k = 0; k < piece.size(); ++k) x[piece[k]] = values[k];
    return ApartmentPoint(n, std::move(sorted), std::move(x));
  }

  std::size_t n() const { return x_.size(); }
  const Piece& piece() const { return piece_; }
  bool contains(std::size_t i) const { return piece_contains(piece_, i); }
  bool is_interior() const { return piece_.size() == x_.size(); }

  const Rational& coord(std::size_t i) const {
    if (!contains(i)) fail(Errc::IndexOutsidePiece, "index " + std::to_string(i + 1) + " is not in the piece");
    return x_[i];
  }
  /// Full-length gauged vector; zero off the piece.
  const KVector& coords() const { return x_; }

  /// Coordinates on the piece, in piece order.
  KVector piece_values() const {
    KVector v;
    v.reserve(piece_.size());
    for (auto i : piece_) v.push_back(x_[i]);
    return v;
  }

  friend bool operator==(const ApartmentPoint&, const ApartmentPoint&) = default;

 private:
  void regauge() {
    Rational base = x_[piece_.front()];
    for (std::size_t i = 0; i < x_.size(); ++i) x_[i] = contains(i) ? Rational(x_[i] - base) : Rational(0);
  }

  Piece piece_;
  KVector x_;
};

/// The root a_ij = chi_i / chi_j.
struct Root {
  std::size_t i;
  std::size_t j;

  Root(std::size_t i_, std::size_t j_) : i(i_), j(j_) {
    if (i == j) fail(Errc::InvalidArgument, "a root needs distinct indices");
  }
  friend bool operator==(const Root&, const Root&) = default;
};

/// a_ij(x) = x_i - x_j.
inline Rational root_eval(const Root& a, const ApartmentPoint& x) {
  return x.coord(a.i) - x.coord(a.j);
}

/// A permutation of {0..n-1}: perm[i] = w(i).
using Permutation = std::vector<std::size_t>;

inline Permutation identity_permutation(std::size_t n) {
  Permutation w(n);
  std::iota(w.begin(), w.end(), std::size_t{0});
  return w;
}

inline void check_permutation(const Permutation& w) {
  std::vector<bool> seen(w.size(), false);
  for (auto image : w) {
    if (image >= w.size() || seen[image]) fail(Errc::InvalidArgument, "not a permutation");
    seen[image] = true;
  }
}

inline Permutation inverse_permutation(const Permutation& w) {
  Permutation inv(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) inv[w[i]] = i;
  return inv;
}

/// Element t*w of N = T x| W, recorded as the permutation w and the class
/// of nu(t) modulo constants (gauge trans[0] = 0). As a matrix it sends
/// e_i to d_{w(i)} e_{w(i)} with -v(d_j) = trans[j].
class MonomialElement {
 public:
  MonomialElement(Permutation perm, KVector trans) : perm_(std::move(perm)), trans_(std::move(trans)) {
    check_permutation(perm_);
    if (trans_.size() != perm_.size()) fail(Errc::DimensionMismatch, "translation length mismatch");
    if (perm_.size() < 2) fail(Errc::InvalidArgument, "monomial dimension must be at least 2");
    Rational base = trans_[0];
    for (auto& t : trans_) t -= base;
  }

  static MonomialElement identity(std::size_t n) {
    return MonomialElement(identity_permutation(n), KVector(n));
  }
  static MonomialElement permutation(Permutation w) {
    const std::size_t n = w.size();
    return MonomialElement(std::move(w), KVector(n));
  }
  static MonomialElement translation(KVector t) {
    const std::size_t n = t.size();
    return MonomialElement(identity_permutation(n), std::move(t));
  }

  std::size_t n() const { return perm_.size(); }
  const Permutation& perm() const { return perm_; }
  const KVector& trans() const { return trans_; }

  /// (w, t)(w', t') = (w w', t + w.t'), (w.t')_j = t'_{w^{-1}(j)}.
  friend MonomialElement operator*(const MonomialElement& a, const MonomialElement& b) {
    if (a.n() != b.n()) fail(Errc::DimensionMismatch, "monomial dimension mismatch");
    const std::size_t n = a.n();
    Permutation w(n);
    KVector t = a.trans_;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = a.perm_[b.perm_[i]];
      t[a.perm_[i]] += b.trans_[i];
    }
    return MonomialElement(std::move(w), std::move(t));
  }

  MonomialElement inverse() const {
    const std::size_t n = this->n();
    Permutation winv = inverse_permutation(perm_);
    KVector t(n);
    // (w, t)^{-1} = (w^{-1}, -w^{-1}.t)
    for (std::size_t j = 0; j < n; ++j) t[winv[j]] = -trans_[j];
    return MonomialElement(std::move(winv), std::move(t));
  }

  friend bool operator==(const MonomialElement&, const MonomialElement&) = default;

 private:
  Permutation perm_;
  KVector trans_;
};

/// nu of the diagonal matrix diag(d): translation by -v(d_1) eta_1 - ... .
inline MonomialElement nu_translation(const KVector& diag, const PrimeContext& ctx) {
  KVector t(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] == 0) fail(Errc::ZeroDiagonal, "diagonal entry " + std::to_string(i + 1) + " is zero");
    t[i] = -val_k_int(diag[i], ctx);
  }
  return MonomialElement::translation(std::move(t));
}

/// Matrix representative D P_w with d_j = p^{-trans_j}. K = Q has value
/// group Z, so the translation must be integral.
inline KMatrix to_matrix(const MonomialElement& m, const PrimeContext& ctx) {
  const std::size_t n = m.n();
  KMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t wi = m.perm()[i];
    const Rational& t = m.trans()[wi];
    if (!is_integer(t))
      fail(Errc::NonIntegralTranslation, "translation " + to_string(t) + " has no matrix over K");
    g(wi, i) = prime_power(ctx, -t.get_num().get_si());
  }
  return g;
}

/// Recovers (w, nu(t)) from a monomial matrix.
inline MonomialElement monomial_from_matrix(const KMatrix& g, const PrimeContext& ctx) {
  if (!g.is_square()) fail(Errc::DimensionMismatch, "monomial matrix must be square");
  const std::size_t n = g.rows();
  Permutation w(n);
  KVector t(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t found = n;
    for (std::size_t r = 0; r < n; ++r) {
      if (g(r, i) == 0) continue;
      if (found != n) fail(Errc::NotMonomial, "column has more than one nonzero entry");
      found = r;
    }
    if (found == n) fail(Errc::NotMonomial, "zero column");
    w[i] = found;
    t[found] = -val_k_int(g(found, i), ctx);
  }
  check_permutation(w);
  return MonomialElement(std::move(w), std::move(t));
}

/// nu(m) on A-bar: A_I -> A_{w(I)}, x'_{w(i)} = x_i + trans_{w(i)}.
inline ApartmentPoint act_monomial(const MonomialElement& m, const ApartmentPoint& x) {
  if (m.n() != x.n()) fail(Errc::DimensionMismatch, "monomial and point dimensions differ");
  const std::size_t n = x.n();
  Piece image;
  KVector y(n);
  for (auto i : x.piece()) {
    const std::size_t wi = m.perm()[i];
    image.push_back(wi);
    y[wi] = x.coords()[i] + m.trans()[wi];
  }
  return ApartmentPoint(n, std::move(image), std::move(y));
}

/// s_I restricted to A_J: forget the coordinates outside I.
inline ApartmentPoint s_project(const ApartmentPoint& x, const Piece& sub) {
  Piece target = normalize_piece(sub, x.n());
  if (!is_subpiece(target, x.piece())) fail(Errc::NotSubPiece, "target piece is not contained in the point's piece");
  return ApartmentPoint(x.n(), std::move(target), x.coords());
}

/// Comparison with the dual construction: eta'_i corresponds to -eta_i.
inline ApartmentPoint dual_flip(const ApartmentPoint& x) {
  KVector y = x.coords();
  for (auto& c : y) c = -c;
  return ApartmentPoint(x.n(), x.piece(), std::move(y));
}

/// Limit of the ray x0 + s*d as s -> +inf. The limit piece is argmin(d).
inline ApartmentPoint ray_limit(const ApartmentPoint& x0, const KVector& d) {
  if (!x0.is_interior()) fail(Errc::InvalidArgument, "ray_limit needs an interior base point");
  if (d.size() != x0.n()) fail(Errc::DimensionMismatch, "direction length mismatch");
  const Rational& lo = *std::min_element(d.begin(), d.end());
  Piece piece;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] == lo) piece.push_back(i);
  return ApartmentPoint(x0.n(), std::move(piece), x0.coords());
}

/// Point of the ray x0 + s*d.
inline ApartmentPoint ray_point(const ApartmentPoint& x0, const KVector& d, const Rational& s) {
  KVector y = x0.coords();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * d[i];
  return ApartmentPoint::interior(std::move(y));
}

/// f_x(a_ij): -a(x) when i, j lie in the piece; -inf when i is outside;
/// +inf when i is inside and j outside.
inline ExtRational f_point(const ApartmentPoint& x, const Root& a) {
  if (!x.contains(a.i)) return ExtRational::neg_inf();
  if (!x.contains(a.j)) return ExtRational::pos_inf();
  return ExtRational(x.coords()[a.j] - x.coords()[a.i]);
}

/// f_Sigma(a) = sup_{x in Sigma} f_x(a).
inline ExtRational f_sigma(const std::vector<ApartmentPoint>& sigma, const Root& a) {
  if (sigma.empty()) fail(Errc::InvalidArgument, "Sigma must be nonempty");
  ExtRational best = ExtRational::neg_inf();
  for (const auto& x : sigma) {
    ExtRational f = f_point(x, a);
    if (best < f) best = f;
  }
  return best;
}

/// Open bounded box prod_{i >= 2} (lo_i, hi_i) in the gauge x_1 = 0.
class OpenBox {
 public:
  /// lo and hi cover coordinates 2..n, so both have length n - 1.
  OpenBox(KVector lo, KVector hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size() || lo_.empty()) fail(Errc::DimensionMismatch, "box bounds mismatch");
    for (std::size_t k = 0; k < lo_.size(); ++k)
      if (!(lo_[k] < hi_[k])) fail(Errc::InvalidArgument, "empty box interval");
  }

  /// Box of half-width `radius` around an interior point.
  static OpenBox around(const ApartmentPoint& center, const Rational& radius) {
    if (!center.is_interior()) fail(Errc::InvalidArgument, "box center must be interior");
    KVector lo, hi;
    const Rational& base = center.coords()[0];
    for (std::size_t i = 1; i < center.n(); ++i) {
      lo.push_back(center.coords()[i] - base - radius);
      hi.push_back(center.coords()[i] - base + radius);
    }
    return OpenBox(std::move(lo), std::move(hi));
  }

  std::size_t n() const { return lo_.size() + 1; }
  const KVector& lo() const { return lo_; }
  const KVector& hi() const { return hi_; }

  bool contains(const ApartmentPoint& z) const {
    if (!z.is_interior() || z.n() != n()) return false;
    const Rational& base = z.coords()[0];
    for (std::size_t k = 0; k < lo_.size(); ++k) {
      Rational c = z.coords()[k + 1] - base;
      if (!(lo_[k] < c && c < hi_[k])) return false;
    }
    return true;
  }

  friend bool operator==(const OpenBox&, const OpenBox&) = default;

 private:
  KVector lo_;
  KVector hi_;
};

/// y in Gamma_U^I = (U + Delta_I) ∪ ⋃_{I ⊆ J ⊂ n} s_J(U + Delta_I), where
/// Delta_I is the cone spanned by eta_i for i outside I. Decided as an exact
/// feasibility problem: u in U, delta >= 0 supported off I, a constant c, and
/// u_j + delta_j + c = y_j for all j in the piece of y.
inline bool gamma_membership(const ApartmentPoint& y, const OpenBox& box, const Piece& piece) {
  const std::size_t n = y.n();
  if (box.n() != n) fail(Errc::DimensionMismatch, "box and point dimensions differ");
  Piece I = normalize_piece(piece, n);
  if (I.size() == n) fail(Errc::InvalidArgument, "Gamma_U^I needs a proper subset I");
  if (!is_subpiece(I, y.piece())) return false;

  // Variables: u_2..u_n (index 0..n-2), delta_i for i outside I, then c.
  Piece outside = complement(I, n);
  const std::size_t vars = (n - 1) + outside.size() + 1;
  const std::size_t c_var = vars - 1;
  auto u_var = [](std::size_t i) { return i - 1; };
  auto delta_var = [&](std::size_t i) {
    return (n - 1) + static_cast<std::size_t>(std::lower_bound(outside.begin(), outside.end(), i) - outside.begin());
  };

  std::vector<fm::Constraint> sys;
  auto make = [&] { return fm::Constraint{KVector(vars), Rational(0), fm::Rel::LessEq}; };
  for (std::size_t i = 1; i < n; ++i) {
    auto lo = make();
    lo.coeffs[u_var(i)] = -1;
    lo.rhs = -box.lo()[i - 1];
    lo.rel = fm::Rel::Less;
    sys.push_back(std::move(lo));
    auto hi = make();
    hi.coeffs[u_var(i)] = 1;
    hi.rhs = box.hi()[i - 1];
    hi.rel = fm::Rel::Less;
    sys.push_back(std::move(hi));
  }
  for (auto i : outside) {
    auto nonneg = make();
    nonneg.coeffs[delta_var(i)] = -1;
    sys.push_back(std::move(nonneg));
  }
  for (auto j : y.piece()) {
    auto eq = make();
    eq.rel = fm::Rel::Eq;
    if (j > 0) eq.coeffs[u_var(j)] = 1;
    if (!piece_contains(I, j)) eq.coeffs[delta_var(j)] = 1;
    eq.coeffs[c_var] = 1;
    eq.rhs = y.coords()[j];
    sys.push_back(std::move(eq));
  }
  return fm::feasible(std::move(sys), vars);
}

}  // namespace xbar
