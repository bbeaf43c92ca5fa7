#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "xbar/arith/matrix.hpp"

namespace xbar::fm {

enum class Rel { Less, LessEq, Eq };

/// coeffs . x  (rel)  rhs
struct Constraint {
  KVector coeffs;
  Rational rhs;
  Rel rel = Rel::LessEq;
};

namespace detail {

inline bool trivially_holds(const Rational& rhs, Rel rel) {
  switch (rel) {
    case Rel::Less: return 0 < rhs;
    case Rel::LessEq: return 0 <= rhs;
    case Rel::Eq: return rhs == 0;
  }
  return false;
}

// Scale so the first nonzero coefficient has absolute value 1. Positive
// scaling keeps the direction of an inequality.
inline void normalize(Constraint& c) {
  for (const auto& a : c.coeffs) {
    if (a == 0) continue;
    Rational s = 1 / abs(a);
    for (auto& x : c.coeffs) x *= s;
    c.rhs *= s;
    return;
  }
}

// Keep only the tightest constraint per left-hand side.
inline std::vector<Constraint> prune(std::vector<Constraint> cs) {
  std::map<std::vector<Rational>, Constraint> best;
  for (auto& c : cs) {
    normalize(c);
    auto [it, inserted] = best.try_emplace(c.coeffs, c);
    if (inserted) continue;
    Constraint& b = it->second;
    if (c.rhs < b.rhs || (c.rhs == b.rhs && c.rel == Rel::Less)) b = std::move(c);
  }
  std::vector<Constraint> out;
  out.reserve(best.size());
  for (auto& [k, c] : best) out.push_back(std::move(c));
  return out;
}

}  // namespace detail

/// Decides whether the system has a real (equivalently, rational)
/// solution. Equalities are eliminated by substitution first, then the
/// remaining inequalities by Fourier-Motzkin, tracking strictness.
inline bool feasible(std::vector<Constraint> system, std::size_t vars) {
  for (const auto& c : system)
    if (c.coeffs.size() != vars) fail(Errc::DimensionMismatch, "constraint width mismatch");

  // Equalities.
  for (;;) {
    auto eq = system.end();
    std::size_t var = 0;
    for (auto it = system.begin(); it != system.end() && eq == system.end(); ++it) {
      if (it->rel != Rel::Eq) continue;
      for (std::size_t k = 0; k < vars; ++k)
        if (it->coeffs[k] != 0) {
          eq = it;
          var = k;
          break;
        }
      if (eq == system.end() && it->rhs != 0) return false;
    }
    if (eq == system.end()) break;
    Constraint pivot = *eq;
    system.erase(eq);
    for (auto& c : system) {
      if (c.coeffs[var] == 0) continue;
      Rational f = c.coeffs[var] / pivot.coeffs[var];
      for (std::size_t k = 0; k < vars; ++k) c.coeffs[k] -= f * pivot.coeffs[k];
      c.rhs -= f * pivot.rhs;
    }
  }

  std::vector<Constraint> ineq;
  for (auto& c : system) {
    if (c.rel == Rel::Eq) {
      if (c.rhs != 0) return false;
      continue;
    }
    ineq.push_back(std::move(c));
  }

  for (std::size_t var = 0; var < vars; ++var) {
    std::vector<Constraint> pos, neg, next;
    for (auto& c : ineq) {
      if (c.coeffs[var] > 0)
        pos.push_back(std::move(c));
      else if (c.coeffs[var] < 0)
        neg.push_back(std::move(c));
      else
        next.push_back(std::move(c));
    }
    for (const auto& a : pos)
      for (const auto& b : neg) {
        Rational wa = -b.coeffs[var];
        Rational wb = a.coeffs[var];
        Constraint comb;
        comb.coeffs.resize(vars);
        for (std::size_t k = 0; k < vars; ++k) comb.coeffs[k] = wa * a.coeffs[k] + wb * b.coeffs[k];
        comb.coeffs[var] = 0;
        comb.rhs = wa * a.rhs + wb * b.rhs;
        comb.rel = (a.rel == Rel::Less || b.rel == Rel::Less) ? Rel::Less : Rel::LessEq;
        next.push_back(std::move(comb));
      }
    std::vector<Constraint> kept;
    for (auto& c : next) {
      if (is_zero(c.coeffs)) {
        if (!detail::trivially_holds(c.rhs, c.rel)) return false;
        continue;
      }
      kept.push_back(std::move(c));
    }
    ineq = detail::prune(std::move(kept));
  }
  for (const auto& c : ineq)
    if (!detail::trivially_holds(c.rhs, c.rel)) return false;
  return true;
}

}  // namespace xbar::fm
