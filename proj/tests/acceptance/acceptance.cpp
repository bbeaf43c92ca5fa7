// Acceptance suite: the ten exact criteria. One PASS/FAIL line each; the
// exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "support/generators.hpp"
#include "xbar/berkovich.hpp"

using namespace xbar;

namespace {

class Tally {
 public:
  bool expect(bool cond, const std::string& what) {
    ++checks_;
    if (!cond && failure_.empty()) failure_ = what;
    return cond;
  }
  bool ok() const { return failure_.empty(); }
  long checks() const { return checks_; }
  const std::string& failure() const { return failure_; }

 private:
  long checks_ = 0;
  std::string failure_;
};

std::size_t dim(gen::Gen& g) { return static_cast<std::size_t>(g.integer(2, 5)); }
std::size_t ram(gen::Gen& g) { return static_cast<std::size_t>(g.integer(1, 4)); }

template <class T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// 1. phi(m.x) and m.phi(x) are the same class.
void n_equivariance(Tally& t) {
  gen::Gen g(101);
  for (int k = 0; k < 1000; ++k) {
    PrimeContext ctx(g.prime(), dim(g));
    auto m = g.monomial(ctx.n());
    auto x = g.point(ctx.n());
    t.expect(class_equals(phi_from_apartment(act_monomial(m, x), ctx),
                          compose_with(phi_from_apartment(x, ctx), to_matrix(m, ctx))),
             "instance " + str(k));
  }
}

// 2. r(j(b)) = b.
void section_identity(Tally& t) {
  gen::Gen g(102);
  int boundary = 0;
  for (int k = 0; k < 1000; ++k) {
    PrimeContext ctx(g.prime(), dim(g));
    auto b = g.building(ctx);
    boundary += !b.is_interior();
    t.expect(r_reduce_monomial(j_section(b)) == b, "instance " + str(k));
  }
  t.expect(boundary > 100 && boundary < 900, "interior/boundary mix");
}

// 3. Sampled P_x elements fix phi(x); threshold-violating unipotents move it.
void stabilizer_identity(Tally& t) {
  gen::Gen g(103);
  for (int k = 0; k < 500; ++k) {
    PrimeContext ctx(g.prime(), dim(g));
    const std::size_t n = ctx.n();
    auto x = g.point(n);
    DiagonalSeminorm base = phi_from_apartment(x, ctx);
    for (const auto& m : sample_P_x_generators(x, ctx, 20, SamplerBounds{}, static_cast<std::uint64_t>(k))) {
      t.expect(class_equals(compose_with(base, m), base), "sampled element moves phi(x), instance " + str(k));
      t.expect(in_stabilizer_P_x(m, x, ctx), "sampled element rejected, instance " + str(k));
    }
    const Piece& I = x.piece();
    const Piece out = complement(I, n);
    for (int s = 0; s < 20; ++s) {
      std::size_t i = I[g.index(I.size())], j;
      Rational omega;
      if (I.size() >= 2 && (out.empty() || g.coin())) {
        do j = I[g.index(I.size())];
        while (j == i);
        ExtRational f = f_point(x, Root(i, j));
        long level = ceil(f.value()).get_si() - 1;
        omega = prime_power(ctx, level) * (g.coin() ? 1 : -1) * (g.coin() ? 1 : static_cast<long>(ctx.p()) + 1);
        t.expect(val_k(omega, ctx) < f, "violating level not below f");
      } else {
        j = out[g.index(out.size())];
        omega = g.nonzero_rational(ctx.p());
      }
      KMatrix u = ElementaryUnipotent{Root(i, j), omega}.matrix(n);
      t.expect(!class_equals(compose_with(base, u), base), "violating unipotent fixes phi(x), instance " + str(k));
      t.expect(!in_stabilizer_P_x(u, x, ctx), "violating unipotent accepted, instance " + str(k));
    }
  }
}

// 4. Rays: coordinatewise limits, ray_limit = phi^{-1}(pointwise limit),
// tails inside basic neighbourhoods of the limit.
void ray_topology(Tally& t) {
  gen::Gen g(104);
  std::vector<std::vector<KVector>> panels(6);
  for (std::size_t n = 2; n <= 5; ++n)
    for (int s = 0; s < 5; ++s) panels[n].push_back(g.nonzero_vector(n, 2));
  long neighbourhoods = 0;
  for (int k = 0; k < 100; ++k) {
    PrimeContext ctx(g.prime(), dim(g));
    const std::size_t n = ctx.n();
    auto x0 = g.interior_point(n);
    KVector d = g.direction(n);
    auto lim = ray_limit(x0, d);
    const Piece& I = lim.piece();
    const std::size_t ref = I.front();
    const Rational dmin = d[ref];

    // Normalize every seminorm by its value on e_ref.
    auto normalized = [&](const DiagonalSeminorm& gamma, const KVector& v) {
      KVector e(n);
      e[ref] = 1;
      return evaluate(gamma, v).scaled(-evaluate(gamma, e).log());
    };
    auto unit = [&](std::size_t i) {
      KVector e(n);
      e[i] = 1;
      return e;
    };

    std::vector<LogValue> limit_values(n, LogValue::zero());
    for (auto i : I) limit_values[i] = normalized(phi_from_apartment(lim, ctx), unit(i));
    DiagonalSeminorm pointwise = DiagonalSeminorm::standard(ctx, limit_values);
    t.expect(phi_inverse(pointwise) == lim, "ray_limit differs from phi^{-1} of the pointwise limit, ray " + str(k));

    std::vector<KVector> panel;
    for (std::size_t i = 0; i < n; ++i) panel.push_back(unit(i));
    panel.insert(panel.end(), panels[n].begin(), panels[n].end());
    for (const auto& v : panel) {
      const LogValue L = evaluate(pointwise, v);
      t.expect(L == normalized(phi_from_apartment(lim, ctx), v), "limit seminorm mismatch, ray " + str(k));
      // Computable threshold past which every escaping term is below L
      // (or below q^{-50} when L is zero).
      const Rational floor_log = L.is_zero() ? Rational(-50) : L.log();
      Rational thr = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (piece_contains(I, i) || v[i] == 0) continue;
        Rational lead = abs_k(v[i], ctx).log() - (x0.coords()[i] - x0.coords()[ref]);
        Rational si = (lead - floor_log) / (d[i] - dmin);
        if (si > thr) thr = si;
      }
      const long start = floor(thr).get_si() + 1;
      LogValue prev;
      for (long s = 1; s <= std::max(20L, start + 5); ++s) {
        LogValue now = normalized(phi_from_apartment(ray_point(x0, d, s), ctx), v);
        if (L.is_zero()) {
          if (s > 1) t.expect(now < prev, "escaping coordinate not strictly decreasing, ray " + str(k));
          if (s >= start) t.expect(now < LogValue::finite(-50), "escaping coordinate above bound, ray " + str(k));
        } else if (s >= start) {
          t.expect(now == L, "coordinate not equal to its limit past the threshold, ray " + str(k));
        }
        prev = now;
      }
    }

    // Basic opens Gamma_U^J with J a subpiece of I, U a box in coordinates 2..n.
    Rational bound = 0;
    for (const auto& c : x0.coords()) bound = std::max(bound, Rational(abs(c)));
    for (int b = 0; b < 10; ++b) {
      Piece J;
      for (auto i : I)
        if (g.coin()) J.push_back(i);
      if (J.empty()) J.push_back(I[g.index(I.size())]);
      KVector center = x0.coords();
      for (auto& c : center) c += make_rational(g.integer(-2, 2), 4);
      OpenBox U = OpenBox::around(ApartmentPoint::interior(center), make_rational(g.integer(1, 6), 2));
      if (!gamma_membership(lim, U, J)) continue;
      ++neighbourhoods;
      Rational span = bound + 4;
      for (const auto& l : U.lo()) span = std::max(span, Rational(abs(l) + bound));
      for (const auto& h : U.hi()) span = std::max(span, Rational(abs(h) + bound));
      const long tail = ceil(Rational(2 * span)).get_si() + 1;
      for (long s = tail; s < tail + 10; ++s)
        t.expect(gamma_membership(ray_point(x0, d, s), U, J), "ray tail outside a neighbourhood, ray " + str(k));
    }
  }
  t.expect(neighbourhoods >= 300, "too few neighbourhoods contained the limit: " + str(neighbourhoods));
}

// 5. Chart relation: constructed equivalent pairs agree, perturbed ones do not.
void chart_relation(Tally& t) {
  gen::Gen g(105);
  for (int k = 0; k < 500; ++k) {
    PrimeContext ctx(g.prime(), dim(g));
    const std::size_t n = ctx.n();
    KMatrix h = g.invertible(n, ctx.p());
    auto x = g.point(n);
    auto nm = g.monomial(n);
    KMatrix P = sample_P_x_generators(x, ctx, 1, SamplerBounds{}, static_cast<std::uint64_t>(1000 + k)).front();
    ChartPoint a{h, x};
    ChartPoint b{h * P * inverse(to_matrix(nm, ctx)), act_monomial(nm, x)};
    t.expect(from_chart(a, ctx) == from_chart(b, ctx), "equivalent pair differs, instance " + str(k));
    t.expect(chart_equivalent(a, b, ctx), "chart_equivalent rejects an equivalent pair, instance " + str(k));

    MonomialElement mm = g.monomial(n);
    while (act_monomial(mm, b.x) == b.x) mm = g.monomial(n);
    ChartPoint c{b.g, act_monomial(mm, b.x)};
    t.expect(!(from_chart(a, ctx) == from_chart(c, ctx)), "perturbed pair agrees, instance " + str(k));
    t.expect(!chart_equivalent(a, c, ctx), "chart_equivalent accepts a perturbed pair, instance " + str(k));
  }
}

// 6. r(g.P) = g.r(P).
void reduction_equivariance(Tally& t) {
  gen::Gen g(106);
  for (int k = 0; k < 200; ++k) {
    PrimeContext ctx(g.prime(), dim(g));
    auto P = g.monomial_point(ctx);
    KMatrix m = g.invertible(ctx.n(), ctx.p());
    t.expect(r_reduce_monomial(P.transformed(m)) == act_group(m, r_reduce_monomial(P)), "instance " + str(k));
  }
}

// 7. alpha(fg) = alpha(f) alpha(g) up to degree 4.
void multiplicativity(Tally& t) {
  gen::Gen g(107);
  for (int k = 0; k < 500; ++k) {
    PrimeContext ctx(g.prime(), dim(g));
    auto P = g.monomial_point(ctx);
    auto f = g.polynomial(ctx.n(), ctx.p(), 4), h = g.polynomial(ctx.n(), ctx.p(), 4);
    t.expect(alpha_evaluate(P, f * h) == alpha_evaluate(P, f) * alpha_evaluate(P, h), "instance " + str(k));
  }
}

// 8. Orthogonalization span and max-property; pullback against |z(v)|_L.
void orthogonalization(Tally& t) {
  gen::Gen g(108);
  for (int k = 0; k < 500; ++k) {
    PrimeContext ctx(g.prime(), dim(g), ram(g));
    const std::size_t n = ctx.n();
    auto ambient = g.seminorm(ctx, false);
    const std::size_t m = static_cast<std::size_t>(g.integer(1, static_cast<long>(n)));
    std::vector<KVector> us;
    while (us.size() < m) {
      auto cand = us;
      cand.push_back(g.nonzero_vector(n, ctx.p()));
      if (rank_of(cand) == cand.size()) us = cand;
    }
    auto out = orthogonalize(us, ambient);
    auto both = us;
    both.insert(both.end(), out.begin(), out.end());
    t.expect(out.size() == m && rank_of(out) == m && rank_of(both) == m, "span changed, instance " + str(k));
    for (int s = 0; s < 100; ++s) {
      KVector v(n);
      LogValue expect = LogValue::zero();
      for (std::size_t i = 0; i < out.size(); ++i) {
        Rational l = g.rational(ctx.p());
        for (std::size_t c = 0; c < n; ++c) v[c] += l * out[i][c];
        expect = max(expect, abs_k(l, ctx) * evaluate(ambient, out[i]));
      }
      t.expect(evaluate(ambient, v) == expect, "max-property fails, instance " + str(k));
    }

    auto z = g.functional(ctx).entries();
    auto gamma = pullback_from_functional(z, ctx);
    for (int s = 0; s < 1000; ++s) {
      KVector v = g.vector(n, ctx.p());
      t.expect(evaluate(gamma, v) == abs_l(apply_functional(z, v, ctx)), "pullback mismatch, instance " + str(k));
    }
  }
}

enum class Limit { NegInf, Finite, PosInf };

// 9. f_point on ray limits against the limits of a along rays.
void f_table(Tally& t) {
  gen::Gen g(109);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = dim(g);
    auto x0 = g.interior_point(n);
    KVector d = g.direction(n);
    auto lim = ray_limit(x0, d);
    t.expect(!lim.is_interior(), "ray does not reach the boundary");
    std::vector<KVector> family{d};
    for (std::size_t i = 0; i < n; ++i)
      if (!lim.contains(i)) {
        KVector d2 = d;
        d2[i] += 10;
        family.push_back(d2);
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        Root a(i, j);
        // sup over the family of lim_s a(x(s)); a(x(s)) is affine in s.
        bool any_pos = false, any_finite = false;
        Rational best;
        for (const auto& dd : family) {
          t.expect(ray_limit(x0, dd) == lim, "family ray has another limit");
          Rational a1 = root_eval(a, ray_point(x0, dd, 1));
          Rational slope = root_eval(a, ray_point(x0, dd, 2)) - a1;
          for (long s = 3; s <= 20; ++s)
            t.expect(root_eval(a, ray_point(x0, dd, s)) == a1 + (s - 1) * slope, "root not affine along ray");
          Limit l = slope > 0 ? Limit::PosInf : slope < 0 ? Limit::NegInf : Limit::Finite;
          if (l == Limit::PosInf) any_pos = true;
          if (l == Limit::Finite) {
            if (!any_finite || a1 > best) best = a1;
            any_finite = true;
          }
        }
        ExtRational oracle = any_pos ? ExtRational::neg_inf()
                             : any_finite ? ExtRational(Rational(-best))
                                          : ExtRational::pos_inf();
        t.expect(f_point(lim, a) == oracle, "f-table mismatch, ray " + str(k) + " root " + str(i + 1) + str(j + 1));
      }
  }
}

// 10. z in Omega iff r(z) is a norm.
void omega_dichotomy(Tally& t) {
  gen::Gen g(110);
  int inside = 0;
  for (int k = 0; k < 200; ++k) {
    PrimeContext ctx(g.prime(), dim(g), ram(g));
    auto z = g.functional(ctx);
    auto b = r_reduce_L_point(z);
    bool omega = in_omega(z);
    inside += omega;
    t.expect(omega == b.kernel().empty(), "dichotomy fails, instance " + str(k));
    t.expect(b.kernel().size() == ctx.n() - k_rank(z.entries()), "kernel dimension, instance " + str(k));
    for (const auto& v : b.kernel())
      t.expect(apply_functional(z.entries(), v, ctx).is_zero(), "kernel vector not annihilated, instance " + str(k));
  }
  t.expect(inside > 20 && inside < 180, "both sides of the dichotomy exercised");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Tally&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "N-equivariance of phi", n_equivariance},
      {2, "section identity r(j(b)) = b", section_identity},
      {3, "stabilizer of phi(x) is P_x", stabilizer_identity},
      {4, "ray limits and basic neighbourhoods", ray_topology},
      {5, "chart relation well-defined", chart_relation},
      {6, "reduction equivariance", reduction_equivariance},
      {7, "multiplicativity of monomial points", multiplicativity},
      {8, "orthogonalization and pullback oracle", orthogonalization},
      {9, "boundary f-table against ray limits", f_table},
      {10, "Omega dichotomy", omega_dichotomy},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.run(t);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = error.empty() && t.ok() && secs < 30.0;
    failed += !ok;
    std::printf("%s criterion %d: %s (%ld checks, %.2fs)", ok ? "PASS" : "FAIL", c.id, c.name, t.checks(), secs);
    if (!error.empty()) std::printf(" exception: %s", error.c_str());
    if (!t.ok()) std::printf(" first failure: %s", t.failure().c_str());
    if (secs >= 30.0) std::printf(" over the 30 s budget");
    std::printf("\n");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
