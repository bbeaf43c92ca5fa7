#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "xbar/arith.hpp"

using namespace xbar;

namespace {

// Counts factors of p by repeated division; independent of valuation_int.
long oracle_val(Rational c, long p) {
  long v = 0;
  Integer num = c.get_num(), den = c.get_den();
  while (num % p == 0) { num /= p; ++v; }
  while (den % p == 0) { den /= p; --v; }
  return v;
}

LScalar L(std::initializer_list<long> coeffs, const PrimeContext& ctx) {
  KVector c;
  for (long a : coeffs) c.push_back(a);
  return LScalar(c, ctx);
}

}  // namespace

TEST(Rational, ParsesAndPrintsReducedFractions) {
  EXPECT_EQ(to_string(parse_rational("4/6")), "2/3");
  EXPECT_EQ(to_string(parse_rational("-3")), "-3/1");
  EXPECT_EQ(to_string(parse_rational("0/5")), "0/1");
  EXPECT_THROW(parse_rational("2/-4"), ParseError);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(Rational, CeilFloor) {
  EXPECT_EQ(ceil(Rational(7, 2)), 4);
  EXPECT_EQ(floor(Rational(7, 2)), 3);
  EXPECT_EQ(ceil(Rational(-7, 2)), -3);
  EXPECT_EQ(floor(Rational(-7, 2)), -4);
  EXPECT_EQ(ceil(Rational(3)), 3);
}

TEST(LogValue, ZeroAbsorbsAndOrdersBelow) {
  LogValue z = LogValue::zero(), a = LogValue::finite(Rational(-5)), b = LogValue::finite(Rational(1, 2));
  EXPECT_TRUE((z * a).is_zero());
  EXPECT_LT(z, a);
  EXPECT_LT(a, b);
  EXPECT_EQ((a * b).log(), Rational(-9, 2));
  EXPECT_EQ(max(a, b), b);
  EXPECT_EQ(max(z, z), z);
  EXPECT_TRUE(b.pow(0) == LogValue::one());
  EXPECT_TRUE(z.pow(0) == LogValue::one());
  EXPECT_TRUE(z.pow(3).is_zero());
}

TEST(PrimeContext, Validates) {
  EXPECT_NO_THROW(PrimeContext(3, 2, 1));
  EXPECT_THROW(PrimeContext(4, 2, 1), Error);
  EXPECT_THROW(PrimeContext(2, 1, 1), Error);
  EXPECT_THROW(PrimeContext(2, 2, 0), Error);
}

TEST(ValK, Examples) {
  PrimeContext c2(2, 2), c3(3, 2);
  EXPECT_EQ(val_k(12, c2), ExtRational(2));
  EXPECT_TRUE(val_k(0, c2).is_pos_inf());
  EXPECT_EQ(val_k(Rational(1, 3), c3), ExtRational(-1));
}

TEST(AbsK, Examples) {
  PrimeContext c2(2, 2);
  EXPECT_EQ(abs_k(12, c2), LogValue::finite(-2));
  EXPECT_TRUE(abs_k(0, c2).is_zero());
  EXPECT_EQ(abs_k(1, c2), LogValue::finite(0));
}

TEST(ValK, AgreesWithDivisionOracle) {
  gen::Gen g(11);
  for (int k = 0; k < 2000; ++k) {
    unsigned long p = g.prime();
    PrimeContext ctx(p, 2);
    Rational c = g.nonzero_rational(p) * g.integer(1, 50);
    EXPECT_EQ(val_k(c, ctx), ExtRational(oracle_val(c, static_cast<long>(p))));
  }
}

TEST(AbsK, MultiplicativeAndUltrametric) {
  gen::Gen g(12);
  for (int k = 0; k < 10000; ++k) {
    unsigned long p = g.prime();
    PrimeContext ctx(p, 2);
    Rational a = g.rational(p), b = g.rational(p);
    LogValue A = abs_k(a, ctx), B = abs_k(b, ctx), S = abs_k(a + b, ctx);
    ASSERT_EQ(abs_k(a * b, ctx), A * B);
    ASSERT_LE(S, max(A, B));
    if (A != B) ASSERT_EQ(S, max(A, B));
  }
}

TEST(ValL, Examples) {
  PrimeContext ctx(2, 2, 2);
  EXPECT_EQ(val_l(L({1, 1}, ctx)), ExtRational(0));
  EXPECT_EQ(val_l(L({2, 1}, ctx)), ExtRational(Rational(1, 2)));
  EXPECT_TRUE(val_l(L({0, 0}, ctx)).is_pos_inf());
}

TEST(LField, Examples) {
  PrimeContext ctx(2, 2, 2);
  LScalar pi = LScalar::uniformizer(ctx);
  EXPECT_EQ(pi * pi, L({2, 0}, ctx));
  EXPECT_EQ(pi.inv(), LScalar({0, Rational(1, 2)}, ctx));
  EXPECT_EQ(L({1, 1}, ctx) * L({1, -1}, ctx), L({-1, 0}, ctx));
  EXPECT_THROW(L({0, 0}, ctx).inv(), Error);
}

TEST(LField, InverseAndMultiplicativeValuation) {
  gen::Gen g(13);
  for (int k = 0; k < 2000; ++k) {
    PrimeContext ctx(g.prime(), 2, static_cast<std::size_t>(g.integer(1, 4)));
    LScalar z = g.lscalar(ctx), w = g.lscalar(ctx);
    if (!z.is_zero()) ASSERT_EQ(z * z.inv(), LScalar::from_k(1, ctx));
    if (!z.is_zero() && !w.is_zero()) {
      ASSERT_EQ(val_l(z * w), val_l(z) + val_l(w));
    }
    // Ultrametric, with equality on distinct valuations.
    ExtRational vs = val_l(z + w), vz = val_l(z), vw = val_l(w);
    ExtRational lo = vz < vw ? vz : vw;
    ASSERT_GE(vs, lo);
    if (vz != vw) ASSERT_EQ(vs, lo);
    // val_l restricted to K is val_k.
    Rational a = g.rational(ctx.p());
    ASSERT_EQ(val_l(LScalar::from_k(a, ctx)), val_k(a, ctx));
  }
}

TEST(LField, ValuationDenominatorDividesE) {
  gen::Gen g(14);
  for (int k = 0; k < 500; ++k) {
    PrimeContext ctx(g.prime(), 2, static_cast<std::size_t>(g.integer(1, 4)));
    LScalar z = g.lscalar(ctx);
    if (z.is_zero()) continue;
    Rational v = val_l(z).value() * static_cast<long>(ctx.e());
    ASSERT_TRUE(is_integer(v));
  }
}

TEST(SolveLinear, Examples) {
  KMatrix id = KMatrix::identity(2);
  EXPECT_EQ(solve_linear(id, {3, 4}), (KVector{3, 4}));
  EXPECT_EQ(solve_linear(KMatrix{{1, 1}, {0, 1}}, {0, 1}), (KVector{-1, 1}));
  EXPECT_EQ(solve_linear(KMatrix{{2, 0}, {0, 1}}, {1, 0}), (KVector{Rational(1, 2), 0}));
  EXPECT_THROW(solve_linear(KMatrix{{1, 2}, {2, 4}}, {1, 0}), Error);
}

TEST(SolveLinear, RoundTrip) {
  gen::Gen g(15);
  for (int k = 0; k < 500; ++k) {
    std::size_t n = static_cast<std::size_t>(g.integer(2, 5));
    KMatrix m = g.invertible(n, g.prime());
    KVector b = g.vector(n, 3);
    ASSERT_EQ(m * solve_linear(m, b), b);
    ASSERT_TRUE((m * inverse(m)).is_identity());
  }
}

TEST(KRank, Examples) {
  PrimeContext ctx(2, 2, 2);
  EXPECT_EQ(k_rank({L({1, 0}, ctx), L({0, 1}, ctx)}), 2u);
  EXPECT_EQ(k_rank({L({1, 0}, ctx), L({1, 0}, ctx)}), 1u);
  EXPECT_EQ(k_rank({L({1, 1}, ctx), L({2, 2}, ctx)}), 1u);
}

TEST(Matrix, NullspaceIsAnnihilatedAndComplementary) {
  gen::Gen g(16);
  for (int k = 0; k < 300; ++k) {
    std::size_t n = static_cast<std::size_t>(g.integer(2, 5));
    KMatrix m = g.matrix(n, 2);
    if (g.coin()) m = KMatrix::from_rows({m.row(0), m.row(0)}, n);
    auto ns = nullspace(m);
    for (const auto& v : ns) ASSERT_TRUE(is_zero(m * v));
    ASSERT_EQ(ns.size() + rank(m), n);
  }
}

TEST(Matrix, DeterminantOfKnownMatrices) {
  EXPECT_EQ(determinant(KMatrix{{1, 2}, {3, 4}}), -2);
  EXPECT_EQ(determinant(KMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 5}}), -5);
  EXPECT_EQ(determinant(KMatrix::identity(4)), 1);
}
