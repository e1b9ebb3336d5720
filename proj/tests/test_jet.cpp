#include <gtest/gtest.h>

#include "diffhom/jet_action.hpp"
#include "diffhom/random.hpp"

using namespace diffhom;

namespace {

Poly X(int i, int j) { return Poly::var(VarId::X(i, j)); }

Poly wronskian2() { return X(0, 0) * X(1, 1) - X(1, 0) * X(0, 1); }

}  // namespace

TEST(Leibniz, ImageByHand) {
  const JetContext ctx{1, 2, 1};
  const Poly l0 = lambda_var(0), l1 = lambda_var(1), l2 = lambda_var(2);
  EXPECT_EQ(leibniz_image(0, 0, ctx), l0 * X(0, 0));
  EXPECT_EQ(leibniz_image(1, 1, ctx), l0 * X(1, 1) + l1 * X(1, 0));
  EXPECT_EQ(leibniz_image(0, 2, ctx),
            l0 * X(0, 2) + Poly::constant(2) * l1 * X(0, 1) + Poly::constant(2) * l2 * X(0, 0));
  EXPECT_THROW(leibniz_image(2, 0, ctx), IndexOutOfRange);
  EXPECT_THROW(leibniz_image(0, 3, ctx), IndexOutOfRange);
}

// (alpha x)^(j)(0) = j! [t^j] (sum l_m t^m)(sum x_s t^s / s!), computed with
// plain series arithmetic.
TEST(Leibniz, MatchesSeriesProduct) {
  Sampler s(7);
  const int k = 4;
  const JetContext ctx{1, k, 1};
  for (int trial = 0; trial < 30; ++trial) {
    const auto lam = s.series(k + 1);
    std::vector<Rational> x;
    for (int j = 0; j <= k; ++j) x.push_back(s.rational());
    std::map<VarId, Poly> values;
    for (int j = 0; j <= k; ++j) values.emplace(VarId::X(0, j), Poly::constant(x[static_cast<std::size_t>(j)]));
    for (int m = 0; m <= k; ++m) values.emplace(VarId::L(m), Poly::constant(lam[static_cast<std::size_t>(m)]));
    for (int j = 0; j <= k; ++j) {
      Rational expected = 0;
      for (int sidx = 0; sidx <= j; ++sidx)
        expected += lam[static_cast<std::size_t>(j - sidx)] * x[static_cast<std::size_t>(sidx)] /
                    Rational(factorial(static_cast<unsigned long>(sidx)));
      expected *= Rational(factorial(static_cast<unsigned long>(j)));
      EXPECT_EQ(substitute(leibniz_image(0, j, ctx), values), Poly::constant(expected));
    }
  }
}

TEST(Action, WronskianIsQuasiInvariant) {
  EXPECT_TRUE(is_diff_homogeneous(wronskian2(), 2));
  EXPECT_TRUE(is_diff_homogeneous(X(0, 0) * X(1, 0), 2));
  EXPECT_FALSE(is_diff_homogeneous(X(0, 0) * X(1, 1), 2));
  EXPECT_FALSE(is_diff_homogeneous(X(0, 1), 1));
  EXPECT_FALSE(is_diff_homogeneous(wronskian2(), 3));  // wrong degree
  EXPECT_TRUE(is_diff_homogeneous(Poly(), 5));
}

TEST(Action, RejectsForeignVariables) {
  EXPECT_THROW(act_series(Poly::var(VarId::Zv(1)), JetContext{1, 1, 1}), UnsupportedVariable);
  EXPECT_THROW(act_series(X(3, 0), JetContext{1, 1, 1}), UnsupportedVariable);
  EXPECT_THROW(JetContext({0, 1, 1}).validate(), IndexOutOfRange);
}

TEST(Action, GroupLawAndIdentity) {
  Sampler s(99);
  const JetContext ctx{1, 2, 0};
  const auto vars = ctx.variables();
  for (int i = 0; i < 30; ++i) {
    const Poly p = s.poly(vars, 3, 3);
    const auto a = s.series(3), b = s.series(3);
    EXPECT_EQ(act_numeric(act_numeric(p, b, ctx), a, ctx), act_numeric(p, series_product(a, b, 3), ctx));
    EXPECT_EQ(act_numeric(p, {Rational(1)}, ctx), p);
  }
}

TEST(Basis, OrderZeroIsAllPolynomialsInX0) {
  // order-0 polynomials are all invariant: dimension C(N+d, d)
  for (int N = 1; N <= 3; ++N)
    for (int d = 1; d <= 4; ++d)
      EXPECT_EQ(Integer(diff_homog_basis(JetContext{N, 0, d}).dimension()),
                binomial(static_cast<unsigned long>(N + d), static_cast<unsigned long>(d)));
}

TEST(Basis, DegreeTwoOrderOneByHand) {
  // X0^2, X0 X1, X1^2 and the Wronskian
  const auto b = diff_homog_basis(JetContext{1, 1, 2});
  ASSERT_EQ(b.dimension(), 4u);
  PolySpan span;
  for (const auto& p : b.elements) span.insert(p);
  for (const Poly& p : {X(0, 0) * X(0, 0), X(0, 0) * X(1, 0), X(1, 0) * X(1, 0), wronskian2()})
    EXPECT_TRUE(span.contains(p));
}

TEST(Basis, SchmidtKolchinDimension) {
  for (int N = 1; N <= 2; ++N)
    for (int d = 1; d <= (N == 1 ? 4 : 3); ++d) {
      const auto b = diff_homog_basis(JetContext{N, d - 1, d}, {}, KernelRoute::Infinitesimal);
      EXPECT_EQ(Integer(b.dimension()), ipow(Integer(N + 1), static_cast<unsigned long>(d))) << N << "," << d;
    }
}

TEST(Basis, RoutesAgree) {
  for (int N = 1; N <= 2; ++N)
    for (int d = 1; d <= 3; ++d)
      for (int k = 0; k <= 3; ++k) {
        const JetContext ctx{N, k, d};
        EXPECT_EQ(diff_homog_basis(ctx, {}, KernelRoute::SeriesAction).dimension(),
                  diff_homog_basis(ctx, {}, KernelRoute::Infinitesimal).dimension())
            << N << "," << k << "," << d;
      }
}

TEST(Basis, ElementsAreInvariantAndMonic) {
  const JetContext ctx{2, 2, 3};
  const auto b = diff_homog_basis(ctx);
  EXPECT_EQ(b.provenance.size(), b.elements.size());
  EXPECT_EQ(poly_rank(b.elements), b.dimension());
  for (const auto& p : b.elements) {
    EXPECT_TRUE(is_diff_homogeneous(p, 3, ctx));
    EXPECT_EQ(p.leading_coefficient(), 1);
  }
}

TEST(Basis, Stabilizes) {
  for (int d = 2; d <= 3; ++d)
    EXPECT_EQ(diff_homog_basis(JetContext{1, d, d}).dimension(), diff_homog_basis(JetContext{1, d - 1, d}).dimension());
}

TEST(Basis, ResourceCap) {
  Limits tight;
  tight.max_monomials = 10;
  EXPECT_THROW(diff_homog_basis(JetContext{2, 2, 3}, tight), ResourceLimit);
}

TEST(ProductLemma, ConstructedPairs) {
  const JetContext ctx{1, 1, 0};
  // invariant times invariant
  auto r = product_lemma_check(wronskian2(), X(0, 0), ctx);
  EXPECT_TRUE(r.pq_homogeneous && r.p_homogeneous && r.q_homogeneous);
  // invariant times non-invariant: product is not invariant either
  r = product_lemma_check(wronskian2(), X(0, 1), ctx);
  EXPECT_FALSE(r.pq_homogeneous);
  EXPECT_TRUE(r.consistent());
}
