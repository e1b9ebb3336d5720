#include <gtest/gtest.h>

#include <set>

#include "diffhom/catalog.hpp"
#include "diffhom/random.hpp"

using namespace diffhom;

namespace {

Poly X(int i, int j) { return Poly::var(VarId::X(i, j)); }

std::set<std::vector<int>> alphas(const std::vector<IndexTuple>& ts) {
  std::set<std::vector<int>> r;
  for (const auto& t : ts) r.insert(t.alpha);
  return r;
}

}  // namespace

TEST(Sigma, SmallSetsByHand) {
  EXPECT_EQ(alphas(enum_sigma_d(2)), (std::set<std::vector<int>>{{0, 0}}));
  EXPECT_EQ(alphas(enum_sigma_d(3)), (std::set<std::vector<int>>{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}}));
  EXPECT_EQ(sigma_witnesses({0, 1, 0}), (std::vector<int>{3}));
  EXPECT_EQ(sigma_witnesses({0, 0, 0}), (std::vector<int>{1, 2, 3}));
  EXPECT_TRUE(sigma_witnesses({1, 0, 0}).empty());
}

TEST(Sigma, CountIsHalfFactorial) {
  for (int d = 2; d <= 6; ++d) {
    const auto s = enum_sigma_d(d);
    EXPECT_EQ(Integer(s.size()), sigma_count_formula(d)) << d;
    std::vector<Integer> by_class(static_cast<std::size_t>(d + 1), 0);
    for (const auto& t : s) {
      EXPECT_EQ(t.witness, t.cls);
      ++by_class[static_cast<std::size_t>(t.cls)];
    }
    for (int k = 1; k <= d; ++k) EXPECT_EQ(by_class[static_cast<std::size_t>(k)], sigma_class_formula(d, k));
  }
}

TEST(SigmaBar, DegreeTwoByHand) {
  // N = 1: only ((0),(0)); the Wronskian of X0, X1
  const auto s = enum_sigma_bar(1, 2);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(to_string(s[0]), "((0),(0))");
  const Poly w = X(0, 0) * X(1, 1) - X(1, 0) * X(0, 1);
  const Poly g = sign_normalized(build_generator(s[0], 1, 2));
  EXPECT_TRUE(g == w || g == -w);
  EXPECT_GT(g.leading_coefficient(), 0);
}

TEST(SigmaBar, CountsAgainstTable) {
  const std::vector<std::vector<long>> table{{2, 1, 2, 4, 8}, {3, 3, 9, 27, 81}, {4, 6, 24, 96, 384}};
  for (int N = 1; N <= 3; ++N)
    for (int d = 1; d <= 5; ++d) {
      const long expected = table[static_cast<std::size_t>(N - 1)][static_cast<std::size_t>(d - 1)];
      EXPECT_EQ(sigma_bar_count_formula(N, d), expected);
      EXPECT_EQ(static_cast<long>(enum_sigma_bar(N, d).size()), expected) << N << "," << d;
    }
}

TEST(SigmaBar, MembersAreCanonicalDistinctAndClassified) {
  for (int N = 1; N <= 3; ++N)
    for (int d = 1; d <= 4; ++d) {
      const auto s = enum_sigma_bar(N, d);
      std::set<std::string> seen;
      for (const auto& x : s) {
        EXPECT_TRUE(satisfies_canonical_conditions(x, N, d)) << to_string(x);
        EXPECT_TRUE(seen.insert(to_string(x)).second);
        EXPECT_EQ(x.witness, x.cls);
      }
    }
  EXPECT_EQ(enum_sigma_bar(2, 1), sigma_bar_degree_one(2));
}

TEST(SigmaBar, FirstCompositionUsesX0) {
  const auto s = enum_sigma_bar(2, 3);
  ASSERT_FALSE(s.empty());
  EXPECT_FALSE(s.front().uples[0].empty());
}

TEST(SigmaBar, MultinomialIdentity) {
  for (int N = 1; N <= 3; ++N)
    for (int d = 2; d <= 5; ++d)
      for (int j = 0; j <= N; ++j)
        for (int l = j + 1; l <= N; ++l)
          EXPECT_EQ(multinomial_shift_sum(N, d, j, l), ipow(Integer(N + 1), static_cast<unsigned long>(d - 2)));
}

TEST(Compositions, Bijection) {
  Sampler s(77);
  for (int i = 0; i < 100; ++i) {
    const int N = s.uniform(1, 4), d = s.uniform(0, 6);
    std::vector<int> f;
    for (int j = 0; j < d; ++j) f.push_back(s.uniform(0, N));
    std::sort(f.begin(), f.end());
    const auto m = composition_of(f, N);
    EXPECT_EQ(function_of(m), f);
    int total = 0;
    for (int x : m) total += x;
    EXPECT_EQ(total, d);
  }
  EXPECT_THROW(composition_of({1, 0}, 2), InvalidComposition);
  EXPECT_THROW(composition_of({0, 3}, 2), InvalidComposition);
  EXPECT_THROW(function_of({1, -1}), InvalidComposition);
}

TEST(Generators, InvalidIndexRejected) {
  NestedIndex bad;
  bad.uples = {{0, 1}, {}};
  EXPECT_NO_THROW(build_generator(bad, 1, 2));  // canonical but not in Sigma-bar
  bad.uples = {{0, 2}, {}};
  EXPECT_THROW(build_generator(bad, 1, 2), InvalidIndex);
  bad.uples = {{0}};
  EXPECT_THROW(build_generator(bad, 1, 1), InvalidIndex);
}

TEST(Generators, InvariantWithBoundedOrder) {
  for (int N = 1; N <= 2; ++N)
    for (int d = 1; d <= 4; ++d)
      for (const auto& g : build_family(N, d).generators) {
        EXPECT_EQ(g.order, d - 1);
        EXPECT_TRUE(is_diff_homogeneous(g.poly, d, JetContext{N, d - 1, d})) << to_string(g.index);
      }
}

TEST(Generators, CatalogCounts) {
  const auto cat = build_catalog(2, 2);
  ASSERT_EQ(cat.families.size(), 3u);
  EXPECT_EQ(cat.families[0].generators.size(), 3u);
  EXPECT_EQ(cat.families[1].generators.size(), 3u);
  EXPECT_EQ(cat.families[2].generators.size(), 9u);
  EXPECT_EQ(cat.all().size(), 15u);
  const auto sig = weighted_signature(2, 2);
  EXPECT_EQ(sig, (std::vector<std::pair<int, Integer>>{{1, 3}, {2, 3}, {3, 9}}));
}

// |Sigma-bar_d| against the jet-side difference dim(order <= d-1) - dim(order <= d-2).
TEST(Generators, CountEqualsFiltrationGap) {
  for (const auto& [N, d] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {1, 4}, {2, 2}, {2, 3}}) {
    const auto full = diff_homog_basis(JetContext{N, d - 1, d}, {}, KernelRoute::Infinitesimal).dimension();
    const auto low = diff_homog_basis(JetContext{N, d - 2, d}, {}, KernelRoute::Infinitesimal).dimension();
    EXPECT_EQ(Integer(full - low), sigma_bar_count_formula(N, d)) << N << "," << d;
  }
}

TEST(Verification, QuotientBasis) {
  for (const auto& [N, d] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {1, 4}, {2, 2}, {2, 3}}) {
    const auto rep = verify_quotient_basis(N, d);
    EXPECT_TRUE(rep.pass()) << N << "," << d;
  }
  const auto r = verify_quotient_basis(1, 3);
  EXPECT_EQ(r.full_dimension, 8u);
  EXPECT_EQ(r.low_dimension, 6u);
  EXPECT_EQ(r.generators, 2u);
}

TEST(Verification, FiniteGenerationAndMinimality) {
  EXPECT_TRUE(verify_finite_generation(1, 1, 5).pass());
  EXPECT_TRUE(verify_finite_generation(1, 2, 4).pass());
  EXPECT_TRUE(verify_finite_generation(2, 1, 3).pass());
  for (int N = 1; N <= 2; ++N)
    for (int k = 0; k <= 2; ++k) EXPECT_TRUE(verify_minimality(N, k).pass()) << N << "," << k;
}

TEST(Verification, DroppingAGeneratorBreaksGeneration) {
  // without the Wronskian, degree 2 order 1 is not reached for N = 1
  auto gens = build_catalog(1, 1).all();
  std::erase_if(gens, [](const Generator& g) { return g.degree == 2; });
  const auto products = generator_products(gens, 2);
  PolySpan span;
  for (const auto& p : products) span.insert(p);
  EXPECT_EQ(span.rank(), 3u);
  EXPECT_LT(span.rank(), diff_homog_basis(JetContext{1, 1, 2}).dimension());
}
