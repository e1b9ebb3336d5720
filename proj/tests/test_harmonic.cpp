#include <gtest/gtest.h>

#include <algorithm>

#include "diffhom/harmonic.hpp"
#include "diffhom/random.hpp"

using namespace diffhom;

namespace {

Poly Z(int i) { return Poly::var(VarId::Zv(i)); }

long fact(int n) { return n <= 1 ? 1 : n * fact(n - 1); }

// Hook length formula on the English diagram with rows sorted descending.
long hook_count(std::vector<int> rows) {
  std::sort(rows.rbegin(), rows.rend());
  rows.erase(std::remove(rows.begin(), rows.end(), 0), rows.end());
  int n = 0;
  for (int r : rows) n += r;
  long prod = 1;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int c = 0; c < rows[i]; ++c) {
      int below = 0;
      for (std::size_t j = i + 1; j < rows.size(); ++j) below += rows[j] > c ? 1 : 0;
      prod *= rows[i] - c + below;
    }
  return fact(n) / prod;
}

long multinomial_of(const Partition& mu) {
  long r = fact(mu.size());
  for (int p : mu.parts()) r /= fact(p);
  return r;
}

}  // namespace

TEST(Partition, PaddingAndConjugate) {
  const Partition mu = Partition::parse("2,1,1");
  EXPECT_EQ(mu.size(), 4);
  EXPECT_EQ(mu.parts(), (std::vector<int>{0, 1, 1, 2}));
  EXPECT_EQ(mu.conjugate(), (std::vector<int>{0, 0, 1, 3}));
  EXPECT_EQ(mu.nonzero_parts(), (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(to_string(mu), "(1,1,2)");
  EXPECT_EQ(mu.conjugate_partition().conjugate_partition(), mu);
  EXPECT_EQ(Partition::parse("(2, 2)"), Partition({2, 2}));
}

TEST(Partition, DkSumsLeadingConjugateEntries) {
  const Partition mu({1, 1});  // conjugate (0,2)
  EXPECT_EQ(mu.d_k(1), 0);
  EXPECT_EQ(mu.d_k(2), 2);
  const Partition nu({2});  // conjugate (1,1)
  EXPECT_EQ(nu.d_k(1), 1);
  EXPECT_EQ(nu.d_k(2), 2);
}

TEST(Partition, RejectsBadInput) {
  EXPECT_THROW(Partition::parse("2,x"), Error);
  EXPECT_THROW(Partition({-1, 2}), Error);
  EXPECT_THROW(Partition({0}), Error);
}

TEST(MuK, EuclideanDivision) {
  EXPECT_EQ(to_string(mu_k(5, 1)), "(2,3)");
  EXPECT_EQ(to_string(mu_k(4, 1)), "(2,2)");
  EXPECT_EQ(to_string(mu_k(3, 2)), "(1,1,1)");
  EXPECT_EQ(to_string(mu_k(5, 2)), "(1,2,2)");
  EXPECT_EQ(to_string(mu_k(2, 3)), "(1,1)");
  EXPECT_EQ(to_string(mu_k(3, 0)), "(3)");
}

TEST(Tableaux, CountsMatchHookLengths) {
  for (const char* s : {"1", "2", "1,1", "2,1", "2,2", "3,1", "2,1,1", "3,2", "2,2,1", "3,2,1", "4,2", "2,2,2"}) {
    const Partition mu = Partition::parse(s);
    const auto ts = enum_standard_tableaux(mu);
    EXPECT_EQ(static_cast<long>(ts.size()), hook_count(mu.parts())) << s;
    for (const auto& t : ts) EXPECT_TRUE(t.is_standard()) << to_string(t);
  }
}

TEST(Tableaux, FrenchOrientation) {
  const auto ts = enum_standard_tableaux(Partition({2, 2}));
  ASSERT_EQ(ts.size(), 2u);
  EXPECT_EQ(to_string(ts[0]), "2 4 / 1 3");
  EXPECT_EQ(ts[0].columns(), (std::vector<std::vector<int>>{{1, 2}, {3, 4}}));
  // column Vandermondes: (Z2 - Z1)(Z4 - Z3)
  EXPECT_EQ(delta_T(ts[0]), (Z(2) - Z(1)) * (Z(4) - Z(3)));
  YoungTableau bad{Partition({2, 2}), {{1, 3}, {2, 4}}};
  EXPECT_TRUE(bad.is_injective());
  EXPECT_FALSE(bad.is_standard());
}

TEST(Tableaux, DeltaColumnIsVandermonde) {
  EXPECT_EQ(delta_column({1}), Poly::constant(1));
  EXPECT_EQ(delta_column({1, 2, 3}), (Z(2) - Z(1)) * (Z(3) - Z(1)) * (Z(3) - Z(2)));
}

TEST(Symmetric, ElementaryByHand) {
  EXPECT_EQ(elementary_symmetric({1, 2, 3}, 2), Z(1) * Z(2) + Z(1) * Z(3) + Z(2) * Z(3));
  EXPECT_EQ(elementary_symmetric({2, 4}, 0), Poly::constant(1));
  EXPECT_TRUE(elementary_symmetric({1}, 2).is_zero());
}

TEST(Symmetric, Recurrence) {
  Sampler s(123);
  for (int i = 0; i < 50; ++i) {
    std::vector<int> S;
    for (int v = 1; v <= 5; ++v)
      if (s.coin()) S.push_back(v);
    const int x = 6;
    std::vector<int> S2 = S;
    S2.push_back(x);
    for (int j = 1; j <= static_cast<int>(S2.size()); ++j)
      EXPECT_EQ(elementary_symmetric(S2, j), elementary_symmetric(S, j) + Z(x) * elementary_symmetric(S, j - 1));
  }
}

TEST(Dcp, GeneratorSetsByHand) {
  // (1,1): i = 2 gives e_1, e_2 of {Z1, Z2}
  const auto a = dcp_generators(Partition({1, 1}));
  EXPECT_EQ(a.generators, (std::vector<Poly>{Z(1) + Z(2), Z(1) * Z(2)}));
  // (2): i = 1 gives Z1, Z2; i = 2 gives e_1, e_2
  const auto b = dcp_generators(Partition({2}));
  EXPECT_EQ(b.generators, (std::vector<Poly>{Z(1), Z(2), Z(1) + Z(2), Z(1) * Z(2)}));
  EXPECT_THROW(dcp_generators(Partition({2}), 3), IndexOutOfRange);
}

TEST(Membership, Examples) {
  EXPECT_TRUE(ideal_membership(Z(2) * Z(2), dcp_generators(Partition({1, 1})), 3));
  EXPECT_FALSE(ideal_membership(Poly::constant(1), ik_ideal(2, 1), 4));
  EXPECT_TRUE(ideal_membership(Z(1) * Z(2), ik_ideal(2, 1), 2));
  // Z1 - Z2 is not in I_1(2) (it spans the harmonic space with 1)
  EXPECT_FALSE(ideal_membership(Z(1) - Z(2), ik_ideal(2, 1), 6));
  // below the cap nothing of higher degree is certified
  EXPECT_FALSE(ideal_membership(pow(Z(1), 3), ik_ideal(2, 1), 2));
  EXPECT_THROW(ideal_membership(Poly::var(VarId::X(0, 0)), ik_ideal(2, 1), 2), Error);
}

TEST(Perp, SmallBasisByHand) {
  const auto b = perp_basis(ik_ideal(2, 1), 1);
  ASSERT_EQ(b.size(), 2u);
  PolySpan span;
  for (const auto& p : b) span.insert(p);
  EXPECT_TRUE(span.contains(Poly::constant(1)));
  EXPECT_TRUE(span.contains(Z(1) - Z(2)));
}

TEST(Perp, ClosedFormDimensions) {
  const std::vector<std::tuple<int, int, long>> cases{{2, 1, 2}, {3, 1, 3}, {4, 1, 6}, {3, 2, 6}, {5, 2, 30}};
  for (const auto& [d, k, expected] : cases) {
    EXPECT_EQ(static_cast<long>(perp_basis(ik_ideal(d, k), k).size()), expected);
    EXPECT_EQ(static_cast<long>(quotient_dimension(d, k)), expected);
    EXPECT_EQ(harmonic_dimension_formula(d, k), expected);
  }
}

TEST(Perp, DcpDimensionIsMultinomial) {
  for (const char* s : {"1,1", "2", "2,1", "1,1,1", "2,2", "3,1", "2,1,1"}) {
    const Partition mu = Partition::parse(s);
    EXPECT_EQ(static_cast<long>(perp_basis(dcp_generators(mu), mu.size() - 1).size()), multinomial_of(mu)) << s;
  }
}

TEST(Perp, ElementsAreHarmonic) {
  const auto ideal = ik_ideal(4, 1);
  for (const auto& p : perp_basis(ideal, 1))
    for (const auto& g : ideal.generators) EXPECT_TRUE(apply_differential_operator(g, p).is_zero());
}

TEST(Perp, ResourceCap) {
  Limits tight;
  tight.max_box = 8;
  EXPECT_THROW(perp_basis(ik_ideal(4, 1), 1, tight), ResourceLimit);
  EXPECT_THROW(quotient_dimension(4, 1, tight), ResourceLimit);
}

TEST(Dcp, EqualityWithIk) {
  for (const auto& [d, k] : std::vector<std::pair<int, int>>{{3, 1}, {4, 1}, {4, 2}, {2, 3}})
    EXPECT_TRUE(verify_dcp_equality(d, k, d * (k + 1)).pass()) << d << "," << k;
}

TEST(Spanning, FullRank) {
  for (const char* s : {"1,1", "1,1,1", "2,2", "2,3", "2,1"}) {
    const auto rep = verify_spanning(Partition::parse(s));
    EXPECT_TRUE(rep.pass()) << s << " rank " << rep.rank;
  }
}

TEST(Spanning, DeltaAnnihilatedByIk) {
  for (int d = 2; d <= 5; ++d)
    for (int k = 1; k <= 2; ++k) {
      const auto ideal = ik_ideal(d, k);
      for (const auto& t : enum_standard_tableaux(mu_k(d, k)))
        for (const auto& g : ideal.generators) EXPECT_TRUE(apply_differential_operator(g, delta_T(t)).is_zero());
    }
}

TEST(BlockSurjectivity, ProductsSpan) {
  for (const auto& [d, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 1}, {5, 2}}) {
    const auto rep = verify_block_surjectivity(d, k);
    EXPECT_TRUE(rep.pass()) << d << "," << k;
    EXPECT_FALSE(rep.escalated);
  }
}
