#include <gtest/gtest.h>

#include <numeric>

#include "diffhom/harmonic.hpp"
#include "diffhom/jet_action.hpp"
#include "diffhom/random.hpp"
#include "diffhom/tensor.hpp"

using namespace diffhom;

namespace {

Poly Y(int s, int t) { return Poly::var(VarId::Y(s, t)); }
Poly Z(int i) { return Poly::var(VarId::Zv(i)); }

// d! / ((q!)^(k+1-r) ((q+1)!)^r), d = q(k+1) + r, computed from scratch.
long quotient_formula(int d, int k) {
  auto fact = [](int n) {
    long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
  };
  const int q = d / (k + 1), r = d % (k + 1);
  long den = 1;
  for (int i = 0; i < k + 1 - r; ++i) den *= fact(q);
  for (int i = 0; i < r; ++i) den *= fact(q + 1);
  return fact(d) / den;
}

}  // namespace

TEST(Tensor, BasicsAndBounds) {
  Tensor t(2, 3);
  t.add({0, 1, 2}, 3);
  t.add({0, 1, 2}, -3);
  EXPECT_TRUE(t.is_zero());
  EXPECT_THROW(t.add({0, 3, 0}, 1), IndexOutOfRange);
  EXPECT_THROW(t.add({0, 1}, 1), IndexOutOfRange);
  EXPECT_EQ(to_string(Tensor::basis(1, {1, 0}) - Tensor::basis(1, {0, 1})), "-f(0,1) + f(1,0)");
}

TEST(Tensor, ApplyJByHand) {
  // J^(1)(f1 (x) f1) = f0 (x) f1 + f1 (x) f0
  EXPECT_EQ(apply_J_ell(Tensor::basis(1, {1, 1}), 1), Tensor::basis(1, {0, 1}) + Tensor::basis(1, {1, 0}));
  // ordered pairs of slots: (1,2) and (2,1)
  EXPECT_EQ(to_string(apply_J_ell(Tensor::basis(1, {1, 1}), 2)), "2*f(0,0)");
  // J f2 = 2 f1, J f1 = f0
  EXPECT_EQ(apply_J_ell(Tensor::basis(2, {2, 1}), 2), Rational(4) * Tensor::basis(2, {1, 0}));
  EXPECT_THROW(apply_J_ell(Tensor::basis(1, {1, 1}), 3), IndexOutOfRange);
  EXPECT_THROW(apply_J_ell(Tensor::basis(1, {1, 1}), 0), IndexOutOfRange);
}

TEST(Tensor, EndomorphismMatchesJ) {
  Sampler s(5);
  const auto J = NilpotentModel{2}.matrix();
  for (int i = 0; i < 20; ++i) {
    const Tensor t = s.tensor(2, 3, 4);
    for (int l = 1; l <= 3; ++l) EXPECT_EQ(apply_endomorphism_ell(t, J, l), apply_J_ell(t, l));
  }
  EXPECT_EQ(NilpotentModel{2}.apply({Rational(1), Rational(1), Rational(1)}),
            (std::vector<Rational>{Rational(1), Rational(2), Rational(0)}));
}

TEST(Invariants, FactorialDimension) {
  long f = 1;
  for (int d = 1; d <= 4; ++d) {
    f *= d;
    EXPECT_EQ(invariant_tensor_basis(d - 1, d).size(), static_cast<std::size_t>(f));
  }
}

TEST(Invariants, SmallCases) {
  // F_0: everything is invariant; d = 1: only f_0
  EXPECT_EQ(invariant_tensor_basis(0, 4).size(), 1u);
  EXPECT_EQ(invariant_tensor_basis(3, 1).size(), 1u);
  const auto b = invariant_tensor_basis(1, 2);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0], Tensor::basis(1, {0, 0}));
  EXPECT_EQ(b[1], Tensor::basis(1, {1, 0}) - Tensor::basis(1, {0, 1}));
}

TEST(Invariants, DimensionMatchesQuotientFormula) {
  for (int k = 0; k <= 3; ++k)
    for (int d = 1; d <= 4; ++d)
      EXPECT_EQ(static_cast<long>(invariant_tensor_basis(k, d).size()), quotient_formula(d, k)) << k << "," << d;
}

TEST(Invariants, FixedByOneParameterGroup) {
  Sampler s(31);
  for (int k = 1; k <= 2; ++k)
    for (int d = 2; d <= 3; ++d)
      for (const auto& t : invariant_tensor_basis(k, d)) EXPECT_EQ(apply_one_parameter(t, s.nonzero_rational()), t);
}

TEST(Invariants, ResourceCap) {
  Limits tight;
  tight.max_box = 10;
  EXPECT_THROW(invariant_tensor_basis(2, 3, tight), ResourceLimit);
}

TEST(Wronskian, ByHand) {
  EXPECT_EQ(wronskian_W({0, 1}, 2, 1), Y(1, 0) * Y(2, 0));
  EXPECT_EQ(wronskian_W({0, 0}, 2, 1), Y(1, 0) * Y(2, 1) - Y(2, 0) * Y(1, 1));
  // column 2 shifted twice: entry (2,2) = 2!/0! Y2^(0)
  EXPECT_EQ(wronskian_W({0, 2}, 2, 2), Poly());
  EXPECT_THROW(wronskian_W({0}, 2, 1), IndexOutOfRange);
  EXPECT_THROW(wronskian_W({0, 3}, 2, 2), IndexOutOfRange);
}

TEST(Wronskian, IndicesCountIsFactorial) {
  EXPECT_EQ(wronskian_indices(1).size(), 1u);
  EXPECT_EQ(wronskian_indices(3).size(), 6u);
  EXPECT_EQ(wronskian_indices(4).size(), 24u);
}

TEST(Wronskian, BasisOfInvariants) {
  for (int d = 1; d <= 4; ++d) {
    const auto rep = verify_wronskian_basis(d);
    EXPECT_TRUE(rep.pass()) << d;
  }
}

TEST(Bridge, RoundTripMultilinear) {
  Sampler s(8);
  for (int i = 0; i < 20; ++i) {
    const Tensor t = s.tensor(2, 3, 5);
    EXPECT_EQ(multilinear_to_tensor(tensor_to_multilinear(t), 2, 3), t);
  }
  EXPECT_THROW(multilinear_to_tensor(Y(1, 0) * Y(1, 1), 1, 2), Error);
  EXPECT_THROW(multilinear_to_tensor(Y(1, 0), 1, 2), Error);
}

TEST(Bridge, JalphaAndHarmonicImage) {
  // J^(1,0) f2 (x) f2 = 2 f1 (x) f2
  EXPECT_EQ(jalpha_tensor({1, 0}, 2), Rational(2) * Tensor::basis(2, {1, 2}));
  EXPECT_TRUE(jalpha_tensor({3, 0}, 2).is_zero());
  // g(f1 (x) f0 - f0 (x) f1) = Z1 - Z2 for k = 1
  EXPECT_EQ(to_harmonic(Tensor::basis(1, {1, 0}) - Tensor::basis(1, {0, 1})), Z(1) - Z(2));
  // f_a -> prod Z^a / (k!)^d
  EXPECT_EQ(to_harmonic(Tensor::basis(2, {2, 1})), Poly::constant(make_rational(1, 4)) * Z(1) * Z(1) * Z(2));
}

TEST(Bridge, IntertwinesWithElementarySymmetricOperators) {
  Sampler s(44);
  for (int i = 0; i < 40; ++i) {
    const int d = s.uniform(2, 4), k = s.uniform(1, 3);
    const Tensor t = s.tensor(k, d, 4);
    const int l = s.uniform(1, d);
    std::vector<int> all(static_cast<std::size_t>(d));
    std::iota(all.begin(), all.end(), 1);
    const Poly op = Rational(factorial(static_cast<unsigned long>(l))) * elementary_symmetric(all, l);
    EXPECT_EQ(to_harmonic(apply_J_ell(t, l)), apply_differential_operator(op, to_harmonic(t)));
  }
}

TEST(Bridge, OneParameterExpansion) {
  // (I + aJ)^{(x)d} = sum_l a^l / l! J^(l) with the ordered J^(l)
  Sampler s(3);
  for (int i = 0; i < 40; ++i) {
    const int d = s.uniform(1, 4), k = s.uniform(0, 3);
    const Tensor t = s.tensor(k, d, 4);
    const Rational a = s.rational();
    Tensor rhs = t;
    Rational ap = 1;
    for (int l = 1; l <= d; ++l) {
      ap *= a;
      rhs += ap / Rational(factorial(static_cast<unsigned long>(l))) * apply_J_ell(t, l);
    }
    EXPECT_EQ(apply_one_parameter(t, a), rhs);
  }
}

TEST(Bridge, ConjugateNilpotentGivesSameDimension) {
  Sampler s(17);
  for (int i = 0; i < 6; ++i) {
    const int k = s.uniform(1, 2), d = s.uniform(2, 3);
    const auto S = s.invertible_matrix(k + 1);
    const auto Jc = Sampler::multiply(Sampler::multiply(S, NilpotentModel{k}.matrix()), inverse(S));
    EXPECT_EQ(invariant_dimension_for(Jc, d), invariant_tensor_basis(k, d).size());
  }
}

TEST(Bridge, SymmetrizationIsInvariant) {
  // W_(0,0) with slots sent to X0, X1 is the classical Wronskian
  const Tensor w = multilinear_to_tensor(wronskian_W({0, 0}, 2, 1), 1, 2);
  const Poly expected = Poly::var(VarId::X(0, 0)) * Poly::var(VarId::X(1, 1)) -
                        Poly::var(VarId::X(1, 0)) * Poly::var(VarId::X(0, 1));
  EXPECT_EQ(project_to_symmetric(w, {0, 1}), expected);
  EXPECT_TRUE(project_to_symmetric(w, {0, 0}).is_zero());
  EXPECT_THROW(project_to_symmetric(w, {0}), IndexOutOfRange);
  for (const auto& t : invariant_tensor_basis(2, 3))
    EXPECT_TRUE(is_diff_homogeneous(project_to_symmetric(t, {0, 1, 1}), 3));
}
