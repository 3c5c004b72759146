#include <gtest/gtest.h>

#include <functional>
#include <memory>
#include <thread>
#include <tuple>

#include "steenrod/cupi.hpp"
#include "steenrod/errors.hpp"

using namespace steenrod;
using namespace steenrod::fixtures;

namespace {

TensorChain chain(std::initializer_list<std::tuple<Coeff, Simplex, Simplex>> terms) {
  TensorChain out;
  for (const auto& [c, a, b] : terms) out.add(a, b, c);
  return out;
}

// ∂(w x) − (−1)^i w(∂x) − (∂w)(x)
TensorChain relation_defect(const CupStructure& cup, const std::function<TensorChain(const Simplex&)>& w,
                            const std::function<TensorChain(const Simplex&)>& dw, int i, const Simplex& x) {
  TensorChain out = w(x).boundary();
  for (int u = 0; x.dim() > 0 && u <= x.dim(); ++u) {
    out -= w(x.face(u)).scaled(parity_sign(u) * parity_sign(i));
  }
  out -= dw(x);
  (void)cup;
  return out;
}

}  // namespace

TEST(CupI, AlexanderWhitneyOnEdgeAndTriangle) {
  const CupStructure cup(standard_simplex(3));
  EXPECT_EQ(cup.cup_i(0, Simplex{0, 1}), chain({{1, {0}, {0, 1}}, {1, {0, 1}, {1}}}));
  EXPECT_EQ(cup.cup_i(0, Simplex{0, 1, 2}),
            chain({{1, {0}, {0, 1, 2}}, {1, {0, 1}, {1, 2}}, {1, {0, 1, 2}, {2}}}));
  EXPECT_EQ(cup.aw_coproduct(Simplex{0, 1, 2}), cup.cup_i(0, Simplex{0, 1, 2}));
}

TEST(CupI, FrozenValues) {
  const CupStructure cup(standard_simplex(3));
  EXPECT_EQ(cup.cup_i(1, Simplex{0, 1}), chain({{-1, {0, 1}, {0, 1}}}));
  EXPECT_EQ(cup.cup_i(1, Simplex{0, 1, 2}),
            chain({{-1, {0, 2}, {0, 1, 2}}, {1, {0, 1, 2}, {0, 1}}, {1, {0, 1, 2}, {1, 2}}}));
  EXPECT_EQ(cup.cup_i(2, Simplex{0, 1, 2}), chain({{1, {0, 1, 2}, {0, 1, 2}}}));
  EXPECT_EQ(cup.cup_i(1, Simplex{0, 1, 2, 3}), chain({{-1, {0, 3}, {0, 1, 2, 3}},
                                                      {1, {0, 1, 3}, {1, 2, 3}},
                                                      {-1, {0, 2, 3}, {0, 1, 2}},
                                                      {-1, {0, 1, 2, 3}, {0, 1}},
                                                      {-1, {0, 1, 2, 3}, {1, 2}},
                                                      {-1, {0, 1, 2, 3}, {2, 3}}}));
  EXPECT_EQ(cup.cup_i(2, Simplex{0, 1, 2, 3}), chain({{1, {0, 1, 2}, {0, 1, 2, 3}},
                                                      {1, {0, 2, 3}, {0, 1, 2, 3}},
                                                      {1, {0, 1, 2, 3}, {0, 1, 3}},
                                                      {1, {0, 1, 2, 3}, {1, 2, 3}}}));
  EXPECT_EQ(cup.cup_i(3, Simplex{0, 1, 2, 3}), chain({{-1, {0, 1, 2, 3}, {0, 1, 2, 3}}}));
}

TEST(CupI, VanishesOutsideRange) {
  const CupStructure cup(standard_simplex(2));
  EXPECT_TRUE(cup.cup_i(3, Simplex{0, 1}).is_zero());
  EXPECT_TRUE(cup.cup_i(-1, Simplex{0, 1}).is_zero());
  EXPECT_EQ(cup.cup_i(3, Simplex{0, 1}).str(), "0\n");
  EXPECT_THROW(cup.cup_i(0, Simplex{0, 5}), UnknownSimplexError);
}

TEST(CupI, TransposeIsKoszulSigned) {
  const CupStructure cup(standard_simplex(2));
  const TensorChain t = cup.cup_i_T(0, Simplex{0, 1, 2});
  // T([0,1]⊗[1,2]) = (−1)^{1·1} [1,2]⊗[0,1]
  EXPECT_EQ(t.coeff(Simplex{1, 2}, Simplex{0, 1}), -1);
  EXPECT_EQ(t.coeff(Simplex{0, 1, 2}, Simplex{0}), 1);
  EXPECT_EQ(t.transposed(), cup.cup_i(0, Simplex{0, 1, 2}));
}

TEST(CupI, JoinSignsAndMembership) {
  const CupStructure cup(simplex_boundary(2));
  EXPECT_EQ(cup.join(Simplex{0}, Simplex{1}), SimplexChain(Simplex{0, 1}, 1));
  EXPECT_EQ(cup.join(Simplex{1}, Simplex{0}), SimplexChain(Simplex{0, 1}, -1));
  EXPECT_TRUE(cup.join(Simplex{0}, Simplex{0, 1}).is_zero());
  // [0,1,2] is not in the boundary of the triangle.
  EXPECT_TRUE(cup.join(Simplex{0, 1}, Simplex{2}).is_zero());
}

TEST(CupI, MemoIsTransparent) {
  const auto X = std::make_shared<const SimplicialComplex>(standard_simplex(4));
  const CupStructure cached(X);
  const CupStructure fresh(X);
  for (const Simplex& x : X->simplices()) {
    for (int i = 0; i <= 5; ++i) {
      EXPECT_EQ(cached.cup_i(i, x), fresh.cup_i_uncached(i, x));
      EXPECT_EQ(cached.cup_i(i, x), cached.cup_i(i, x));
    }
  }
  EXPECT_GT(cached.cache_size(), 0u);
}

TEST(CupI, ConcurrentQueriesAgree) {
  const auto X = std::make_shared<const SimplicialComplex>(standard_simplex(5));
  const CupStructure shared(X);
  const CupStructure reference(X);
  std::vector<std::thread> threads;
  std::vector<int> mismatches(4, 0);
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (std::size_t k = 0; k < X->size(); ++k) {
        const Simplex& x = X->simplex((k * 7 + t * 13) % X->size());
        for (int i = 0; i <= 6; ++i) mismatches[t] += !(shared.cup_i(i, x) == reference.cup_i_uncached(i, x));
      }
    });
  }
  for (auto& th : threads) th.join();
  for (int m : mismatches) EXPECT_EQ(m, 0);
}

TEST(CupI, WGeneratorBoundary) {
  using V = std::vector<std::pair<WGenerator, Coeff>>;
  EXPECT_TRUE((WGenerator{0, false}.boundary().empty()));
  EXPECT_EQ((WGenerator{1, false}.boundary()), (V{{{0, false}, 1}, {{0, true}, -1}}));
  EXPECT_EQ((WGenerator{2, true}.boundary()), (V{{{1, true}, 1}, {{1, false}, 1}}));
}

TEST(CupI, BoundaryRelationAndSignIsForced) {
  const CupStructure cup(standard_simplex(4));
  const Simplex x{0, 1, 2, 3, 4};
  for (int i = 1; i <= 5; ++i) {
    auto w = [&](const Simplex& y) { return cup.cup_i(i, y); };
    auto dw = [&](const Simplex& y) {
      TensorChain out = cup.cup_i(i - 1, y);
      out += cup.cup_i_T(i - 1, y).scaled(parity_sign(i));
      return out;
    };
    EXPECT_TRUE(relation_defect(cup, w, dw, i, x).is_zero()) << "i=" << i;
    if (i > x.dim()) continue;
    // Negating △_i breaks the relation, so the sign is not a free choice.
    auto negated = [&](const Simplex& y) { return cup.cup_i(i, y).scaled(-1); };
    EXPECT_FALSE(relation_defect(cup, negated, dw, i, x).is_zero()) << "i=" << i;
  }
}

TEST(CupI, Augmentation) {
  SimplexChain c;
  c.add(Simplex{0}, 2);
  c.add(Simplex{3}, -5);
  EXPECT_EQ(augmentation(c), -3);
  EXPECT_THROW(augmentation(SimplexChain(Simplex{0, 1}, 1)), DegreeError);
}

TEST(CoalgebraValidator, PassesOnFixtures) {
  for (const SimplicialComplex& X : {standard_simplex(4), simplex_boundary(3), torus()}) {
    const CoalgebraReport r = validate_symmetric_coalgebra(X, X.dim() + 1);
    EXPECT_TRUE(r.ok()) << r.failures.front().check << " at " << r.failures.front().simplex.str();
    EXPECT_EQ(r.simplices_checked, X.size());
  }
}

TEST(CoalgebraValidator, SpecialValues) {
  const CupStructure cup(standard_simplex(5));
  for (const Simplex& x : cup.complex().simplices()) EXPECT_TRUE(check_special_values(cup, x, 6).empty());
}
