#include <gtest/gtest.h>

#include <memory>

#include "steenrod/errors.hpp"
#include "steenrod/presheaf.hpp"

using namespace steenrod;
using namespace steenrod::fixtures;

namespace {

std::shared_ptr<const SimplicialComplex> share(SimplicialComplex X) {
  return std::make_shared<const SimplicialComplex>(std::move(X));
}

// Z(1) --1--> Z(0)
ChainComplexData unit_cone() {
  GradedBasis b = GradedBasis::from_ranks({{0, 1}, {1, 1}});
  GradedMatrix d(b, b, -1);
  d.add_entry(1, 0, 0, 1);
  return ChainComplexData(b, d);
}

}  // namespace

TEST(Presheaf, FixturesValidate) {
  const auto X = share(standard_simplex(3));
  EXPECT_TRUE(validate_presheaf(constant_presheaf(X, unit_cone())).ok());
  EXPECT_TRUE(validate_presheaf(skyscraper_presheaf(X, Simplex{0, 2}, unit_cone())).ok());
  EXPECT_TRUE(validate_presheaf(zero_presheaf(X)).ok());
}

TEST(Presheaf, Restrictions) {
  const auto X = share(standard_simplex(2));
  const Presheaf N = constant_presheaf(X, ChainComplexData::unit(0));
  const GradedMatrix id = GradedMatrix::identity(N.stalk(0).basis());
  EXPECT_EQ(N.restriction(Simplex{0}, Simplex{0, 1, 2}), id);
  EXPECT_EQ(N.restriction(Simplex{1, 2}, Simplex{1, 2}), id);
  EXPECT_THROW(N.restriction(Simplex{0, 1}, Simplex{1, 2}), RelationError);
  EXPECT_THROW(N.facet_restriction(Simplex{0}, Simplex{0, 1, 2}), RelationError);

  const Presheaf S = skyscraper_presheaf(X, Simplex{0, 1, 2}, ChainComplexData::unit(0));
  EXPECT_TRUE(S.restriction(Simplex{0}, Simplex{0, 1, 2}).is_zero());
}

TEST(Presheaf, NonChainMapRestrictionIsLocated) {
  const auto X = share(standard_simplex(1));
  std::vector<ChainComplexData> stalks(X->size());
  stalks[X->index_of(Simplex{0})] = unit_cone();
  stalks[X->index_of(Simplex{1})] = unit_cone();
  stalks[X->index_of(Simplex{0, 1})] = unit_cone();
  const std::size_t edge = X->index_of(Simplex{0, 1});
  std::map<std::pair<std::size_t, std::size_t>, GradedMatrix> facets;
  facets.emplace(std::pair{X->index_of(Simplex{1}), edge}, GradedMatrix::identity(unit_cone().basis()));
  // Degree 0 only: R∂ ≠ ∂R on the degree-1 generator.
  GradedMatrix bad(unit_cone().basis(), unit_cone().basis(), 0);
  bad.add_entry(0, 0, 0, 1);
  facets.emplace(std::pair{X->index_of(Simplex{0}), edge}, bad);
  const PresheafReport r = validate_presheaf(Presheaf(X, stalks, facets));
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].face, (Simplex{0}));
  EXPECT_EQ(r.failures[0].simplex, (Simplex{0, 1}));
}

TEST(Presheaf, DiamondFailureIsLocated) {
  const auto X = share(standard_simplex(2));
  const ChainComplexData z = ChainComplexData::unit(0);
  const Presheaf constant = constant_presheaf(X, z);
  std::vector<ChainComplexData> stalks(X->size(), z);
  std::map<std::pair<std::size_t, std::size_t>, GradedMatrix> facets;
  for (const Simplex& y : X->simplices()) {
    for (int u = 0; y.dim() > 0 && u <= y.dim(); ++u) {
      GradedMatrix m = constant.facet_restriction(y.face(u), y);
      if (y == Simplex{0, 1} && u == 1) m = m.scaled(-1);
      facets.emplace(std::pair{X->index_of(y.face(u)), X->index_of(y)}, m);
    }
  }
  const PresheafReport r = validate_presheaf(Presheaf(X, stalks, facets));
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.failures[0].simplex, (Simplex{0, 1, 2}));
  EXPECT_EQ(r.failures[0].face, (Simplex{0}));
}

TEST(Presheaf, ShapeErrors) {
  const auto X = share(standard_simplex(1));
  EXPECT_THROW(Presheaf(X, std::vector<ChainComplexData>(2), {}), ShapeError);
}

TEST(RandomPresheaf, ValidReproducibleAndBounded) {
  for (auto X : {share(standard_simplex(2)), share(simplex_boundary(3)), share(projective_plane())}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const Presheaf N = random_presheaf(X, 3, 2, seed);
      EXPECT_TRUE(validate_presheaf(N).ok()) << "seed " << seed;
      for (std::size_t i = 0; i < X->size(); ++i) {
        for (int d : N.stalk(i).basis().degrees()) {
          EXPECT_GE(d, 0);
          EXPECT_LE(d, 2);
          EXPECT_LE(N.stalk(i).basis().rank(d), 3u);
        }
      }
      const Presheaf again = random_presheaf(X, 3, 2, seed);
      for (std::size_t i = 0; i < X->size(); ++i) {
        EXPECT_EQ(N.stalk(i).differential(), again.stalk(i).differential());
      }
    }
  }
  EXPECT_THROW(random_presheaf(share(point()), 0, 1, 0), DomainError);
}

TEST(Morphism, IdentityZeroAndAlgebra) {
  const auto X = share(simplex_boundary(3));
  const auto N = std::make_shared<const Presheaf>(random_presheaf(X, 2, 1, 4));
  const PresheafMorphism id = PresheafMorphism::identity(N);
  const PresheafMorphism zero = PresheafMorphism::zero(N, N);
  EXPECT_TRUE(validate_morphism(id).ok());
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(id.compose(id), id);
  EXPECT_EQ(id + id, id.scaled(2));
  EXPECT_EQ(id.compose(zero), zero);
}

TEST(Morphism, BasisElementsAreMorphisms) {
  const auto X = share(standard_simplex(2));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto N = std::make_shared<const Presheaf>(random_presheaf(X, 2, 1, seed));
    const auto M = std::make_shared<const Presheaf>(random_presheaf(X, 2, 1, seed + 100));
    for (const PresheafMorphism& F : morphism_basis(N, M)) {
      EXPECT_TRUE(validate_morphism(F).ok());
      EXPECT_FALSE(F.is_zero());
    }
    // Endomorphisms always include the identity.
    EXPECT_FALSE(morphism_basis(N, N).empty());
    EXPECT_TRUE(validate_morphism(random_morphism(N, M, seed)).ok());
  }
}

TEST(Morphism, NonNaturalFamilyFails) {
  const auto X = share(standard_simplex(1));
  const auto N = std::make_shared<const Presheaf>(constant_presheaf(X, ChainComplexData::unit(0)));
  std::vector<GradedMatrix> comps;
  for (std::size_t i = 0; i < X->size(); ++i) comps.push_back(GradedMatrix::identity(N->stalk(i).basis()));
  comps[X->index_of(Simplex{0})] = comps[0].scaled(2);
  const PresheafReport r = validate_morphism(PresheafMorphism(N, N, comps));
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.failures[0].face, (Simplex{0}));
}
