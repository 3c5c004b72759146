#include <gtest/gtest.h>

#include <memory>
#include <thread>

#include "steenrod/assembly.hpp"
#include "steenrod/errors.hpp"

using namespace steenrod;
using namespace steenrod::fixtures;

namespace {

std::shared_ptr<const SimplicialComplex> share(SimplicialComplex X) {
  return std::make_shared<const SimplicialComplex>(std::move(X));
}

std::shared_ptr<const Presheaf> share(Presheaf N) { return std::make_shared<const Presheaf>(std::move(N)); }

}  // namespace

TEST(Assembly, ConstantOnEdge) {
  const auto X = share(standard_simplex(1));
  const auto A = assemble(share(constant_presheaf(X, ChainComplexData::unit(0))));
  ASSERT_EQ(A->basis().total_rank(), 3u);
  const GenKey edge = A->key_of(BasisPair{X->index_of(Simplex{0, 1}), GenKey{0, 0}});
  FormalChain expected;
  expected.add(A->key_of(BasisPair{X->index_of(Simplex{1}), GenKey{0, 0}}), 1);
  expected.add(A->key_of(BasisPair{X->index_of(Simplex{0}), GenKey{0, 0}}), -1);
  EXPECT_EQ(A->differential().image(edge), expected);
}

TEST(Assembly, SkyscraperAtTopSimplex) {
  const auto X = share(standard_simplex(2));
  const auto A = assemble(share(skyscraper_presheaf(X, Simplex{0, 1, 2}, ChainComplexData::unit(0))));
  EXPECT_EQ(A->basis().total_rank(), 1u);
  EXPECT_EQ(A->basis().rank(2), 1u);
  EXPECT_TRUE(A->differential().is_zero());
}

TEST(Assembly, ZeroPresheaf) {
  const auto X = share(standard_simplex(2));
  const auto A = assemble(share(zero_presheaf(X)));
  EXPECT_EQ(A->basis().total_rank(), 0u);
  EXPECT_TRUE(validate_comodule(*A).ok());
}

TEST(Assembly, Canonicalize) {
  const auto X = share(standard_simplex(2));
  const auto C = assemble(share(constant_presheaf(X, ChainComplexData::unit(0))));
  const FormalChain one(GenKey{0, 0}, 1);
  const Simplex x{1};
  const Simplex y{0, 1, 2};
  EXPECT_EQ(C->canonicalize(x, y, one), FormalChain(C->key_of(BasisPair{X->index_of(x), GenKey{0, 0}}), 1));
  EXPECT_EQ(C->canonicalize(y, y, one.scaled(3)),
            FormalChain(C->key_of(BasisPair{X->index_of(y), GenKey{0, 0}}), 3));
  EXPECT_THROW(C->canonicalize(Simplex{0, 1}, Simplex{1, 2}, one), RelationError);

  const auto S = assemble(share(skyscraper_presheaf(X, y, ChainComplexData::unit(0))));
  EXPECT_TRUE(S->canonicalize(x, y, one).is_zero());
}

TEST(Assembly, InvalidPresheafIsRejected) {
  const auto X = share(standard_simplex(1));
  GradedBasis b = GradedBasis::from_ranks({{0, 1}, {1, 1}});
  GradedMatrix d(b, b, -1);
  d.add_entry(1, 0, 0, 1);
  const ChainComplexData cone(b, d);
  GradedMatrix bad(b, b, 0);
  bad.add_entry(0, 0, 0, 1);
  std::map<std::pair<std::size_t, std::size_t>, GradedMatrix> facets;
  facets.emplace(std::pair{X->index_of(Simplex{0}), X->index_of(Simplex{0, 1})}, bad);
  EXPECT_THROW(assemble(share(Presheaf(X, {cone, cone, cone}, facets))), MalformedInputError);
}

TEST(Assembly, SupportBoundOnEveryPair) {
  const auto X = share(simplex_boundary(3));
  const auto A = assemble(share(random_presheaf(X, 2, 2, 17)));
  for (const GenKey& g : A->generators()) {
    const Simplex& x = A->simplex_of(g);
    for (int i = x.dim() + 1; i <= X->dim() + 1; ++i) EXPECT_TRUE(A->nabla(i, false, g).is_zero());
    const CoactionValue top = A->nabla(x.dim(), false, g);
    ASSERT_EQ(top.size(), 1u);
    EXPECT_EQ(top.terms().begin()->first, (CoactionValue::Key{x, g}));
  }
}

TEST(Assembly, DegreeBookkeeping) {
  const auto X = share(standard_simplex(2));
  const auto A = assemble(share(random_presheaf(X, 2, 2, 5)));
  for (const GenKey& g : A->generators()) {
    const BasisPair& p = A->pair_of(g);
    EXPECT_EQ(g.degree, X->simplex(p.simplex).dim() + p.generator.degree);
    EXPECT_EQ(A->from_global_index(A->global_index(g)), g);
    for (int i = 0; i <= 3; ++i) {
      for (const CoactionValue v = A->nabla(i, true, g); const auto& [k, c] : v.terms()) {
        EXPECT_EQ(k.first.dim() + k.second.degree, g.degree + i);
      }
    }
  }
  EXPECT_THROW(A->from_global_index(A->basis().total_rank()), IndexError);
}

TEST(Comodule, ConstantOnDelta3AndRandomPresheaves) {
  const auto X = share(standard_simplex(3));
  EXPECT_TRUE(validate_comodule(*assemble(share(constant_presheaf(X, ChainComplexData::unit(0))))).ok());
  const auto T = share(standard_simplex(2));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComoduleReport r = validate_comodule(*assemble(share(random_presheaf(T, 2, 2, seed))));
    EXPECT_TRUE(r.ok()) << "seed " << seed << ": " << r.failures.front().check;
  }
}

TEST(ComoduleMorphism, AssembledMorphismsPassAndFunctorLaws) {
  const auto X = share(standard_simplex(2));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto N = share(random_presheaf(X, 2, 1, seed));
    const auto M = share(random_presheaf(X, 2, 1, seed + 50));
    const auto A = assemble(N);
    const auto B = assemble(M);
    const PresheafMorphism F = random_morphism(N, M, seed);
    const PresheafMorphism G = random_morphism(M, M, seed + 1);
    EXPECT_TRUE(validate_comodule_morphism(assemble_morphism(F, A, B)).ok());
    EXPECT_EQ(assemble_morphism(G.compose(F), A, B).map,
              assemble_morphism(G, B, B).map.compose(assemble_morphism(F, A, B).map));
    EXPECT_EQ(assemble_morphism(PresheafMorphism::identity(N), A, A).map, GradedMatrix::identity(A->basis()));
    EXPECT_TRUE(assemble_morphism(PresheafMorphism::zero(N, M), A, B).map.is_zero());
  }
}

TEST(ComoduleMorphism, SwappingGeneratorsAcrossEdgesFails) {
  const auto X = share(build_complex(std::vector<std::vector<Vertex>>{{0, 1}, {2, 3}}));
  std::vector<ChainComplexData> stalks(X->size());
  stalks[X->index_of(Simplex{0, 1})] = ChainComplexData::unit(0);
  stalks[X->index_of(Simplex{2, 3})] = ChainComplexData::unit(0);
  const auto A = assemble(share(Presheaf(X, stalks, {})));
  ASSERT_EQ(A->basis().rank(1), 2u);
  GradedMatrix swap(A->basis(), A->basis(), 0);
  swap.add_entry(1, 1, 0, 1);
  swap.add_entry(1, 0, 1, 1);
  const ComoduleMorphism f{A, A, swap};
  ASSERT_TRUE(verify_chain_map(swap, A->complex(), A->complex()));
  const ComoduleReport r = validate_comodule_morphism(f);
  ASSERT_FALSE(r.ok());
  EXPECT_FALSE(equivariance_defect(f, r.failures[0].i, r.failures[0].twisted, r.failures[0].generator).is_zero());
  EXPECT_TRUE(validate_comodule_morphism(ComoduleMorphism{A, A, GradedMatrix::identity(A->basis())}).ok());
}

TEST(Assembly, ConcurrentCoactionQueries) {
  const auto X = share(simplex_boundary(3));
  const auto N = share(random_presheaf(X, 2, 2, 9));
  const auto shared = assemble(N);
  const auto reference = assemble(N);
  const auto gens = shared->generators();
  std::vector<int> mismatches(4, 0);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const GenKey g = gens[(k + t * 5) % gens.size()];
        for (int i = 0; i <= 3; ++i) {
          for (bool tw : {false, true}) {
            mismatches[t] += !(shared->nabla(i, tw, g) ==
                               reference->nabla_representative(i, tw, reference->simplex_of(g),
                                                               reference->simplex_of(g),
                                                               FormalChain(reference->pair_of(g).generator, 1)));
          }
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  for (int m : mismatches) EXPECT_EQ(m, 0);
}
