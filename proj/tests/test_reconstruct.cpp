#include <gtest/gtest.h>

#include <memory>

#include "steenrod/io.hpp"
#include "steenrod/reconstruct.hpp"

using namespace steenrod;
using namespace steenrod::fixtures;

namespace {

std::shared_ptr<const SimplicialComplex> share(SimplicialComplex X) {
  return std::make_shared<const SimplicialComplex>(std::move(X));
}

std::shared_ptr<const Presheaf> share(Presheaf N) { return std::make_shared<const Presheaf>(std::move(N)); }

std::string data(const std::string& name) { return std::string(STEENROD_TEST_DATA) + "/" + name; }

}  // namespace

TEST(Reconstruct, IdentityAndZero) {
  const auto X = share(standard_simplex(2));
  const auto N = share(random_presheaf(X, 2, 2, 11));
  const auto M = share(random_presheaf(X, 2, 2, 12));
  const auto A = assemble(N);
  const auto B = assemble(M);

  const ReconstructionResult id = reconstruct(ComoduleMorphism{A, A, GradedMatrix::identity(A->basis())});
  ASSERT_TRUE(id.accepted());
  EXPECT_EQ(*id.morphism, PresheafMorphism::identity(N));
  EXPECT_GT(id.support_checks, 0u);

  const ReconstructionResult zero = reconstruct(ComoduleMorphism{A, B, GradedMatrix(A->basis(), B->basis(), 0)});
  ASSERT_TRUE(zero.accepted());
  EXPECT_TRUE(zero.morphism->is_zero());
}

TEST(Reconstruct, RoundTripOnSampledMorphisms) {
  for (auto X : {share(standard_simplex(2)), share(simplex_boundary(3))}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto N = share(random_presheaf(X, 2, 1, seed));
      const auto M = share(random_presheaf(X, 2, 1, seed + 1000));
      const PresheafMorphism F = random_morphism(N, M, seed);
      const ReconstructionResult r = reconstruct(assemble_morphism(F));
      ASSERT_TRUE(r.accepted()) << "seed " << seed << ": " << r.witness->reason;
      EXPECT_EQ(*r.morphism, F);
    }
  }
}

TEST(Reconstruct, ImageAboveTheSimplexIsRejected) {
  const auto X = share(load_complex(data("edge.json")));
  const auto A = assemble(share(load_presheaf(X, data("skyscraper_vertex0_deg1.json"))));
  const auto B = assemble(share(load_presheaf(X, data("skyscraper_edge01.json"))));
  // [0⊗g] ↦ [01⊗g] is a chain map and ∇_0-equivariant, but lands off [0].
  const ComoduleMorphism f = parse_assembly_map(A, B, R"({"entries": [[0, 0, 1]]})");
  const ReconstructionResult r = reconstruct(f);
  ASSERT_FALSE(r.accepted());
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->i, 1);
  EXPECT_FALSE(r.witness->twisted);
  EXPECT_FALSE(r.witness->discrepancy.is_zero());
  EXPECT_TRUE(replay_witness(f, *r.witness));
  EXPECT_FALSE(validate_comodule_morphism(f).ok());
}

TEST(Reconstruct, NonChainMapIsRejected) {
  const auto X = share(standard_simplex(1));
  const auto A = assemble(share(constant_presheaf(X, ChainComplexData::unit(0))));
  GradedMatrix m(A->basis(), A->basis(), 0);
  const GenKey v0 = A->key_of(BasisPair{X->index_of(Simplex{0}), GenKey{0, 0}});
  m.add_entry(0, v0.index, v0.index, 1);
  const ComoduleMorphism f{A, A, m};
  const ReconstructionResult r = reconstruct(f);
  ASSERT_FALSE(r.accepted());
  EXPECT_EQ(r.witness->i, -1);
  EXPECT_FALSE(r.witness->chain_discrepancy.is_zero());
  EXPECT_TRUE(replay_witness(f, *r.witness));
}

TEST(Reconstruct, WitnessDoesNotReplayAgainstAComoduleMorphism) {
  const auto X = share(load_complex(data("edge.json")));
  const auto A = assemble(share(load_presheaf(X, data("skyscraper_vertex0_deg1.json"))));
  const auto B = assemble(share(load_presheaf(X, data("skyscraper_edge01.json"))));
  const ComoduleMorphism bad = parse_assembly_map(A, B, R"({"entries": [[0, 0, 1]]})");
  const RejectionWitness w = *reconstruct(bad).witness;
  EXPECT_FALSE(replay_witness(ComoduleMorphism{A, B, GradedMatrix(A->basis(), B->basis(), 0)}, w));
}

TEST(Reconstruct, TwoEdgeSearchFindsANabla0OnlyMap) {
  const auto X = share(load_complex(data("two_edges.json")));
  const auto A = assemble(share(load_presheaf(X, data("skyscraper_edge01.json"))));
  const auto B = assemble(share(load_presheaf(X, data("skyscraper_vertex0_deg1.json"))));
  EXPECT_FALSE(nabla0_equivariant_maps(*A, *B).empty());
  const auto found = find_nabla0_only_map(A, B);
  ASSERT_TRUE(found.has_value());
  const ReconstructionResult r = reconstruct(*found);
  ASSERT_FALSE(r.accepted());
  EXPECT_GE(r.witness->i, 1);
  EXPECT_TRUE(replay_witness(*found, *r.witness));

  // Between constant presheaves every ∇_0-equivariant chain map is a comodule map.
  const auto C = assemble(share(constant_presheaf(X, ChainComplexData::unit(0))));
  EXPECT_FALSE(find_nabla0_only_map(C, C).has_value());
}

TEST(Faithfulness, SampledAndBasisInjective) {
  const auto X = share(simplex_boundary(3));
  const auto N = share(random_presheaf(X, 2, 1, 3));
  const auto M = share(random_presheaf(X, 2, 1, 4));
  const SampleReport r = faithfulness_check(N, M, 10, 0);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.trials, 10u);
  EXPECT_EQ(r.passed + r.skipped, 10u);

  const SampleReport none = faithfulness_check(N, M, 0, 0);
  EXPECT_EQ(none.trials, 0u);
  EXPECT_EQ(none.passed, 0u);

  const auto A = assemble(N);
  const PresheafMorphism twice = PresheafMorphism::identity(N).scaled(2);
  EXPECT_FALSE(assemble_morphism(twice, A, A).map.is_zero());
}

TEST(Fullness, RoundTripReport) {
  const auto X = share(projective_plane());
  const auto N = share(random_presheaf(X, 2, 1, 8));
  const SampleReport r = fullness_roundtrip(N, N, 5, 42);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.passed, 5u);
}
