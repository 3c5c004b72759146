#pragma once

// Recovering presheaf morphisms from comodule morphisms between assemblies.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steenrod/assembly.hpp"

namespace steenrod {

/// A concrete failed identity. For i ≥ 0 the identity is
/// (id⊗f)∇_i = ∇'_i f (or its ∇ᵀ_i form) on `generator`, with `discrepancy`
/// the nonzero difference. i = −1 marks a failure of ∂f = f∂ at `generator`,
/// with the column of ∂f − f∂ in `chain_discrepancy`.
struct RejectionWitness {
  std::string reason;
  GenKey generator;
  int i = 0;
  bool twisted = false;
  CoactionValue discrepancy;
  FormalChain chain_discrepancy;
  std::string detail;
};

struct ReconstructionResult {
  std::optional<PresheafMorphism> morphism;
  std::optional<RejectionWitness> witness;
  std::size_t support_checks = 0;
  std::size_t naturality_checks = 0;

  bool accepted() const { return morphism.has_value(); }
};

/// Reads F_x off f([x⊗b]) after checking that every image is supported on the
/// simplex x, then verifies F is a presheaf morphism with A F = f.
ReconstructionResult reconstruct(const ComoduleMorphism& f);

/// Re-evaluates the identity named by the witness against f. True iff it
/// fails with exactly the recorded discrepancy.
bool replay_witness(const ComoduleMorphism& f, const RejectionWitness& witness);

struct SampleReport {
  std::size_t trials = 0;
  std::size_t passed = 0;
  /// Trials whose sampled morphism was zero (only when no nonzero exists).
  std::size_t skipped = 0;
  std::vector<std::uint64_t> failed_seeds;
  bool zero_ok = true;
  /// Assembly is injective on a basis of the morphism space.
  bool injective_on_basis = true;
  double seconds = 0.0;

  bool ok() const { return failed_seeds.empty() && zero_ok && injective_on_basis; }
};

/// A F ≠ 0 for sampled nonzero F (seeds seed, seed+1, ...), A 0 = 0, and the
/// assembled images of a morphism basis are linearly independent.
SampleReport faithfulness_check(std::shared_ptr<const Presheaf> source,
                                std::shared_ptr<const Presheaf> target, std::size_t trials,
                                std::uint64_t seed);

/// reconstruct(A F) = F exactly for sampled F.
SampleReport fullness_roundtrip(std::shared_ptr<const Presheaf> source,
                                std::shared_ptr<const Presheaf> target, std::size_t trials,
                                std::uint64_t seed);

/// Integer basis of the degree-0 chain maps A → A' commuting with ∇_0.
std::vector<GradedMatrix> nabla0_equivariant_maps(const AssemblyComplex& source,
                                                  const AssemblyComplex& target);

/// A basis element of nabla0_equivariant_maps failing validate_comodule_morphism.
/// Since the ∇_i identities are linear, nullopt proves every ∇_0-equivariant
/// chain map between these assemblies is a comodule morphism.
std::optional<ComoduleMorphism> find_nabla0_only_map(std::shared_ptr<const AssemblyComplex> source,
                                                     std::shared_ptr<const AssemblyComplex> target);

}  // namespace steenrod
