#pragma once

// Assembly of presheaves and its comodule structure over the cup-i coalgebra.
//
// A(N) = ⊕_x C(x̄) ⊗ N_x / ∼ is free on the classes [x⊗b] of identity
// morphisms x→x tensored with basis elements b of N_x; every other class
// [(x→y)⊗c] is rewritten to [x ⊗ N_{x→y}(c)]. The coaction
//   ∇_i[(x→y)⊗c] = Σ α x' ⊗ [(x''→y)⊗c]  for △_i(x) = Σ α x'⊗x''
// and ∇ᵀ_i likewise with T△_i, lands in C(X) ⊗ A(N).

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "steenrod/cupi.hpp"
#include "steenrod/presheaf.hpp"

namespace steenrod {

/// The canonical generator [x⊗b].
struct BasisPair {
  std::size_t simplex = 0;
  GenKey generator;

  auto operator<=>(const BasisPair&) const = default;
};

/// An element of C(X) ⊗ A(N).
class CoactionValue {
 public:
  using Key = std::pair<Simplex, GenKey>;

  void add(const Simplex& s, GenKey a, Coeff c);
  void add(const Simplex& s, const FormalChain& chain, Coeff c);
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Key, Coeff>& terms() const { return terms_; }
  CoactionValue& operator+=(const CoactionValue& other);
  CoactionValue& operator-=(const CoactionValue& other);
  CoactionValue scaled(Coeff c) const;

  bool operator==(const CoactionValue&) const = default;

 private:
  std::map<Key, Coeff> terms_;
};

class AssemblyComplex {
 public:
  /// Throws MalformedInputError when the presheaf fails validate_presheaf.
  explicit AssemblyComplex(std::shared_ptr<const Presheaf> presheaf);

  const Presheaf& presheaf() const { return *presheaf_; }
  std::shared_ptr<const Presheaf> presheaf_ptr() const { return presheaf_; }
  const SimplicialComplex& simplicial() const { return presheaf_->complex(); }
  const CupStructure& cup() const { return cup_; }

  const ChainComplexData& complex() const { return complex_; }
  const GradedBasis& basis() const { return complex_.basis(); }
  const GradedMatrix& differential() const { return complex_.differential(); }

  /// Generators in (degree, index) order.
  std::vector<GenKey> generators() const { return basis().generators(); }
  const BasisPair& pair_of(GenKey key) const;
  GenKey key_of(const BasisPair& pair) const;
  const Simplex& simplex_of(GenKey key) const;
  /// "[0,1]⊗g0@1": simplex, stalk label, stalk degree.
  std::string describe(GenKey key) const;
  std::size_t global_index(GenKey key) const;
  GenKey from_global_index(std::size_t index) const;

  /// [(x→y)⊗c] for a chain c of N_y, in canonical coordinates.
  FormalChain canonicalize(const Simplex& x, const Simplex& y, const FormalChain& c) const;

  /// ∇_i (twisted = false) or ∇ᵀ_i (twisted = true) on a canonical generator.
  CoactionValue nabla(int i, bool twisted, GenKey generator) const;
  CoactionValue nabla(int i, bool twisted, const FormalChain& chain) const;
  /// The defining formula on the representative [(x→y)⊗c], c a chain of N_y.
  CoactionValue nabla_representative(int i, bool twisted, const Simplex& x, const Simplex& y,
                                     const FormalChain& c) const;

  /// ∂(s⊗a) = ∂s⊗a + (−1)^{|s|} s⊗∂a on C(X) ⊗ A(N).
  CoactionValue boundary(const CoactionValue& value) const;

 private:
  std::shared_ptr<const Presheaf> presheaf_;
  CupStructure cup_;
  ChainComplexData complex_;
  std::map<int, std::vector<BasisPair>> pairs_;
  std::map<BasisPair, GenKey> keys_;
  std::map<int, std::size_t> offsets_;

  mutable std::shared_mutex mutex_;
  mutable std::map<std::tuple<int, bool, GenKey>, CoactionValue> memo_;
};

/// A(N)
std::shared_ptr<const AssemblyComplex> assemble(std::shared_ptr<const Presheaf> presheaf);

struct ComoduleMorphism {
  std::shared_ptr<const AssemblyComplex> source;
  std::shared_ptr<const AssemblyComplex> target;
  GradedMatrix map;
};

/// A(F): [x⊗b] ↦ [x⊗F_x(b)]
ComoduleMorphism assemble_morphism(const PresheafMorphism& morphism,
                                   std::shared_ptr<const AssemblyComplex> source,
                                   std::shared_ptr<const AssemblyComplex> target);
ComoduleMorphism assemble_morphism(const PresheafMorphism& morphism);

struct ComoduleFailure {
  std::string check;
  int i = 0;
  bool twisted = false;
  GenKey generator;
  std::string detail;
};

struct ComoduleReport {
  std::size_t checks = 0;
  std::vector<ComoduleFailure> failures;

  bool ok() const { return failures.empty(); }
};

/// Largest i checked by the validators: dim X + 1.
int coaction_range(const SimplicialComplex& complex);

/// Chain-map identity ∂∇_i − (−1)^i ∇_i∂ = ∇(∂e_i) for e_i and T e_i, counit
/// and coassociativity of ∇_0 over △_0, well-definedness on every
/// representative [(x→z)⊗c], and the support bound on canonical generators.
ComoduleReport validate_comodule(const AssemblyComplex& assembly);

/// (id⊗f)∇(g⊗a) − ∇'(g⊗f(a)) on one generator a.
CoactionValue equivariance_defect(const ComoduleMorphism& f, int i, bool twisted, GenKey generator);

/// f is a chain map and commutes with ∇_i and ∇ᵀ_i for 0 ≤ i ≤ dim X + 1.
ComoduleReport validate_comodule_morphism(const ComoduleMorphism& f);

std::string describe(const AssemblyComplex& assembly, const CoactionValue& value);

}  // namespace steenrod
