#pragma once

// Chain-complex-valued presheaves on the face poset of a simplicial complex.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "steenrod/complex.hpp"
#include "steenrod/gradedalg.hpp"

namespace steenrod {

/// Stalks N_x for every simplex and restrictions N_{x→y}: N_y → N_x for every
/// codimension-1 face x of y. Restrictions along longer relations are the
/// composites; validate_presheaf checks they are well defined.
class Presheaf {
 public:
  /// `stalks` is indexed like complex->simplices(). Facet restrictions are
  /// keyed by (face index, simplex index); missing ones are zero.
  Presheaf(std::shared_ptr<const SimplicialComplex> complex, std::vector<ChainComplexData> stalks,
           std::map<std::pair<std::size_t, std::size_t>, GradedMatrix> facet_restrictions);

  const SimplicialComplex& complex() const { return *complex_; }
  std::shared_ptr<const SimplicialComplex> complex_ptr() const { return complex_; }

  const ChainComplexData& stalk(std::size_t index) const { return stalks_.at(index); }
  const ChainComplexData& stalk(const Simplex& x) const;
  /// N_{x→y} for a codimension-1 face x of y.
  const GradedMatrix& facet_restriction(const Simplex& x, const Simplex& y) const;
  /// N_{x→y} for any face x of y: the composite along a descending path, the
  /// identity when x = y. Throws RelationError when x is not a face of y.
  GradedMatrix restriction(const Simplex& x, const Simplex& y) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<std::size_t, std::size_t>, GradedMatrix> composites;
  };

  std::shared_ptr<const SimplicialComplex> complex_;
  std::vector<ChainComplexData> stalks_;
  std::map<std::pair<std::size_t, std::size_t>, GradedMatrix> facets_;
  std::shared_ptr<Cache> cache_;
};

/// A family F_x: N_x → N'_x of degree-0 maps.
class PresheafMorphism {
 public:
  PresheafMorphism(std::shared_ptr<const Presheaf> source, std::shared_ptr<const Presheaf> target,
                   std::vector<GradedMatrix> components);

  static PresheafMorphism identity(std::shared_ptr<const Presheaf> presheaf);
  static PresheafMorphism zero(std::shared_ptr<const Presheaf> source,
                               std::shared_ptr<const Presheaf> target);

  const Presheaf& source() const { return *source_; }
  const Presheaf& target() const { return *target_; }
  std::shared_ptr<const Presheaf> source_ptr() const { return source_; }
  std::shared_ptr<const Presheaf> target_ptr() const { return target_; }
  const GradedMatrix& component(std::size_t index) const { return components_.at(index); }
  const GradedMatrix& component(const Simplex& x) const;
  const std::vector<GradedMatrix>& components() const { return components_; }

  /// this ∘ rhs
  PresheafMorphism compose(const PresheafMorphism& rhs) const;
  PresheafMorphism operator+(const PresheafMorphism& rhs) const;
  PresheafMorphism scaled(Coeff c) const;
  bool is_zero() const;
  bool operator==(const PresheafMorphism& rhs) const;

 private:
  std::shared_ptr<const Presheaf> source_;
  std::shared_ptr<const Presheaf> target_;
  std::vector<GradedMatrix> components_;
};

struct PresheafFailure {
  std::string check;
  Simplex face;
  Simplex simplex;
  std::string detail;
};

struct PresheafReport {
  std::size_t checks = 0;
  std::vector<PresheafFailure> failures;

  bool ok() const { return failures.empty(); }
};

/// ∂² = 0 per stalk, every facet restriction a chain map, and both
/// codimension-1 paths around every codimension-2 face agree.
PresheafReport validate_presheaf(const Presheaf& presheaf);

/// Each component a chain map and F_x ∘ N_{x→y} = N'_{x→y} ∘ F_y on every
/// codimension-1 relation.
PresheafReport validate_morphism(const PresheafMorphism& morphism);

Presheaf constant_presheaf(std::shared_ptr<const SimplicialComplex> complex,
                           const ChainComplexData& stalk);
Presheaf skyscraper_presheaf(std::shared_ptr<const SimplicialComplex> complex, const Simplex& y,
                             const ChainComplexData& stalk);
Presheaf zero_presheaf(std::shared_ptr<const SimplicialComplex> complex);

/// A valid presheaf with stalk ranks ≤ max_rank in degrees 0..max_degree,
/// reproducible from the seed. Stalks are sums of elementary complexes
/// (Z, Z →1 Z, Z →2 Z) supported on intervals of the face poset, with
/// restrictions scaled by ±1 or 2 per dimension step, then conjugated by a
/// random unimodular change of basis in every stalk.
Presheaf random_presheaf(std::shared_ptr<const SimplicialComplex> complex, int max_rank,
                         int max_degree, std::uint64_t seed);

/// An integer basis of the rational solution space of the morphism equations
/// (chain maps commuting with all facet restrictions).
std::vector<PresheafMorphism> morphism_basis(std::shared_ptr<const Presheaf> source,
                                             std::shared_ptr<const Presheaf> target);

/// A random integer combination of morphism_basis with coefficients in
/// [−2, 2], nonzero whenever the basis is nonempty.
PresheafMorphism random_morphism(std::shared_ptr<const Presheaf> source,
                                 std::shared_ptr<const Presheaf> target, std::uint64_t seed);
/// The same sampling over a precomputed morphism_basis.
PresheafMorphism random_morphism(const std::vector<PresheafMorphism>& basis,
                                 std::shared_ptr<const Presheaf> source,
                                 std::shared_ptr<const Presheaf> target, std::uint64_t seed);

}  // namespace steenrod
