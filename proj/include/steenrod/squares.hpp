#pragma once

#include <cstddef>
#include <vector>

#include "steenrod/cupi.hpp"
#include "steenrod/gradedalg.hpp"

namespace steenrod {

/// Mod-2 cohomology of a simplicial complex with cochains indexed by the
/// simplices of each dimension in enumeration order.
class SimplicialCohomology {
 public:
  explicit SimplicialCohomology(std::shared_ptr<const SimplicialComplex> complex);

  const SimplicialComplex& complex() const { return cup_.complex(); }
  const CupStructure& cup() const { return cup_; }
  const Field2Space& space() const { return space_; }

 private:
  CupStructure cup_;
  Field2Space space_;
};

/// A mod-2 class given by a cocycle representative and its coordinates in the
/// fixed representative basis.
struct CohomologyClass {
  int degree = 0;
  BitVector representative;
  BitVector coordinates;
};

/// The class of a cocycle. Throws DomainError when it is not a cocycle.
CohomologyClass make_class(const SimplicialCohomology& h, int degree, BitVector cocycle);
/// The j-th basis class in the given degree.
CohomologyClass basis_class(const SimplicialCohomology& h, int degree, std::size_t j);

/// x ↦ Σ α(a)β(b) over the terms a⊗b of △_j(x), mod 2, as a cochain of degree
/// |α| + |β| − j.
BitVector evaluate_pairing(const SimplicialCohomology& h, int j, const BitVector& alpha,
                           int alpha_degree, const BitVector& beta, int beta_degree);

/// Cup product of cocycles via △_0.
BitVector cup_product(const SimplicialCohomology& h, const BitVector& alpha, int alpha_degree,
                      const BitVector& beta, int beta_degree);

/// Sq^k[α] = [(α⊗α)△_{n−k}(−)]. Zero for k > n. Throws DomainError for k < 0.
CohomologyClass steenrod_square(const SimplicialCohomology& h, int k, const CohomologyClass& alpha);

struct SquareEntry {
  int degree = 0;
  std::size_t class_index = 0;
  int k = 0;
  BitVector output;  // coordinates in degree + k
};

/// Sq^k of every basis class for 0 ≤ k ≤ min(max_k, degree), ordered by
/// (degree, class index, k). max_k < 0 means no bound.
std::vector<SquareEntry> squares_table(const SimplicialCohomology& h, int max_k = -1);

}  // namespace steenrod
