#pragma once

// The Steenrod cup-i coalgebra on simplicial chains.
//
// Sign conventions, pinned by validate_symmetric_coalgebra:
//   ∂(a⊗b)      = ∂a⊗b + (−1)^{|a|} a⊗∂b
//   T(a⊗b)      = (−1)^{|a||b|} b⊗a
//   (id⊗g)(a⊗b) = (−1)^{|g||a|} a⊗g(b)
//   join        : [v0..vp]∗[vp+1..vq] = (−1)^p sign(π) [sorted vertices]
//   △_0         = Alexander–Whitney
//   △_i         = (−1)^i (∗⊗id)(id⊗T△_{i−1})△_0   for i ≥ 1
// With these, ∂△_i − (−1)^i △_i∂ = (1 + (−1)^i T)△_{i−1} holds exactly.

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "steenrod/checked.hpp"
#include "steenrod/complex.hpp"

namespace steenrod {

/// A generator e_i (twisted = false) or T e_i (twisted = true) of W.
struct WGenerator {
  int i = 0;
  bool twisted = false;

  /// ∂e_i = e_{i−1} + (−1)^i T e_{i−1}; the twisted boundary swaps the flags.
  std::vector<std::pair<WGenerator, Coeff>> boundary() const;

  auto operator<=>(const WGenerator&) const = default;
};

/// A Z-linear combination of simplices.
class SimplexChain {
 public:
  SimplexChain() = default;
  SimplexChain(const Simplex& x, Coeff c) { add(x, c); }

  void add(const Simplex& x, Coeff c);
  Coeff coeff(const Simplex& x) const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Simplex, Coeff>& terms() const { return terms_; }
  SimplexChain& operator+=(const SimplexChain& other);
  SimplexChain scaled(Coeff c) const;
  SimplexChain boundary() const;
  std::string str() const;

  bool operator==(const SimplexChain&) const = default;

 private:
  std::map<Simplex, Coeff> terms_;
};

/// An element of C(X) ⊗ C(X).
class TensorChain {
 public:
  using Key = std::pair<Simplex, Simplex>;

  void add(const Simplex& left, const Simplex& right, Coeff c);
  Coeff coeff(const Simplex& left, const Simplex& right) const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Key, Coeff>& terms() const { return terms_; }

  TensorChain& operator+=(const TensorChain& other);
  TensorChain& operator-=(const TensorChain& other);
  TensorChain scaled(Coeff c) const;
  /// Koszul-signed transposition.
  TensorChain transposed() const;
  /// Koszul differential.
  TensorChain boundary() const;

  /// One "+c [a|b]" line per term in enumeration order; "0" when zero.
  std::string str() const;

  bool operator==(const TensorChain&) const = default;

 private:
  std::map<Key, Coeff> terms_;
};

/// Augmentation on degree-0 chains. Throws DegreeError otherwise.
Coeff augmentation(const SimplexChain& chain);
Coeff augmentation(const FormalChain& chain);

/// Evaluator for △_i, T△_i, the join and the AW coproduct on a fixed complex.
/// Values of cup_i are memoized; the cache may be read and filled from several
/// threads.
class CupStructure {
 public:
  explicit CupStructure(std::shared_ptr<const SimplicialComplex> complex);
  explicit CupStructure(SimplicialComplex complex);

  const SimplicialComplex& complex() const { return *complex_; }
  std::shared_ptr<const SimplicialComplex> complex_ptr() const { return complex_; }

  TensorChain aw_coproduct(const Simplex& x) const;
  /// Zero when a and b share a vertex or their union is not a simplex of X.
  SimplexChain join(const Simplex& a, const Simplex& b) const;
  /// △_i(x); zero for i < 0 and for i > dim x.
  TensorChain cup_i(int i, const Simplex& x) const;
  /// T△_i(x)
  TensorChain cup_i_T(int i, const Simplex& x) const;
  /// △(g ⊗ x)
  TensorChain evaluate(WGenerator g, const Simplex& x) const;
  /// △_i extended linearly.
  TensorChain cup_i(int i, const SimplexChain& chain) const;
  /// Recomputes △_i(x) from the recursion without reading or filling the cache.
  TensorChain cup_i_uncached(int i, const Simplex& x) const;

  std::size_t cache_size() const;

 private:
  void require(const Simplex& x) const;
  TensorChain compute(int i, const Simplex& x, bool use_cache) const;

  std::shared_ptr<const SimplicialComplex> complex_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::pair<int, Simplex>, TensorChain> memo_;
};

struct CoalgebraFailure {
  std::string check;
  Simplex simplex;
  int i = 0;
  std::string discrepancy;
};

struct CoalgebraReport {
  std::size_t simplices_checked = 0;
  std::size_t identities_checked = 0;
  std::vector<CoalgebraFailure> failures;

  bool ok() const { return failures.empty(); }
};

/// For every simplex and 0 ≤ i ≤ max_i, checks the boundary relation for e_i
/// and T e_i, coassociativity and counitality of △_0, naturality along every
/// closure inclusion, and the special values (vanishing above dim x, a single
/// ±x⊗x term at dim x, the even/odd face pattern at dim x − 1).
CoalgebraReport validate_symmetric_coalgebra(const SimplicialComplex& complex, int max_i);

/// Failures of the special-value identities at x, for use outside the
/// full validator.
std::vector<CoalgebraFailure> check_special_values(const CupStructure& cup, const Simplex& x,
                                                   int max_i);

}  // namespace steenrod
