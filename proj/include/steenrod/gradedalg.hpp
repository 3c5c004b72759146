#pragma once

// Exact sparse linear algebra over graded free Z-modules, plus the F2
// cohomology of a finite chain complex.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "steenrod/checked.hpp"

namespace steenrod {

/// A generator of a graded free module: degree and position within it.
struct GenKey {
  int degree = 0;
  std::size_t index = 0;

  auto operator<=>(const GenKey&) const = default;
};

/// Ordered generator labels per degree. Labels are unique within a degree.
class GradedBasis {
 public:
  GradedBasis() = default;

  /// Basis with `rank` generators labelled g0, g1, ... in each degree.
  static GradedBasis from_ranks(const std::map<int, std::size_t>& ranks);

  GenKey add(int degree, std::string label);

  std::size_t rank(int degree) const;
  std::size_t total_rank() const;
  /// Degrees with at least one generator, ascending.
  std::vector<int> degrees() const;
  const std::vector<std::string>& labels(int degree) const;
  const std::string& label(GenKey key) const;
  std::optional<GenKey> find(int degree, const std::string& label) const;
  /// All generators in (degree, index) order.
  std::vector<GenKey> generators() const;

  bool same_shape(const GradedBasis& other) const;
  bool operator==(const GradedBasis& other) const { return gens_ == other.gens_; }

 private:
  std::map<int, std::vector<std::string>> gens_;
};

/// A finite Z-linear combination of generators with no zero coefficients.
class FormalChain {
 public:
  FormalChain() = default;
  FormalChain(GenKey key, Coeff c) { add(key, c); }

  void add(GenKey key, Coeff c);
  Coeff coeff(GenKey key) const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<GenKey, Coeff>& terms() const { return terms_; }
  /// The common degree of all terms, or nullopt for zero/inhomogeneous chains.
  std::optional<int> degree() const;

  FormalChain& operator+=(const FormalChain& other);
  FormalChain& operator-=(const FormalChain& other);
  FormalChain scaled(Coeff c) const;

  bool operator==(const FormalChain&) const = default;

 private:
  std::map<GenKey, Coeff> terms_;
};

using SparseColumn = std::map<std::size_t, Coeff>;

/// A homogeneous Z-linear map between graded free modules. The column of a
/// source generator in degree d lives in target degree d + shift.
class GradedMatrix {
 public:
  GradedMatrix() = default;
  GradedMatrix(GradedBasis source, GradedBasis target, int shift);

  static GradedMatrix identity(const GradedBasis& basis);

  const GradedBasis& source() const { return source_; }
  const GradedBasis& target() const { return target_; }
  int shift() const { return shift_; }

  void add_entry(int source_degree, std::size_t row, std::size_t col, Coeff value);
  Coeff entry(int source_degree, std::size_t row, std::size_t col) const;
  const SparseColumn& column(GenKey source_key) const;
  /// Image of a source generator as a chain in the target.
  FormalChain image(GenKey source_key) const;
  FormalChain apply(const FormalChain& chain) const;

  /// this ∘ rhs
  GradedMatrix compose(const GradedMatrix& rhs) const;
  GradedMatrix operator+(const GradedMatrix& rhs) const;
  GradedMatrix operator-(const GradedMatrix& rhs) const;
  GradedMatrix scaled(Coeff c) const;

  bool is_zero() const;
  std::size_t nonzeros() const;
  /// Equal shift, equal ranks in source and target, equal entries.
  bool operator==(const GradedMatrix& rhs) const;

 private:
  void check_compatible(const GradedMatrix& rhs) const;
  static const SparseColumn& empty_column();

  GradedBasis source_;
  GradedBasis target_;
  int shift_ = 0;
  std::map<int, std::vector<SparseColumn>> blocks_;
};

/// A free chain complex. Construction checks that the differential has
/// shift -1 and squares to zero.
class ChainComplexData {
 public:
  ChainComplexData();
  ChainComplexData(GradedBasis basis, GradedMatrix differential);

  /// Z concentrated in degree `degree`.
  static ChainComplexData unit(int degree = 0);

  const GradedBasis& basis() const { return basis_; }
  const GradedMatrix& differential() const { return differential_; }

 private:
  GradedBasis basis_;
  GradedMatrix differential_;
};

/// Koszul tensor product: ∂(a⊗b) = ∂a⊗b + (-1)^{|a|} a⊗∂b. The generators
/// of total degree n are ordered by (degree of a, index of a, index of b) and
/// labelled "a⊗b".
ChainComplexData tensor_complex(const ChainComplexData& a, const ChainComplexData& b);

/// ∂(f) = ∂∘f − (−1)^{|f|} f∘∂
GradedMatrix hom_differential(const GradedMatrix& f, const ChainComplexData& source,
                              const ChainComplexData& target);

/// True iff ∂(f) = 0. Throws ShapeError when f does not fit the complexes.
bool verify_chain_map(const GradedMatrix& f, const ChainComplexData& source,
                      const ChainComplexData& target);

/// Basis of the rational kernel of an integer matrix given by its rows, each
/// vector scaled to be primitive in Z^cols.
std::vector<std::vector<Coeff>> integer_kernel(std::vector<std::vector<Coeff>> rows,
                                               std::size_t cols);

// ---------------------------------------------------------------------------
// F2

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size);

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i);
  BitVector& operator^=(const BitVector& other);
  bool any() const;
  std::size_t count() const;
  /// Lowest set position; size() when empty.
  std::size_t first_set() const;
  /// Parity of the inner product.
  bool dot(const BitVector& other) const;

  bool operator==(const BitVector&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Mod-2 cohomology of a chain complex with chosen cocycle representatives
/// and a reduction procedure into their span.
class Field2Space {
 public:
  explicit Field2Space(const ChainComplexData& complex);

  std::vector<int> degrees() const;
  std::size_t dimension(int degree) const;
  std::size_t cochain_rank(int degree) const;
  const std::vector<BitVector>& representatives(int degree) const;
  const std::vector<BitVector>& coboundary_basis(int degree) const;

  /// δα for a cochain α of the given degree.
  BitVector coboundary(int degree, const BitVector& cochain) const;
  bool is_cocycle(int degree, const BitVector& cochain) const;
  /// Coordinates of the class of a cocycle in the representative basis.
  /// Throws DomainError for a non-cocycle.
  BitVector reduce(int degree, const BitVector& cocycle) const;

 private:
  struct EchelonRow {
    std::size_t pivot;
    BitVector vector;
    BitVector coords;
  };
  struct Degree {
    std::size_t rank = 0;
    // boundary mod 2 of each generator of degree + 1, over generators of degree
    std::vector<BitVector> up_boundaries;
    std::vector<BitVector> representatives;
    std::vector<BitVector> coboundaries;
    std::vector<EchelonRow> echelon;
  };
  const Degree& at(int degree) const;

  std::map<int, Degree> degrees_;
};

Field2Space f2_cohomology(const ChainComplexData& complex);

}  // namespace steenrod
