#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "steenrod/gradedalg.hpp"

namespace steenrod {

/// Vertex ids. The numeric order is the vertex order: every simplex is
/// totally ordered by it.
using Vertex = std::uint32_t;

/// An ordered simplex [v0 < v1 < ... < vn].
class Simplex {
 public:
  Simplex() = default;
  /// Throws MalformedInputError unless the vertices are nonempty and strictly
  /// increasing.
  explicit Simplex(std::vector<Vertex> vertices);
  Simplex(std::initializer_list<Vertex> vertices);

  int dim() const { return static_cast<int>(vertices_.size()) - 1; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }

  /// x with the vertex in position u removed. Throws IndexError unless
  /// dim ≥ 1 and 0 ≤ u ≤ dim.
  Simplex face(int u) const;
  /// [v_from, ..., v_to], positions inclusive.
  Simplex slice(int from, int to) const;
  bool is_face_of(const Simplex& other) const;
  bool contains(Vertex v) const;

  /// "0,1,2"
  std::string key() const;
  /// "[0,1,2]"
  std::string str() const;
  static Simplex parse(const std::string& key);

  /// Global enumeration order: by dimension, then lexicographic.
  std::strong_ordering operator<=>(const Simplex& other) const;
  bool operator==(const Simplex& other) const = default;

 private:
  std::vector<Vertex> vertices_;
};

Simplex face(int u, const Simplex& x);

/// A finite simplicial complex, closed under faces. Immutable once built.
/// Simplices are enumerated by dimension then lexicographically; the index of
/// a simplex in that enumeration is used for every matrix over the complex.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  std::size_t size() const { return simplices_.size(); }
  bool empty() const { return simplices_.empty(); }
  int dim() const;
  const std::vector<Simplex>& simplices() const { return simplices_; }
  const Simplex& simplex(std::size_t index) const { return simplices_.at(index); }
  /// Simplices of one dimension, in enumeration order.
  std::vector<Simplex> simplices_of_dim(int d) const;
  std::size_t count_of_dim(int d) const;

  bool contains(const Simplex& x) const { return index_.count(x) != 0; }
  /// Throws UnknownSimplexError.
  std::size_t index_of(const Simplex& x) const;
  /// Position of x among simplices of its own dimension.
  std::size_t position_in_dim(const Simplex& x) const;
  /// Simplices not a proper face of any other simplex.
  std::vector<Simplex> maximal_simplices() const;

  bool operator==(const SimplicialComplex& other) const { return simplices_ == other.simplices_; }

 private:
  friend SimplicialComplex build_complex(const std::vector<Simplex>& maximal);

  std::vector<Simplex> simplices_;
  std::map<Simplex, std::size_t> index_;
  std::map<int, std::size_t> dim_offset_;
};

/// Face-closure of the given simplices.
SimplicialComplex build_complex(const std::vector<Simplex>& maximal);
/// As above from raw vertex lists; rejects repeated or unsorted vertices.
SimplicialComplex build_complex(const std::vector<std::vector<Vertex>>& maximal);

/// The subcomplex x̄ of all faces of x.
SimplicialComplex closure(const Simplex& x);
/// x̄ for x in `ambient`; throws UnknownSimplexError otherwise.
SimplicialComplex closure(const SimplicialComplex& ambient, const Simplex& x);

/// Simplicial chains C(X) with ∂x = Σ (−1)^u ∂_u x. Generators in each degree
/// follow the global enumeration order and are labelled by Simplex::key().
ChainComplexData simplicial_chains(const SimplicialComplex& complex);

namespace fixtures {

/// The full n-simplex on vertices 0..n.
SimplicialComplex standard_simplex(int n);
/// Boundary of the full n-simplex.
SimplicialComplex simplex_boundary(int n);
/// Six-vertex real projective plane.
SimplicialComplex projective_plane();
/// Seven-vertex torus.
SimplicialComplex torus();
/// Boundary of a triangle.
SimplicialComplex circle();
SimplicialComplex point();

}  // namespace fixtures

}  // namespace steenrod
