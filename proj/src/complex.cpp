#include "steenrod/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "steenrod/errors.hpp"

namespace steenrod {

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw MalformedInputError("simplex with no vertices");
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (vertices_[i - 1] >= vertices_[i]) {
      throw MalformedInputError("simplex vertices must be strictly increasing: " + str());
    }
  }
}

Simplex::Simplex(std::initializer_list<Vertex> vertices)
    : Simplex(std::vector<Vertex>(vertices)) {}

Simplex Simplex::face(int u) const {
  if (dim() < 1 || u < 0 || u > dim()) {
    throw IndexError("face index " + std::to_string(u) + " out of range for " + str());
  }
  std::vector<Vertex> out;
  out.reserve(vertices_.size() - 1);
  for (int i = 0; i <= dim(); ++i) {
    if (i != u) out.push_back(vertices_[static_cast<std::size_t>(i)]);
  }
  Simplex s;
  s.vertices_ = std::move(out);
  return s;
}

Simplex Simplex::slice(int from, int to) const {
  if (from < 0 || to > dim() || from > to) throw IndexError("slice out of range for " + str());
  Simplex s;
  s.vertices_.assign(vertices_.begin() + from, vertices_.begin() + to + 1);
  return s;
}

bool Simplex::is_face_of(const Simplex& other) const {
  return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(),
                       vertices_.end());
}

bool Simplex::contains(Vertex v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::string Simplex::key() const {
  std::string out;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(vertices_[i]);
  }
  return out;
}

std::string Simplex::str() const { return "[" + key() + "]"; }

Simplex Simplex::parse(const std::string& key) {
  std::vector<Vertex> vs;
  std::stringstream in(key);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw MalformedInputError("bad vertex '" + item + "' in simplex '" + key + "'");
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (used != item.size() || v < 0) {
      throw MalformedInputError("bad vertex '" + item + "' in simplex '" + key + "'");
    }
    vs.push_back(static_cast<Vertex>(v));
  }
  return Simplex(std::move(vs));
}

std::strong_ordering Simplex::operator<=>(const Simplex& other) const {
  if (auto c = vertices_.size() <=> other.vertices_.size(); c != 0) return c;
  return vertices_ <=> other.vertices_;
}

Simplex face(int u, const Simplex& x) { return x.face(u); }

// ---------------------------------------------------------------------------

int SimplicialComplex::dim() const { return simplices_.empty() ? -1 : simplices_.back().dim(); }

std::vector<Simplex> SimplicialComplex::simplices_of_dim(int d) const {
  std::vector<Simplex> out;
  auto it = dim_offset_.find(d);
  if (it == dim_offset_.end()) return out;
  for (std::size_t i = it->second; i < simplices_.size() && simplices_[i].dim() == d; ++i) {
    out.push_back(simplices_[i]);
  }
  return out;
}

std::size_t SimplicialComplex::count_of_dim(int d) const {
  auto it = dim_offset_.find(d);
  if (it == dim_offset_.end()) return 0;
  auto next = std::next(it);
  return (next == dim_offset_.end() ? simplices_.size() : next->second) - it->second;
}

std::size_t SimplicialComplex::index_of(const Simplex& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) throw UnknownSimplexError("simplex " + x.str() + " not in complex");
  return it->second;
}

std::size_t SimplicialComplex::position_in_dim(const Simplex& x) const {
  return index_of(x) - dim_offset_.at(x.dim());
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
  std::vector<Simplex> out;
  for (const Simplex& x : simplices_) {
    bool maximal = true;
    for (const Simplex& y : simplices_) {
      if (y.dim() > x.dim() && x.is_face_of(y)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(x);
  }
  return out;
}

SimplicialComplex build_complex(const std::vector<Simplex>& maximal) {
  std::set<Simplex> all;
  for (const Simplex& m : maximal) {
    const auto& vs = m.vertices();
    const std::size_t n = vs.size();
    // Every nonempty subsequence via bitmasks; simplices here are small.
    if (n > 24) throw MalformedInputError("simplex too large: " + m.str());
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
      std::vector<Vertex> sub;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::uint32_t{1} << i)) sub.push_back(vs[i]);
      }
      all.insert(Simplex(std::move(sub)));
    }
  }
  SimplicialComplex complex;
  complex.simplices_.assign(all.begin(), all.end());
  for (std::size_t i = 0; i < complex.simplices_.size(); ++i) {
    complex.index_.emplace(complex.simplices_[i], i);
    complex.dim_offset_.try_emplace(complex.simplices_[i].dim(), i);
  }
  return complex;
}

SimplicialComplex build_complex(const std::vector<std::vector<Vertex>>& maximal) {
  std::vector<Simplex> simplices;
  simplices.reserve(maximal.size());
  for (std::vector<Vertex> vs : maximal) {
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) {
      std::string listed;
      for (Vertex v : vs) listed += (listed.empty() ? "" : ",") + std::to_string(v);
      throw MalformedInputError("duplicate vertex in simplex {" + listed + "}");
    }
    simplices.emplace_back(std::move(vs));
  }
  return build_complex(simplices);
}

SimplicialComplex closure(const Simplex& x) { return build_complex(std::vector<Simplex>{x}); }

SimplicialComplex closure(const SimplicialComplex& ambient, const Simplex& x) {
  if (!ambient.contains(x)) throw UnknownSimplexError("simplex " + x.str() + " not in complex");
  return closure(x);
}

ChainComplexData simplicial_chains(const SimplicialComplex& complex) {
  GradedBasis basis;
  for (const Simplex& x : complex.simplices()) basis.add(x.dim(), x.key());
  GradedMatrix d(basis, basis, -1);
  for (const Simplex& x : complex.simplices()) {
    if (x.dim() == 0) continue;
    const std::size_t col = complex.position_in_dim(x);
    for (int u = 0; u <= x.dim(); ++u) {
      d.add_entry(x.dim(), complex.position_in_dim(x.face(u)), col, parity_sign(u));
    }
  }
  return ChainComplexData(std::move(basis), std::move(d));
}

namespace fixtures {

namespace {

std::vector<Vertex> iota_vertices(int n) {
  std::vector<Vertex> vs;
  for (int v = 0; v <= n; ++v) vs.push_back(static_cast<Vertex>(v));
  return vs;
}

}  // namespace

SimplicialComplex standard_simplex(int n) {
  return build_complex(std::vector<std::vector<Vertex>>{iota_vertices(n)});
}

SimplicialComplex simplex_boundary(int n) {
  const Simplex top(iota_vertices(n));
  std::vector<Simplex> facets;
  for (int u = 0; u <= n; ++u) facets.push_back(top.face(u));
  return build_complex(facets);
}

SimplicialComplex projective_plane() {
  return build_complex(std::vector<std::vector<Vertex>>{
      {0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
      {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
}

SimplicialComplex torus() {
  std::vector<std::vector<Vertex>> triangles;
  for (Vertex i = 0; i < 7; ++i) {
    triangles.push_back({i, (i + 1) % 7, (i + 3) % 7});
    triangles.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return build_complex(triangles);
}

SimplicialComplex circle() { return simplex_boundary(2); }

SimplicialComplex point() { return standard_simplex(0); }

}  // namespace fixtures

}  // namespace steenrod
