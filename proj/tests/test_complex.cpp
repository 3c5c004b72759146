#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "steenrod/complex.hpp"
#include "steenrod/errors.hpp"

using namespace steenrod;
using namespace steenrod::fixtures;

namespace {

std::size_t binomial(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(Simplex, ConstructionAndFaces) {
  const Simplex x{2, 5, 9};
  EXPECT_EQ(x.dim(), 2);
  EXPECT_EQ(x.face(0), (Simplex{5, 9}));
  EXPECT_EQ(x.face(1), (Simplex{2, 9}));
  EXPECT_EQ(face(2, x), (Simplex{2, 5}));
  EXPECT_EQ(x.slice(1, 2), (Simplex{5, 9}));
  EXPECT_EQ(x.key(), "2,5,9");
  EXPECT_EQ(x.str(), "[2,5,9]");
  EXPECT_EQ(Simplex::parse("2,5,9"), x);
  EXPECT_TRUE((Simplex{2, 9}).is_face_of(x));
  EXPECT_FALSE((Simplex{3}).is_face_of(x));
  EXPECT_THROW(x.face(3), IndexError);
  EXPECT_THROW((Simplex{4}).face(0), IndexError);
  EXPECT_THROW((Simplex{1, 1}), MalformedInputError);
  EXPECT_THROW((Simplex{2, 1}), MalformedInputError);
  EXPECT_THROW(Simplex::parse("0,,1"), MalformedInputError);
  EXPECT_THROW(Simplex::parse(""), MalformedInputError);
}

TEST(Simplex, EnumerationOrderIsDimensionThenLex) {
  std::vector<Simplex> v = {{0, 1, 2}, {3}, {0, 2}, {0, 1}, {1}};
  std::sort(v.begin(), v.end());
  EXPECT_EQ(v, (std::vector<Simplex>{{1}, {3}, {0, 1}, {0, 2}, {0, 1, 2}}));
}

TEST(Simplex, SimplicialIdentity) {
  // ∂_i ∂_j = ∂_{j−1} ∂_i for i < j
  const Simplex x{0, 1, 2, 3, 4, 5};
  for (int j = 0; j <= x.dim(); ++j) {
    for (int i = 0; i < j; ++i) {
      EXPECT_EQ(x.face(j).face(i), x.face(i).face(j - 1));
    }
  }
}

TEST(SimplicialComplex, StandardSimplexCounts) {
  for (int n = 0; n <= 6; ++n) {
    const SimplicialComplex X = standard_simplex(n);
    EXPECT_EQ(X.dim(), n);
    for (int k = 0; k <= n; ++k) EXPECT_EQ(X.count_of_dim(k), binomial(n + 1, k + 1));
    EXPECT_EQ(X.size(), (std::size_t{1} << (n + 1)) - 1);
  }
}

TEST(SimplicialComplex, SurfacesAreClosedPseudomanifolds) {
  for (const SimplicialComplex& X : {projective_plane(), torus()}) {
    std::map<Simplex, int> triangles_per_edge;
    for (const Simplex& t : X.simplices_of_dim(2)) {
      for (int u = 0; u <= 2; ++u) ++triangles_per_edge[t.face(u)];
    }
    EXPECT_EQ(triangles_per_edge.size(), X.count_of_dim(1));
    for (const auto& [e, n] : triangles_per_edge) EXPECT_EQ(n, 2) << e.str();
  }
  const SimplicialComplex rp2 = projective_plane();
  EXPECT_EQ(rp2.count_of_dim(0), 6u);
  EXPECT_EQ(rp2.count_of_dim(1), 15u);
  EXPECT_EQ(rp2.count_of_dim(2), 10u);
  const SimplicialComplex t = torus();
  EXPECT_EQ(t.count_of_dim(0), 7u);
  EXPECT_EQ(t.count_of_dim(1), 21u);
  EXPECT_EQ(t.count_of_dim(2), 14u);
}

TEST(SimplicialComplex, IndexingIsConsistent) {
  const SimplicialComplex X = projective_plane();
  for (std::size_t i = 0; i < X.size(); ++i) {
    const Simplex& x = X.simplex(i);
    EXPECT_EQ(X.index_of(x), i);
    EXPECT_EQ(X.simplices_of_dim(x.dim())[X.position_in_dim(x)], x);
    if (i > 0) EXPECT_LT(X.simplex(i - 1), x);
  }
  EXPECT_THROW(X.index_of(Simplex{0, 1, 2, 3}), UnknownSimplexError);
  EXPECT_FALSE(X.contains(Simplex{7}));
}

TEST(SimplicialComplex, BuildIsIdempotentAndNormalizes) {
  for (const SimplicialComplex& X : {projective_plane(), torus(), simplex_boundary(3), circle()}) {
    EXPECT_EQ(build_complex(X.maximal_simplices()), X);
  }
  // Unsorted input, repeated and non-maximal simplices, non-contiguous vertices.
  const SimplicialComplex Y = build_complex(std::vector<std::vector<Vertex>>{{9, 4}, {4, 9}, {4}, {20}});
  EXPECT_EQ(Y.size(), 4u);
  EXPECT_EQ(Y.maximal_simplices(), (std::vector<Simplex>{{20}, {4, 9}}));
  EXPECT_THROW(build_complex(std::vector<std::vector<Vertex>>{{1, 1}}), MalformedInputError);
}

TEST(SimplicialComplex, Closure) {
  const SimplicialComplex X = projective_plane();
  const SimplicialComplex c = closure(X, Simplex{0, 1, 2});
  EXPECT_EQ(c, standard_simplex(2));
  EXPECT_THROW(closure(X, Simplex{0, 1, 3}), UnknownSimplexError);
  EXPECT_EQ(closure(Simplex{3, 7}).size(), 3u);
}

TEST(SimplicialChains, BoundaryOfTriangle) {
  const ChainComplexData c = simplicial_chains(standard_simplex(2));
  const GenKey top = *c.basis().find(2, "0,1,2");
  FormalChain expected;
  expected.add(*c.basis().find(1, "1,2"), 1);
  expected.add(*c.basis().find(1, "0,2"), -1);
  expected.add(*c.basis().find(1, "0,1"), 1);
  EXPECT_EQ(c.differential().image(top), expected);
}
