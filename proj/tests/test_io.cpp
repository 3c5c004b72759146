#include <gtest/gtest.h>

#include <functional>
#include <memory>

#include "steenrod/errors.hpp"
#include "steenrod/io.hpp"

using namespace steenrod;
using namespace steenrod::fixtures;

namespace {

std::string data(const std::string& name) { return std::string(STEENROD_TEST_DATA) + "/" + name; }

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const MalformedInputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Io, ComplexRoundTrip) {
  for (const SimplicialComplex& X : {projective_plane(), torus(), circle(), point()}) {
    EXPECT_EQ(parse_complex(complex_to_json(X).dump()), X);
  }
  EXPECT_EQ(load_complex(data("rp2.json")), projective_plane());
  EXPECT_EQ(load_complex(data("delta3.json")), standard_simplex(3));
}

TEST(Io, PresheafRoundTrip) {
  const auto X = std::make_shared<const SimplicialComplex>(simplex_boundary(3));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Presheaf N = random_presheaf(X, 3, 2, seed);
    const Presheaf back = parse_presheaf(X, presheaf_to_json(N).dump(2));
    for (std::size_t i = 0; i < X->size(); ++i) {
      EXPECT_EQ(back.stalk(i).basis(), N.stalk(i).basis());
      EXPECT_EQ(back.stalk(i).differential(), N.stalk(i).differential());
    }
    for (const Simplex& y : X->simplices()) {
      for (int u = 0; y.dim() > 0 && u <= y.dim(); ++u) {
        EXPECT_EQ(back.facet_restriction(y.face(u), y), N.facet_restriction(y.face(u), y));
      }
    }
  }
}

TEST(Io, MorphismAndMapRoundTrip) {
  const auto X = std::make_shared<const SimplicialComplex>(standard_simplex(2));
  const auto N = std::make_shared<const Presheaf>(random_presheaf(X, 2, 1, 1));
  const auto M = std::make_shared<const Presheaf>(random_presheaf(X, 2, 1, 2));
  const PresheafMorphism F = random_morphism(N, M, 7);
  EXPECT_EQ(parse_morphism(N, M, morphism_to_json(F).dump()), F);

  const ComoduleMorphism f = assemble_morphism(F);
  EXPECT_EQ(parse_assembly_map(f.source, f.target, assembly_map_to_json(f).dump()).map, f.map);
}

TEST(Io, LoadedPresheafMatchesFixture) {
  const auto X = std::make_shared<const SimplicialComplex>(load_complex(data("edge.json")));
  const Presheaf N = load_presheaf(X, data("constant_edge.json"));
  const Presheaf C = constant_presheaf(X, ChainComplexData::unit(0));
  for (std::size_t i = 0; i < X->size(); ++i) EXPECT_EQ(N.stalk(i).basis().total_rank(), 1u);
  EXPECT_EQ(N.facet_restriction(Simplex{0}, Simplex{0, 1}), C.facet_restriction(Simplex{0}, Simplex{0, 1}));
}

TEST(Io, SyntaxErrorsCarryLineAndColumn) {
  const std::string msg = message_of([] { parse_complex("{\n  \"maximal_simplices\": [[0,1],\n}", "bad.json"); });
  EXPECT_NE(msg.find("bad.json"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("column"), std::string::npos) << msg;
}

TEST(Io, FieldErrorsCarryPaths) {
  EXPECT_NE(message_of([] { parse_complex(R"({"maximal_simplices": [[0, "a"]]})", "c.json"); })
                .find("maximal_simplices[0][1]"),
            std::string::npos);
  EXPECT_NE(message_of([] { parse_complex(R"({"simplices": []})", "c.json"); }).find("maximal_simplices"),
            std::string::npos);

  const auto X = std::make_shared<const SimplicialComplex>(standard_simplex(1));
  const std::string bad_diff =
      message_of([&] { parse_presheaf(X, R"({"stalks": {"0,1": {"generators": {"0": 1, "1": 1},
                                              "differential": {"1": [[0, 5, 1]]}}}})",
                                      "p.json"); });
  EXPECT_NE(bad_diff.find("p.json"), std::string::npos) << bad_diff;
  EXPECT_NE(bad_diff.find("stalks.0,1.differential.1[0]"), std::string::npos) << bad_diff;

  const std::string unknown =
      message_of([&] { parse_presheaf(X, R"({"stalks": {"0,2": {"generators": {"0": 1}}}})", "p.json"); });
  EXPECT_NE(unknown.find("stalks.0,2"), std::string::npos) << unknown;

  EXPECT_THROW(read_text(data("missing.json")), MalformedInputError);
}

TEST(Io, InvalidPresheafDataIsRejected) {
  const auto X = std::make_shared<const SimplicialComplex>(standard_simplex(1));
  // ∂² ≠ 0 in the stalk.
  const std::string square = message_of([&] {
    parse_presheaf(X, R"({"stalks": {"0,1": {"generators": {"0": 1, "1": 1, "2": 1},
                                          "differential": {"1": [[0, 0, 1]], "2": [[0, 0, 1]]}}}})",
                   "p.json");
  });
  EXPECT_NE(square.find("stalks.0,1.differential"), std::string::npos) << square;
  // A restriction that is not a chain map parses but fails validation and assembly.
  const auto N = std::make_shared<const Presheaf>(parse_presheaf(
      X, R"({"stalks": {"0": {"generators": {"0": 1, "1": 1}, "differential": {"1": [[0, 0, 1]]}},
                        "0,1": {"generators": {"0": 1, "1": 1}, "differential": {"1": [[0, 0, 1]]},
                                "restrictions": {"0": {"0": [[0, 0, 1]]}}}}})"));
  EXPECT_FALSE(validate_presheaf(*N).ok());
  EXPECT_THROW(assemble(N), MalformedInputError);
}
