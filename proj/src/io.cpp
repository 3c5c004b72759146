#include "steenrod/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "steenrod/errors.hpp"

namespace steenrod {

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& where, const std::string& what) {
  throw MalformedInputError(source + ": " + where + ": " + what);
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

// Field-path aware accessors.
class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  const Json& object(const Json& j, const std::string& path) const {
    if (!j.is_object()) fail(source_, path, "expected an object");
    return j;
  }
  const Json& array(const Json& j, const std::string& path) const {
    if (!j.is_array()) fail(source_, path, "expected an array");
    return j;
  }
  const Json& field(const Json& j, const std::string& key, const std::string& path) const {
    object(j, path);
    auto it = j.find(key);
    if (it == j.end()) fail(source_, path, "missing field \"" + key + "\"");
    return *it;
  }
  long long integer(const Json& j, const std::string& path) const {
    if (!j.is_number_integer()) fail(source_, path, "expected an integer");
    return j.get<long long>();
  }
  std::size_t index(const Json& j, const std::string& path) const {
    const long long v = integer(j, path);
    if (v < 0) fail(source_, path, "expected a nonnegative integer");
    return static_cast<std::size_t>(v);
  }
  int degree(const std::string& key, const std::string& path) const {
    try {
      std::size_t used = 0;
      const int d = std::stoi(key, &used);
      if (used == key.size()) return d;
    } catch (const std::exception&) {
    }
    fail(source_, path, "degree key \"" + key + "\" is not an integer");
  }
  Simplex simplex(const std::string& key, const std::string& path) const {
    try {
      return Simplex::parse(key);
    } catch (const Error& e) {
      fail(source_, path, e.what());
    }
  }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

struct Triplet {
  std::size_t row;
  std::size_t col;
  Coeff value;
  std::string path;
};

std::vector<Triplet> read_triplets(const Reader& r, const Json& j, const std::string& path) {
  std::vector<Triplet> out;
  r.array(j, path);
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    const Json& t = r.array(j[k], p);
    if (t.size() != 3) fail(r.source(), p, "expected [row, col, value]");
    out.push_back(Triplet{r.index(t[0], p + "[0]"), r.index(t[1], p + "[1]"),
                          static_cast<Coeff>(r.integer(t[2], p + "[2]")), p});
  }
  return out;
}

// Matrix keyed by source degree into an existing zero matrix.
void read_graded_matrix(const Reader& r, const Json& j, const std::string& path, GradedMatrix& m) {
  r.object(j, path);
  for (const auto& [key, value] : j.items()) {
    const std::string p = path + "." + key;
    const int d = r.degree(key, p);
    for (const Triplet& t : read_triplets(r, value, p)) {
      if (t.col >= m.source().rank(d)) fail(r.source(), t.path, "column " + std::to_string(t.col) + " out of range");
      if (t.row >= m.target().rank(d + m.shift())) {
        fail(r.source(), t.path, "row " + std::to_string(t.row) + " out of range");
      }
      try {
        m.add_entry(d, t.row, t.col, t.value);
      } catch (const Error& e) {
        fail(r.source(), t.path, e.what());
      }
    }
  }
}

Json graded_matrix_to_json(const GradedMatrix& m) {
  Json out = Json::object();
  for (int d : m.source().degrees()) {
    Json entries = Json::array();
    for (std::size_t col = 0; col < m.source().rank(d); ++col) {
      for (const auto& [row, c] : m.column(GenKey{d, col})) entries.push_back(Json::array({row, col, c}));
    }
    if (!entries.empty()) out[std::to_string(d)] = std::move(entries);
  }
  return out;
}

GradedBasis read_generators(const Reader& r, const Json& j, const std::string& path) {
  GradedBasis basis;
  r.object(j, path);
  for (const auto& [key, value] : j.items()) {
    const std::string p = path + "." + key;
    const int d = r.degree(key, p);
    try {
      if (value.is_array()) {
        for (std::size_t k = 0; k < value.size(); ++k) {
          if (!value[k].is_string()) fail(r.source(), p + "[" + std::to_string(k) + "]", "expected a label");
          basis.add(d, value[k].get<std::string>());
        }
      } else {
        const std::size_t n = r.index(value, p);
        for (std::size_t k = 0; k < n; ++k) basis.add(d, "g" + std::to_string(k));
      }
    } catch (const MalformedInputError&) {
      throw;
    } catch (const Error& e) {
      fail(r.source(), p, e.what());
    }
  }
  return basis;
}

Json generators_to_json(const GradedBasis& basis) {
  Json out = Json::object();
  for (int d : basis.degrees()) {
    bool plain = true;
    for (std::size_t k = 0; k < basis.rank(d); ++k) {
      plain = plain && basis.labels(d)[k] == "g" + std::to_string(k);
    }
    if (plain) {
      out[std::to_string(d)] = basis.rank(d);
    } else {
      out[std::to_string(d)] = basis.labels(d);
    }
  }
  return out;
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInputError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    fail(source, line_column(text, byte), "invalid JSON");
  }
}

// ---------------------------------------------------------------------------

SimplicialComplex parse_complex(const std::string& text, const std::string& source) {
  const Json doc = parse_json(text, source);
  const Reader r(source);
  const Json& list = r.array(r.field(doc, "maximal_simplices", "document"), "maximal_simplices");
  std::vector<std::vector<Vertex>> maximal;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string p = "maximal_simplices[" + std::to_string(k) + "]";
    const Json& s = r.array(list[k], p);
    if (s.empty()) fail(source, p, "empty simplex");
    std::vector<Vertex> vs;
    for (std::size_t m = 0; m < s.size(); ++m) {
      const std::size_t v = r.index(s[m], p + "[" + std::to_string(m) + "]");
      if (v > std::numeric_limits<Vertex>::max()) fail(source, p, "vertex out of range");
      vs.push_back(static_cast<Vertex>(v));
    }
    maximal.push_back(std::move(vs));
  }
  try {
    return build_complex(maximal);
  } catch (const Error& e) {
    fail(source, "maximal_simplices", e.what());
  }
}

SimplicialComplex load_complex(const std::filesystem::path& path) {
  return parse_complex(read_text(path), path.string());
}

Json complex_to_json(const SimplicialComplex& complex) {
  Json list = Json::array();
  for (const Simplex& s : complex.maximal_simplices()) list.push_back(s.vertices());
  return Json{{"maximal_simplices", list}};
}

// ---------------------------------------------------------------------------

Presheaf parse_presheaf(std::shared_ptr<const SimplicialComplex> complex, const std::string& text,
                        const std::string& source) {
  const Json doc = parse_json(text, source);
  const Reader r(source);
  const Json& stalks_json = r.object(r.field(doc, "stalks", "document"), "stalks");
  const SimplicialComplex& X = *complex;

  std::vector<ChainComplexData> stalks(X.size());
  std::vector<bool> given(X.size(), false);
  for (const auto& [key, value] : stalks_json.items()) {
    const std::string p = "stalks." + key;
    const Simplex s = r.simplex(key, p);
    if (!X.contains(s)) fail(source, p, "simplex not in the complex");
    const std::size_t i = X.index_of(s);
    if (given[i]) fail(source, p, "stalk given twice");
    given[i] = true;
    r.object(value, p);
    GradedBasis basis = value.contains("generators")
                            ? read_generators(r, value["generators"], p + ".generators")
                            : GradedBasis();
    GradedMatrix d(basis, basis, -1);
    if (value.contains("differential")) read_graded_matrix(r, value["differential"], p + ".differential", d);
    try {
      stalks[i] = ChainComplexData(std::move(basis), std::move(d));
    } catch (const Error& e) {
      fail(source, p + ".differential", e.what());
    }
  }

  std::map<std::pair<std::size_t, std::size_t>, GradedMatrix> facets;
  for (const auto& [key, value] : stalks_json.items()) {
    if (!value.contains("restrictions")) continue;
    const std::string p = "stalks." + key + ".restrictions";
    const Simplex y = Simplex::parse(key);
    const std::size_t yi = X.index_of(y);
    r.object(value["restrictions"], p);
    for (const auto& [face_key, matrix] : value["restrictions"].items()) {
      const std::string fp = p + "." + face_key;
      const Simplex x = r.simplex(face_key, fp);
      if (x.dim() + 1 != y.dim() || !x.is_face_of(y)) fail(source, fp, "not a codimension-1 face of " + y.str());
      const std::size_t xi = X.index_of(x);
      GradedMatrix m(stalks[yi].basis(), stalks[xi].basis(), 0);
      read_graded_matrix(r, matrix, fp, m);
      facets.emplace(std::pair{xi, yi}, std::move(m));
    }
  }
  try {
    return Presheaf(std::move(complex), std::move(stalks), std::move(facets));
  } catch (const Error& e) {
    fail(source, "stalks", e.what());
  }
}

Presheaf load_presheaf(std::shared_ptr<const SimplicialComplex> complex,
                       const std::filesystem::path& path) {
  return parse_presheaf(std::move(complex), read_text(path), path.string());
}

Json presheaf_to_json(const Presheaf& N) {
  const SimplicialComplex& X = N.complex();
  Json stalks = Json::object();
  for (std::size_t i = 0; i < X.size(); ++i) {
    const Simplex& y = X.simplex(i);
    const ChainComplexData& c = N.stalk(i);
    if (c.basis().total_rank() == 0) continue;
    Json entry = Json::object();
    entry["generators"] = generators_to_json(c.basis());
    Json d = graded_matrix_to_json(c.differential());
    if (!d.empty()) entry["differential"] = std::move(d);
    Json restrictions = Json::object();
    if (y.dim() > 0) {
      for (int u = y.dim(); u >= 0; --u) {
        const Simplex x = y.face(u);
        Json m = graded_matrix_to_json(N.facet_restriction(x, y));
        if (!m.empty()) restrictions[x.key()] = std::move(m);
      }
    }
    if (!restrictions.empty()) entry["restrictions"] = std::move(restrictions);
    stalks[y.key()] = std::move(entry);
  }
  return Json{{"stalks", stalks}};
}

// ---------------------------------------------------------------------------

PresheafMorphism parse_morphism(std::shared_ptr<const Presheaf> source,
                                std::shared_ptr<const Presheaf> target, const std::string& text,
                                const std::string& name) {
  const Json doc = parse_json(text, name);
  const Reader r(name);
  const Json& comps = r.object(r.field(doc, "components", "document"), "components");
  const SimplicialComplex& X = source->complex();
  std::vector<GradedMatrix> components;
  for (std::size_t i = 0; i < X.size(); ++i) {
    components.emplace_back(source->stalk(i).basis(), target->stalk(i).basis(), 0);
  }
  for (const auto& [key, value] : comps.items()) {
    const std::string p = "components." + key;
    const Simplex s = r.simplex(key, p);
    if (!X.contains(s)) fail(name, p, "simplex not in the complex");
    read_graded_matrix(r, value, p, components[X.index_of(s)]);
  }
  try {
    return PresheafMorphism(std::move(source), std::move(target), std::move(components));
  } catch (const Error& e) {
    fail(name, "components", e.what());
  }
}

Json morphism_to_json(const PresheafMorphism& F) {
  const SimplicialComplex& X = F.source().complex();
  Json comps = Json::object();
  for (std::size_t i = 0; i < X.size(); ++i) {
    Json m = graded_matrix_to_json(F.component(i));
    if (!m.empty()) comps[X.simplex(i).key()] = std::move(m);
  }
  return Json{{"components", comps}};
}

// ---------------------------------------------------------------------------

ComoduleMorphism parse_assembly_map(std::shared_ptr<const AssemblyComplex> source,
                                    std::shared_ptr<const AssemblyComplex> target,
                                    const std::string& text, const std::string& name) {
  const Json doc = parse_json(text, name);
  const Reader r(name);
  GradedMatrix m(source->basis(), target->basis(), 0);
  for (const Triplet& t : read_triplets(r, r.field(doc, "entries", "document"), "entries")) {
    const std::string& p = t.path;
    GenKey col;
    GenKey row;
    try {
      col = source->from_global_index(t.col);
      row = target->from_global_index(t.row);
    } catch (const Error& e) {
      fail(name, p, e.what());
    }
    if (row.degree != col.degree) fail(name, p, "entry does not preserve degree");
    m.add_entry(col.degree, row.index, col.index, t.value);
  }
  return ComoduleMorphism{std::move(source), std::move(target), std::move(m)};
}

Json assembly_map_to_json(const ComoduleMorphism& f) {
  Json entries = Json::array();
  for (const GenKey& g : f.source->generators()) {
    for (const auto& [row, c] : f.map.column(g)) {
      entries.push_back(Json::array(
          {f.target->global_index(GenKey{g.degree, row}), f.source->global_index(g), c}));
    }
  }
  return Json{{"entries", entries}};
}

Json assembly_to_json(const AssemblyComplex& A) {
  Json basis = Json::array();
  Json differential = Json::array();
  for (const GenKey& g : A.generators()) {
    const BasisPair& p = A.pair_of(g);
    basis.push_back(Json{{"index", A.global_index(g)},
                         {"degree", g.degree},
                         {"simplex", A.simplicial().simplex(p.simplex).vertices()},
                         {"stalk_degree", p.generator.degree},
                         {"stalk_index", p.generator.index},
                         {"label", A.describe(g)}});
    for (const auto& [row, c] : A.differential().column(g)) {
      differential.push_back(Json::array({A.global_index(GenKey{g.degree - 1, row}), A.global_index(g), c}));
    }
  }
  return Json{{"basis", basis}, {"differential", differential}};
}

Json coaction_to_json(const AssemblyComplex& A, const CoactionValue& value) {
  Json terms = Json::array();
  for (const auto& [k, c] : value.terms()) {
    terms.push_back(Json{{"coefficient", c},
                         {"simplex", k.first.vertices()},
                         {"pair", A.global_index(k.second)},
                         {"label", A.describe(k.second)}});
  }
  return terms;
}

Json witness_to_json(const ComoduleMorphism& f, const RejectionWitness& w) {
  Json out{{"accepted", false},
           {"reason", w.reason},
           {"pair", f.source->global_index(w.generator)},
           {"label", f.source->describe(w.generator)}};
  if (w.i >= 0) {
    out["identity"] = w.twisted ? "nabla_T" : "nabla";
    out["i"] = w.i;
    out["discrepancy"] = coaction_to_json(*f.target, w.discrepancy);
  } else {
    out["identity"] = "chain_map";
    Json terms = Json::array();
    for (const auto& [g, c] : w.chain_discrepancy.terms()) {
      terms.push_back(Json{{"coefficient", c}, {"pair", f.target->global_index(g)}, {"label", f.target->describe(g)}});
    }
    out["discrepancy"] = std::move(terms);
  }
  out["detail"] = w.detail;
  return out;
}

}  // namespace steenrod
