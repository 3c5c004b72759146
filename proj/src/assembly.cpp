#include "steenrod/assembly.hpp"

#include <mutex>

#include "steenrod/errors.hpp"

namespace steenrod {

void CoactionValue::add(const Simplex& s, GenKey a, Coeff c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(Key{s, a}, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

void CoactionValue::add(const Simplex& s, const FormalChain& chain, Coeff c) {
  for (const auto& [key, v] : chain.terms()) add(s, key, checked_mul(c, v));
}

CoactionValue& CoactionValue::operator+=(const CoactionValue& other) {
  for (const auto& [k, c] : other.terms_) add(k.first, k.second, c);
  return *this;
}

CoactionValue& CoactionValue::operator-=(const CoactionValue& other) {
  for (const auto& [k, c] : other.terms_) add(k.first, k.second, checked_neg(c));
  return *this;
}

CoactionValue CoactionValue::scaled(Coeff c) const {
  CoactionValue out;
  for (const auto& [k, v] : terms_) out.add(k.first, k.second, checked_mul(v, c));
  return out;
}

// ---------------------------------------------------------------------------

AssemblyComplex::AssemblyComplex(std::shared_ptr<const Presheaf> presheaf)
    : presheaf_(std::move(presheaf)), cup_(presheaf_->complex_ptr()) {
  const PresheafReport check = validate_presheaf(*presheaf_);
  if (!check.ok()) {
    const PresheafFailure& f = check.failures.front();
    throw MalformedInputError("cannot assemble an invalid presheaf: " + f.check + " at " +
                              f.face.str() + "→" + f.simplex.str());
  }
  const SimplicialComplex& X = presheaf_->complex();
  for (std::size_t s = 0; s < X.size(); ++s) {
    for (const GenKey& g : presheaf_->stalk(s).basis().generators()) {
      pairs_[X.simplex(s).dim() + g.degree].push_back(BasisPair{s, g});
    }
  }
  GradedBasis basis;
  std::size_t offset = 0;
  for (const auto& [degree, pairs] : pairs_) {
    offsets_[degree] = offset;
    offset += pairs.size();
    for (const BasisPair& p : pairs) {
      const GenKey key = basis.add(degree, X.simplex(p.simplex).str() + "⊗" +
                                               presheaf_->stalk(p.simplex).basis().label(p.generator) +
                                               "@" + std::to_string(p.generator.degree));
      keys_.emplace(p, key);
    }
  }
  GradedMatrix d(basis, basis, -1);
  for (const auto& [pair, key] : keys_) {
    const Simplex& x = X.simplex(pair.simplex);
    const FormalChain b(pair.generator, 1);
    FormalChain image;
    if (x.dim() > 0) {
      for (int u = 0; u <= x.dim(); ++u) {
        image += canonicalize(x.face(u), x, b).scaled(parity_sign(u));
      }
    }
    const FormalChain db = presheaf_->stalk(pair.simplex).differential().apply(b);
    for (const auto& [g, c] : db.terms()) {
      image.add(keys_.at(BasisPair{pair.simplex, g}), checked_mul(c, parity_sign(x.dim())));
    }
    for (const auto& [t, c] : image.terms()) d.add_entry(key.degree, t.index, key.index, c);
  }
  complex_ = ChainComplexData(std::move(basis), std::move(d));
}

const BasisPair& AssemblyComplex::pair_of(GenKey key) const {
  auto it = pairs_.find(key.degree);
  if (it == pairs_.end() || key.index >= it->second.size()) {
    throw IndexError("no assembly generator at degree " + std::to_string(key.degree));
  }
  return it->second[key.index];
}

GenKey AssemblyComplex::key_of(const BasisPair& pair) const {
  auto it = keys_.find(pair);
  if (it == keys_.end()) throw IndexError("not a canonical basis pair");
  return it->second;
}

const Simplex& AssemblyComplex::simplex_of(GenKey key) const {
  return simplicial().simplex(pair_of(key).simplex);
}

std::string AssemblyComplex::describe(GenKey key) const { return basis().label(key); }

std::size_t AssemblyComplex::global_index(GenKey key) const {
  pair_of(key);
  return offsets_.at(key.degree) + key.index;
}

GenKey AssemblyComplex::from_global_index(std::size_t index) const {
  for (auto it = offsets_.rbegin(); it != offsets_.rend(); ++it) {
    if (index >= it->second) {
      const GenKey key{it->first, index - it->second};
      pair_of(key);
      return key;
    }
  }
  throw IndexError("assembly index " + std::to_string(index) + " out of range");
}

FormalChain AssemblyComplex::canonicalize(const Simplex& x, const Simplex& y,
                                          const FormalChain& c) const {
  const std::size_t xi = simplicial().index_of(x);
  const FormalChain restricted = presheaf_->restriction(x, y).apply(c);
  FormalChain out;
  for (const auto& [g, v] : restricted.terms()) out.add(keys_.at(BasisPair{xi, g}), v);
  return out;
}

CoactionValue AssemblyComplex::nabla_representative(int i, bool twisted, const Simplex& x,
                                                    const Simplex& y, const FormalChain& c) const {
  const TensorChain chain = cup_.evaluate(WGenerator{i, twisted}, x);
  CoactionValue out;
  for (const auto& [lr, alpha] : chain.terms()) {
    out.add(lr.first, canonicalize(lr.second, y, c), alpha);
  }
  return out;
}

CoactionValue AssemblyComplex::nabla(int i, bool twisted, GenKey generator) const {
  const std::tuple<int, bool, GenKey> key{i, twisted, generator};
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  const BasisPair& pair = pair_of(generator);
  const Simplex& x = simplicial().simplex(pair.simplex);
  CoactionValue out = nabla_representative(i, twisted, x, x, FormalChain(pair.generator, 1));
  std::unique_lock lock(mutex_);
  memo_.insert_or_assign(key, out);
  return out;
}

CoactionValue AssemblyComplex::nabla(int i, bool twisted, const FormalChain& chain) const {
  CoactionValue out;
  for (const auto& [g, c] : chain.terms()) out += nabla(i, twisted, g).scaled(c);
  return out;
}

CoactionValue AssemblyComplex::boundary(const CoactionValue& value) const {
  CoactionValue out;
  for (const auto& [k, c] : value.terms()) {
    const auto& [s, a] = k;
    if (s.dim() > 0) {
      for (int u = 0; u <= s.dim(); ++u) out.add(s.face(u), a, checked_mul(c, parity_sign(u)));
    }
    out.add(s, differential().image(a), checked_mul(c, parity_sign(s.dim())));
  }
  return out;
}

std::shared_ptr<const AssemblyComplex> assemble(std::shared_ptr<const Presheaf> presheaf) {
  return std::make_shared<const AssemblyComplex>(std::move(presheaf));
}

ComoduleMorphism assemble_morphism(const PresheafMorphism& morphism,
                                   std::shared_ptr<const AssemblyComplex> source,
                                   std::shared_ptr<const AssemblyComplex> target) {
  const PresheafReport check = validate_morphism(morphism);
  if (!check.ok()) {
    const PresheafFailure& f = check.failures.front();
    throw MalformedInputError("cannot assemble an invalid morphism: " + f.check + " at " +
                              f.face.str() + "→" + f.simplex.str());
  }
  GradedMatrix map(source->basis(), target->basis(), 0);
  for (const GenKey& key : source->generators()) {
    const BasisPair& pair = source->pair_of(key);
    const FormalChain image = morphism.component(pair.simplex).image(pair.generator);
    for (const auto& [g, c] : image.terms()) {
      const GenKey t = target->key_of(BasisPair{pair.simplex, g});
      map.add_entry(key.degree, t.index, key.index, c);
    }
  }
  return ComoduleMorphism{std::move(source), std::move(target), std::move(map)};
}

ComoduleMorphism assemble_morphism(const PresheafMorphism& morphism) {
  return assemble_morphism(morphism, assemble(morphism.source_ptr()),
                           assemble(morphism.target_ptr()));
}

// ---------------------------------------------------------------------------
// Validation

int coaction_range(const SimplicialComplex& complex) { return complex.dim() + 1; }

std::string describe(const AssemblyComplex& assembly, const CoactionValue& value) {
  if (value.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : value.terms()) {
    if (!out.empty()) out += ' ';
    out += (c > 0 ? "+" : "") + std::to_string(c) + " " + k.first.str() + "⊗(" +
           assembly.describe(k.second) + ")";
  }
  return out;
}

namespace {

using TripleKey = std::tuple<Simplex, Simplex, GenKey>;

void add_triple(std::map<TripleKey, Coeff>& m, const TripleKey& k, Coeff c) {
  if (c == 0) return;
  auto [it, inserted] = m.try_emplace(k, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) m.erase(it);
  }
}

}  // namespace

ComoduleReport validate_comodule(const AssemblyComplex& A) {
  ComoduleReport report;
  const int top = coaction_range(A.simplicial());

  for (const GenKey& g : A.generators()) {
    const Simplex& x = A.simplex_of(g);
    const FormalChain dg = A.differential().image(g);

    for (int i = 0; i <= top; ++i) {
      for (bool twisted : {false, true}) {
        const WGenerator w{i, twisted};
        CoactionValue defect = A.boundary(A.nabla(i, twisted, g));
        defect -= A.nabla(i, twisted, dg).scaled(parity_sign(i));
        for (const auto& [h, c] : w.boundary()) defect -= A.nabla(h.i, h.twisted, g).scaled(c);
        ++report.checks;
        if (!defect.is_zero()) {
          report.failures.push_back({"chain-map identity", i, twisted, g, describe(A, defect)});
        }
      }
      // Support bound.
      const CoactionValue v = A.nabla(i, false, g);
      ++report.checks;
      if (i > x.dim() && !v.is_zero()) {
        report.failures.push_back({"vanishing above dim x", i, false, g, describe(A, v)});
      }
      if (i == x.dim()) {
        const bool single = v.size() == 1 && v.terms().begin()->first.first == x &&
                            v.terms().begin()->first.second == g &&
                            (v.terms().begin()->second == 1 || v.terms().begin()->second == -1);
        if (!single) report.failures.push_back({"top value ±x⊗[x⊗c]", i, false, g, describe(A, v)});
      }
    }

    // Counit and coassociativity of ∇_0 over (C(X), △_0, ε).
    const CoactionValue n0 = A.nabla(0, false, g);
    FormalChain counit;
    for (const auto& [k, c] : n0.terms()) {
      if (k.first.dim() == 0) counit.add(k.second, c);
    }
    ++report.checks;
    if (!(counit == FormalChain(g, 1))) {
      report.failures.push_back({"counit", 0, false, g, "(ε⊗id)∇_0 differs from the identity"});
    }
    std::map<TripleKey, Coeff> defect;
    for (const auto& [k, c] : n0.terms()) {
      for (const auto value = A.cup().cup_i(0, k.first); const auto& [st, d] : value.terms()) {
        add_triple(defect, {st.first, st.second, k.second}, checked_mul(c, d));
      }
      for (const auto value = A.nabla(0, false, k.second); const auto& [k2, d] : value.terms()) {
        add_triple(defect, {k.first, k2.first, k2.second}, checked_neg(checked_mul(c, d)));
      }
    }
    ++report.checks;
    if (!defect.empty()) {
      report.failures.push_back({"coassociativity", 0, false, g,
                                 std::to_string(defect.size()) + " nonzero terms"});
    }
  }

  // Well-definedness: [(x→z)⊗c] and [(x→y)⊗N_{y→z}c] for x ⊆ y ⊆ z give the
  // value of ∇ on the canonical class [x⊗N_{x→z}c].
  const SimplicialComplex& X = A.simplicial();
  const Presheaf& N = A.presheaf();
  for (const Simplex& z : X.simplices()) {
    const auto gens = N.stalk(z).basis().generators();
    if (gens.empty()) continue;
    const SimplicialComplex zbar = closure(z);
    for (const Simplex& x : zbar.simplices()) {
      for (const GenKey& b : gens) {
        const FormalChain c(b, 1);
        const FormalChain canonical = A.canonicalize(x, z, c);
        for (int i = 0; i <= x.dim(); ++i) {
          for (bool twisted : {false, true}) {
            const CoactionValue expected = A.nabla(i, twisted, canonical);
            for (const Simplex& y : zbar.simplices()) {
              if (!x.is_face_of(y)) continue;
              const FormalChain cy = N.restriction(y, z).apply(c);
              CoactionValue diff = A.nabla_representative(i, twisted, x, y, cy);
              diff -= expected;
              ++report.checks;
              if (!diff.is_zero()) {
                report.failures.push_back(
                    {"well-definedness on (" + x.str() + "→" + y.str() + ") from " + z.str(), i,
                     twisted, canonical.is_zero() ? GenKey{} : canonical.terms().begin()->first,
                     describe(A, diff)});
              }
            }
          }
        }
      }
    }
  }
  return report;
}

CoactionValue equivariance_defect(const ComoduleMorphism& f, int i, bool twisted, GenKey generator) {
  CoactionValue lhs;
  for (const auto value = f.source->nabla(i, twisted, generator); const auto& [k, c] : value.terms()) {
    lhs.add(k.first, f.map.image(k.second), c);
  }
  lhs -= f.target->nabla(i, twisted, f.map.image(generator));
  return lhs;
}

ComoduleReport validate_comodule_morphism(const ComoduleMorphism& f) {
  ComoduleReport report;
  if (f.map.shift() != 0 || !f.map.source().same_shape(f.source->basis()) ||
      !f.map.target().same_shape(f.target->basis())) {
    throw ShapeError("map does not fit the assemblies");
  }
  const GradedMatrix chain_defect =
      hom_differential(f.map, f.source->complex(), f.target->complex());
  ++report.checks;
  if (!chain_defect.is_zero()) {
    for (const GenKey& g : f.source->generators()) {
      if (!chain_defect.column(g).empty()) {
        report.failures.push_back({"chain map", 0, false, g,
                                   std::to_string(chain_defect.column(g).size()) +
                                       " nonzero entries in ∂f − f∂"});
        break;
      }
    }
  }
  const int top = coaction_range(f.source->simplicial());
  for (int i = 0; i <= top; ++i) {
    for (bool twisted : {false, true}) {
      for (const GenKey& g : f.source->generators()) {
        ++report.checks;
        const CoactionValue defect = equivariance_defect(f, i, twisted, g);
        if (!defect.is_zero()) {
          report.failures.push_back({twisted ? "equivariance with ∇ᵀ" : "equivariance with ∇", i,
                                     twisted, g, describe(*f.target, defect)});
        }
      }
    }
  }
  return report;
}

}  // namespace steenrod
