#include "steenrod/reconstruct.hpp"

#include <algorithm>
#include <chrono>
#include <tuple>

#include "steenrod/errors.hpp"

namespace steenrod {

namespace {

void check_shape(const ComoduleMorphism& f) {
  if (f.map.shift() != 0 || !f.map.source().same_shape(f.source->basis()) ||
      !f.map.target().same_shape(f.target->basis())) {
    throw ShapeError("map does not fit the assemblies");
  }
  if (!(f.source->simplicial() == f.target->simplicial())) {
    throw ShapeError("assemblies over different complexes");
  }
}

// The identity at (i, twisted) should fail on g; if the expected one happens
// to hold, fall back to the first failing identity.
RejectionWitness equivariance_witness(const ComoduleMorphism& f, std::string reason, GenKey g,
                                      int i, bool twisted) {
  RejectionWitness w{std::move(reason), g, i, twisted, equivariance_defect(f, i, twisted, g), {}, {}};
  if (w.discrepancy.is_zero()) {
    const int top = coaction_range(f.source->simplicial());
    for (int j = 0; j <= top && w.discrepancy.is_zero(); ++j) {
      for (bool t : {false, true}) {
        CoactionValue d = equivariance_defect(f, j, t, g);
        if (!d.is_zero()) {
          w.i = j;
          w.twisted = t;
          w.discrepancy = std::move(d);
          break;
        }
      }
    }
  }
  w.detail = (w.twisted ? "∇ᵀ_" : "∇_") + std::to_string(w.i) + " at " +
             f.source->describe(g) + ": " + describe(*f.target, w.discrepancy);
  return w;
}

RejectionWitness chain_witness(const ComoduleMorphism& f, std::string reason, GenKey g,
                               const FormalChain& column) {
  RejectionWitness w{std::move(reason), g, -1, false, {}, column, {}};
  w.detail = "∂f − f∂ nonzero at " + f.source->describe(g);
  return w;
}

}  // namespace

ReconstructionResult reconstruct(const ComoduleMorphism& f) {
  check_shape(f);
  ReconstructionResult result;
  const AssemblyComplex& A = *f.source;
  const AssemblyComplex& B = *f.target;
  const SimplicialComplex& X = A.simplicial();

  const GradedMatrix chain_defect = hom_differential(f.map, A.complex(), B.complex());
  for (const GenKey& g : A.generators()) {
    const FormalChain column = chain_defect.image(g);
    if (!column.is_zero()) {
      result.witness = chain_witness(f, "not a chain map", g, column);
      return result;
    }
  }

  // Support: f([x⊗b]) must live on pairs [x⊗c].
  std::vector<GradedMatrix> components;
  components.reserve(X.size());
  for (std::size_t s = 0; s < X.size(); ++s) {
    components.emplace_back(A.presheaf().stalk(s).basis(), B.presheaf().stalk(s).basis(), 0);
  }
  for (const GenKey& g : A.generators()) {
    const BasisPair& pair = A.pair_of(g);
    const int n = X.simplex(pair.simplex).dim();
    const FormalChain image = f.map.image(g);
    int off_simplex_dim = -1;
    for (const auto& [t, c] : image.terms()) {
      const std::size_t s = B.pair_of(t).simplex;
      if (s != pair.simplex) off_simplex_dim = std::max(off_simplex_dim, X.simplex(s).dim());
    }
    ++result.support_checks;
    if (off_simplex_dim >= 0) {
      const bool above = off_simplex_dim > n;
      result.witness = equivariance_witness(
          f, above ? "image supported above dim x" : "image supported off the diagonal", g,
          above ? off_simplex_dim : n, false);
      return result;
    }
    for (const auto& [t, c] : image.terms()) {
      const GenKey stalk_gen = B.pair_of(t).generator;
      components[pair.simplex].add_entry(pair.generator.degree, stalk_gen.index,
                                         pair.generator.index, c);
    }
  }

  const Presheaf& N = A.presheaf();
  const Presheaf& M = B.presheaf();
  for (std::size_t s = 0; s < X.size(); ++s) {
    const GradedMatrix d = hom_differential(components[s], N.stalk(s), M.stalk(s));
    for (const GenKey& b : N.stalk(s).basis().generators()) {
      if (!d.image(b).is_zero()) {
        const GenKey g = A.key_of(BasisPair{s, b});
        result.witness = chain_witness(f, "stalk map not a chain map", g, chain_defect.image(g));
        return result;
      }
    }
  }

  // Naturality along codimension-1 faces: ∇_{n−1} for even u, ∇ᵀ_{n−1} for odd u.
  for (std::size_t ys = 0; ys < X.size(); ++ys) {
    const Simplex& y = X.simplex(ys);
    if (y.dim() == 0) continue;
    for (int u = 0; u <= y.dim(); ++u) {
      const Simplex x = y.face(u);
      const std::size_t xs = X.index_of(x);
      const GradedMatrix& rn = N.facet_restriction(x, y);
      const GradedMatrix& rm = M.facet_restriction(x, y);
      for (const GenKey& c : N.stalk(ys).basis().generators()) {
        ++result.naturality_checks;
        const FormalChain lhs = components[xs].apply(rn.image(c));
        const FormalChain rhs = rm.apply(components[ys].image(c));
        if (!(lhs == rhs)) {
          result.witness = equivariance_witness(
              f, "restriction to face " + std::to_string(u) + " not preserved",
              A.key_of(BasisPair{ys, c}), y.dim() - 1, u % 2 == 1);
          return result;
        }
      }
    }
  }

  PresheafMorphism F(A.presheaf_ptr(), B.presheaf_ptr(), std::move(components));
  if (!(assemble_morphism(F, f.source, f.target).map == f.map)) {
    throw Error("reconstructed morphism does not assemble to the input");
  }
  result.morphism = std::move(F);
  return result;
}

bool replay_witness(const ComoduleMorphism& f, const RejectionWitness& w) {
  check_shape(f);
  if (w.i < 0) {
    const FormalChain column =
        hom_differential(f.map, f.source->complex(), f.target->complex()).image(w.generator);
    return !column.is_zero() && column == w.chain_discrepancy;
  }
  const CoactionValue d = equivariance_defect(f, w.i, w.twisted, w.generator);
  return !d.is_zero() && d == w.discrepancy;
}

// ---------------------------------------------------------------------------

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool injective_on(const std::vector<PresheafMorphism>& basis,
                  const std::shared_ptr<const AssemblyComplex>& A,
                  const std::shared_ptr<const AssemblyComplex>& B) {
  if (basis.empty()) return true;
  std::map<std::tuple<int, std::size_t, std::size_t>, std::vector<Coeff>> entries;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const GradedMatrix m = assemble_morphism(basis[k], A, B).map;
    for (const GenKey& g : A->generators()) {
      for (const auto& [row, c] : m.column(g)) {
        auto [it, inserted] = entries.try_emplace({g.degree, row, g.index}, basis.size(), 0);
        it->second[k] = c;
      }
    }
  }
  std::vector<std::vector<Coeff>> rows;
  rows.reserve(entries.size());
  for (auto& [key, row] : entries) rows.push_back(std::move(row));
  return integer_kernel(std::move(rows), basis.size()).empty();
}

}  // namespace

SampleReport faithfulness_check(std::shared_ptr<const Presheaf> source,
                                std::shared_ptr<const Presheaf> target, std::size_t trials,
                                std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  SampleReport report;
  const auto A = assemble(source);
  const auto B = assemble(target);
  report.zero_ok = assemble_morphism(PresheafMorphism::zero(source, target), A, B).map.is_zero();
  const std::vector<PresheafMorphism> basis = morphism_basis(source, target);
  report.injective_on_basis = injective_on(basis, A, B);
  for (std::size_t t = 0; t < trials; ++t) {
    ++report.trials;
    const PresheafMorphism F = random_morphism(basis, source, target, seed + t);
    if (F.is_zero()) {
      ++report.skipped;
      continue;
    }
    if (assemble_morphism(F, A, B).map.is_zero()) {
      report.failed_seeds.push_back(seed + t);
    } else {
      ++report.passed;
    }
  }
  report.seconds = seconds_since(start);
  return report;
}

SampleReport fullness_roundtrip(std::shared_ptr<const Presheaf> source,
                                std::shared_ptr<const Presheaf> target, std::size_t trials,
                                std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  SampleReport report;
  if (trials == 0) return report;
  const auto A = assemble(source);
  const auto B = assemble(target);
  const std::vector<PresheafMorphism> basis = morphism_basis(source, target);
  for (std::size_t t = 0; t < trials; ++t) {
    ++report.trials;
    const PresheafMorphism F = random_morphism(basis, source, target, seed + t);
    const ReconstructionResult r = reconstruct(assemble_morphism(F, A, B));
    if (r.accepted() && *r.morphism == F) {
      ++report.passed;
    } else {
      report.failed_seeds.push_back(seed + t);
    }
  }
  report.seconds = seconds_since(start);
  return report;
}

// ---------------------------------------------------------------------------

std::vector<GradedMatrix> nabla0_equivariant_maps(const AssemblyComplex& A,
                                                  const AssemblyComplex& B) {
  if (!(A.simplicial() == B.simplicial())) throw ShapeError("assemblies over different complexes");
  // Unknown f_{r,j} for source generator j and target generator r of the same degree.
  std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> unknown;
  std::vector<std::tuple<int, std::size_t, std::size_t>> positions;
  for (const GenKey& g : A.generators()) {
    for (std::size_t r = 0; r < B.basis().rank(g.degree); ++r) {
      unknown.emplace(std::tuple{g.degree, r, g.index}, positions.size());
      positions.emplace_back(g.degree, r, g.index);
    }
  }
  const std::size_t count = positions.size();
  auto var = [&](int degree, std::size_t r, std::size_t j) -> std::size_t {
    auto it = unknown.find({degree, r, j});
    return it == unknown.end() ? count : it->second;
  };

  using EquationKey = std::tuple<int, GenKey, Simplex, GenKey>;
  std::map<EquationKey, std::map<std::size_t, Coeff>> equations;
  auto add = [&](const EquationKey& key, std::size_t v, Coeff c) {
    if (v == count || c == 0) return;
    Coeff& slot = equations[key][v];
    slot = checked_add(slot, c);
  };
  const Simplex none;
  for (const GenKey& g : A.generators()) {
    // ∂' f(g) − f(∂g)
    for (std::size_t r = 0; r < B.basis().rank(g.degree); ++r) {
      for (const auto& [s, c] : B.differential().column(GenKey{g.degree, r})) {
        add({0, g, none, GenKey{g.degree - 1, s}}, var(g.degree, r, g.index), c);
      }
    }
    for (const auto& [k, c] : A.differential().column(g)) {
      for (std::size_t s = 0; s < B.basis().rank(g.degree - 1); ++s) {
        add({0, g, none, GenKey{g.degree - 1, s}}, var(g.degree - 1, s, k), checked_neg(c));
      }
    }
    // (id⊗f)∇_0(g) − ∇'_0(f(g))
    for (const auto value = A.nabla(0, false, g); const auto& [term, c] : value.terms()) {
      const auto& [simplex, a] = term;
      for (std::size_t r = 0; r < B.basis().rank(a.degree); ++r) {
        add({1, g, simplex, GenKey{a.degree, r}}, var(a.degree, r, a.index), c);
      }
    }
    for (std::size_t r = 0; r < B.basis().rank(g.degree); ++r) {
      for (const auto value = B.nabla(0, false, GenKey{g.degree, r}); const auto& [term, c] : value.terms()) {
        add({1, g, term.first, term.second}, var(g.degree, r, g.index), checked_neg(c));
      }
    }
  }

  std::vector<std::vector<Coeff>> rows;
  for (const auto& [key, coeffs] : equations) {
    std::vector<Coeff> row(count, 0);
    bool nonzero = false;
    for (const auto& [v, c] : coeffs) {
      row[v] = c;
      nonzero = nonzero || c != 0;
    }
    if (nonzero) rows.push_back(std::move(row));
  }
  std::vector<GradedMatrix> out;
  for (const std::vector<Coeff>& v : integer_kernel(std::move(rows), count)) {
    GradedMatrix m(A.basis(), B.basis(), 0);
    for (std::size_t k = 0; k < count; ++k) {
      const auto& [degree, r, j] = positions[k];
      m.add_entry(degree, r, j, v[k]);
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::optional<ComoduleMorphism> find_nabla0_only_map(std::shared_ptr<const AssemblyComplex> source,
                                                     std::shared_ptr<const AssemblyComplex> target) {
  for (GradedMatrix& m : nabla0_equivariant_maps(*source, *target)) {
    ComoduleMorphism f{source, target, std::move(m)};
    if (!validate_comodule_morphism(f).ok()) return f;
  }
  return std::nullopt;
}

}  // namespace steenrod
