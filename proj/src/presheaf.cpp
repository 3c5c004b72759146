#include "steenrod/presheaf.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "steenrod/errors.hpp"

namespace steenrod {

namespace {

using Dense = std::vector<std::vector<Coeff>>;

Dense dense_zero(std::size_t rows, std::size_t cols) {
  return Dense(rows, std::vector<Coeff>(cols, 0));
}

Dense dense_mul(const Dense& a, const Dense& b, std::size_t a_cols) {
  const std::size_t rows = a.size();
  const std::size_t cols = b.empty() ? 0 : b.front().size();
  Dense out = dense_zero(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < a_cols; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        out[i][j] = checked_add(out[i][j], checked_mul(a[i][k], b[k][j]));
      }
    }
  }
  return out;
}

std::string relation_name(const Simplex& x, const Simplex& y) { return x.str() + "→" + y.str(); }

std::string matrix_summary(const GradedMatrix& m) {
  return std::to_string(m.nonzeros()) + " nonzero entries in the discrepancy";
}

}  // namespace

// ---------------------------------------------------------------------------
// Presheaf

Presheaf::Presheaf(std::shared_ptr<const SimplicialComplex> complex,
                   std::vector<ChainComplexData> stalks,
                   std::map<std::pair<std::size_t, std::size_t>, GradedMatrix> facet_restrictions)
    : complex_(std::move(complex)),
      stalks_(std::move(stalks)),
      facets_(std::move(facet_restrictions)),
      cache_(std::make_shared<Cache>()) {
  if (stalks_.size() != complex_->size()) {
    throw ShapeError("presheaf needs one stalk per simplex");
  }
  for (const auto& [key, m] : facets_) {
    const auto& [xi, yi] = key;
    if (xi >= complex_->size() || yi >= complex_->size()) {
      throw IndexError("restriction between unknown simplices");
    }
    const Simplex& x = complex_->simplex(xi);
    const Simplex& y = complex_->simplex(yi);
    if (x.dim() + 1 != y.dim() || !x.is_face_of(y)) {
      throw RelationError("restriction " + relation_name(x, y) + " is not a facet relation");
    }
    if (m.shift() != 0 || !m.source().same_shape(stalks_[yi].basis()) ||
        !m.target().same_shape(stalks_[xi].basis())) {
      throw ShapeError("restriction " + relation_name(x, y) + " does not fit the stalks");
    }
  }
  for (std::size_t yi = 0; yi < complex_->size(); ++yi) {
    const Simplex& y = complex_->simplex(yi);
    if (y.dim() == 0) continue;
    for (int u = 0; u <= y.dim(); ++u) {
      const std::size_t xi = complex_->index_of(y.face(u));
      facets_.try_emplace({xi, yi}, stalks_[yi].basis(), stalks_[xi].basis(), 0);
    }
  }
}

const ChainComplexData& Presheaf::stalk(const Simplex& x) const {
  return stalks_.at(complex_->index_of(x));
}

const GradedMatrix& Presheaf::facet_restriction(const Simplex& x, const Simplex& y) const {
  auto it = facets_.find({complex_->index_of(x), complex_->index_of(y)});
  if (it == facets_.end()) {
    throw RelationError(relation_name(x, y) + " is not a codimension-1 relation");
  }
  return it->second;
}

GradedMatrix Presheaf::restriction(const Simplex& x, const Simplex& y) const {
  const std::size_t xi = complex_->index_of(x);
  const std::size_t yi = complex_->index_of(y);
  if (!x.is_face_of(y)) throw RelationError(x.str() + " is not a face of " + y.str());
  if (xi == yi) return GradedMatrix::identity(stalks_[xi].basis());
  if (x.dim() + 1 == y.dim()) return facets_.at({xi, yi});
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->composites.find({xi, yi}); it != cache_->composites.end()) {
      return it->second;
    }
  }
  // Drop the first vertex of y missing from x.
  int u = 0;
  while (x.contains(y[static_cast<std::size_t>(u)])) ++u;
  const Simplex z = y.face(u);
  GradedMatrix out = restriction(x, z).compose(facet_restriction(z, y));
  std::lock_guard lock(cache_->mutex);
  cache_->composites.insert_or_assign({xi, yi}, out);
  return out;
}

// ---------------------------------------------------------------------------
// PresheafMorphism

PresheafMorphism::PresheafMorphism(std::shared_ptr<const Presheaf> source,
                                   std::shared_ptr<const Presheaf> target,
                                   std::vector<GradedMatrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (!(source_->complex() == target_->complex())) {
    throw ShapeError("morphism between presheaves on different complexes");
  }
  if (components_.size() != source_->complex().size()) {
    throw ShapeError("morphism needs one component per simplex");
  }
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const GradedMatrix& m = components_[i];
    if (m.shift() != 0 || !m.source().same_shape(source_->stalk(i).basis()) ||
        !m.target().same_shape(target_->stalk(i).basis())) {
      throw ShapeError("morphism component at " + source_->complex().simplex(i).str() +
                       " does not fit the stalks");
    }
  }
}

PresheafMorphism PresheafMorphism::identity(std::shared_ptr<const Presheaf> presheaf) {
  std::vector<GradedMatrix> comps;
  for (std::size_t i = 0; i < presheaf->complex().size(); ++i) {
    comps.push_back(GradedMatrix::identity(presheaf->stalk(i).basis()));
  }
  return PresheafMorphism(presheaf, presheaf, std::move(comps));
}

PresheafMorphism PresheafMorphism::zero(std::shared_ptr<const Presheaf> source,
                                        std::shared_ptr<const Presheaf> target) {
  std::vector<GradedMatrix> comps;
  for (std::size_t i = 0; i < source->complex().size(); ++i) {
    comps.emplace_back(source->stalk(i).basis(), target->stalk(i).basis(), 0);
  }
  return PresheafMorphism(std::move(source), std::move(target), std::move(comps));
}

const GradedMatrix& PresheafMorphism::component(const Simplex& x) const {
  return components_.at(source_->complex().index_of(x));
}

PresheafMorphism PresheafMorphism::compose(const PresheafMorphism& rhs) const {
  std::vector<GradedMatrix> comps;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    comps.push_back(components_[i].compose(rhs.components_[i]));
  }
  return PresheafMorphism(rhs.source_, target_, std::move(comps));
}

PresheafMorphism PresheafMorphism::operator+(const PresheafMorphism& rhs) const {
  std::vector<GradedMatrix> comps;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    comps.push_back(components_[i] + rhs.components_[i]);
  }
  return PresheafMorphism(source_, target_, std::move(comps));
}

PresheafMorphism PresheafMorphism::scaled(Coeff c) const {
  std::vector<GradedMatrix> comps;
  for (const GradedMatrix& m : components_) comps.push_back(m.scaled(c));
  return PresheafMorphism(source_, target_, std::move(comps));
}

bool PresheafMorphism::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const GradedMatrix& m) { return m.is_zero(); });
}

bool PresheafMorphism::operator==(const PresheafMorphism& rhs) const {
  if (components_.size() != rhs.components_.size()) return false;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (!(components_[i] == rhs.components_[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Validation

PresheafReport validate_presheaf(const Presheaf& presheaf) {
  PresheafReport report;
  const SimplicialComplex& X = presheaf.complex();
  for (const Simplex& y : X.simplices()) {
    const ChainComplexData& Ny = presheaf.stalk(y);
    ++report.checks;
    const GradedMatrix dd = Ny.differential().compose(Ny.differential());
    if (!dd.is_zero()) report.failures.push_back({"∂² = 0", y, y, matrix_summary(dd)});
    if (y.dim() == 0) continue;
    for (int u = 0; u <= y.dim(); ++u) {
      const Simplex x = y.face(u);
      ++report.checks;
      const GradedMatrix defect =
          hom_differential(presheaf.facet_restriction(x, y), Ny, presheaf.stalk(x));
      if (!defect.is_zero()) {
        report.failures.push_back({"restriction is a chain map", x, y, matrix_summary(defect)});
      }
    }
    // Codimension-2 diamonds: ∂_u ∂_v y = ∂_{v−1} ∂_u y for u < v.
    for (int v = 1; v <= y.dim() && y.dim() >= 2; ++v) {
      for (int u = 0; u < v; ++u) {
        const Simplex via_v = y.face(v);
        const Simplex via_u = y.face(u);
        const Simplex x = via_v.face(u);
        ++report.checks;
        const GradedMatrix a =
            presheaf.facet_restriction(x, via_v).compose(presheaf.facet_restriction(via_v, y));
        const GradedMatrix b =
            presheaf.facet_restriction(x, via_u).compose(presheaf.facet_restriction(via_u, y));
        if (!(a == b)) {
          report.failures.push_back({"diamond through " + via_v.str() + " and " + via_u.str(), x,
                                     y, matrix_summary(a - b)});
        }
      }
    }
  }
  return report;
}

PresheafReport validate_morphism(const PresheafMorphism& morphism) {
  PresheafReport report;
  const Presheaf& N = morphism.source();
  const Presheaf& M = morphism.target();
  for (const Simplex& y : N.complex().simplices()) {
    ++report.checks;
    const GradedMatrix defect = hom_differential(morphism.component(y), N.stalk(y), M.stalk(y));
    if (!defect.is_zero()) {
      report.failures.push_back({"component is a chain map", y, y, matrix_summary(defect)});
    }
    if (y.dim() == 0) continue;
    for (int u = 0; u <= y.dim(); ++u) {
      const Simplex x = y.face(u);
      ++report.checks;
      const GradedMatrix lhs = morphism.component(x).compose(N.facet_restriction(x, y));
      const GradedMatrix rhs = M.facet_restriction(x, y).compose(morphism.component(y));
      if (!(lhs == rhs)) {
        report.failures.push_back({"naturality", x, y, matrix_summary(lhs - rhs)});
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Fixtures

Presheaf constant_presheaf(std::shared_ptr<const SimplicialComplex> complex,
                           const ChainComplexData& stalk) {
  std::vector<ChainComplexData> stalks(complex->size(), stalk);
  std::map<std::pair<std::size_t, std::size_t>, GradedMatrix> facets;
  for (std::size_t yi = 0; yi < complex->size(); ++yi) {
    const Simplex& y = complex->simplex(yi);
    if (y.dim() == 0) continue;
    for (int u = 0; u <= y.dim(); ++u) {
      facets.emplace(std::pair{complex->index_of(y.face(u)), yi},
                     GradedMatrix::identity(stalk.basis()));
    }
  }
  return Presheaf(std::move(complex), std::move(stalks), std::move(facets));
}

Presheaf skyscraper_presheaf(std::shared_ptr<const SimplicialComplex> complex, const Simplex& y,
                             const ChainComplexData& stalk) {
  std::vector<ChainComplexData> stalks(complex->size());
  stalks[complex->index_of(y)] = stalk;
  return Presheaf(std::move(complex), std::move(stalks), {});
}

Presheaf zero_presheaf(std::shared_ptr<const SimplicialComplex> complex) {
  std::vector<ChainComplexData> stalks(complex->size());
  return Presheaf(std::move(complex), std::move(stalks), {});
}

namespace {

struct Summand {
  bool cone = false;  // Z(d+1) → Z(d) when true, Z(d) otherwise
  int degree = 0;
  Coeff boundary = 1;  // multiplier of the cone differential
  Coeff multiplier = 1;
  Simplex bottom;
  Simplex top;

  bool supports(const Simplex& s) const { return bottom.is_face_of(s) && s.is_face_of(top); }
};

// (summand index, degree) for each generator of a stalk, grouped by degree.
using StalkLayout = std::map<int, std::vector<std::size_t>>;

struct Unimodular {
  Dense forward;
  Dense inverse;
};

// P = Π·U with U upper unitriangular up to signs, Π a permutation.
Unimodular random_unimodular(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> entry(-1, 1);
  std::uniform_int_distribution<int> coin(0, 1);
  Dense u = dense_zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i][i] = coin(rng) ? 1 : -1;
    for (std::size_t j = i + 1; j < n; ++j) u[i][j] = entry(rng);
  }
  // Back-substitution for U^{-1}; the diagonal is ±1 so everything stays integral.
  Dense uinv = dense_zero(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t ii = n; ii-- > 0;) {
      Coeff rhs = (ii == col) ? 1 : 0;
      for (std::size_t k = ii + 1; k < n; ++k) {
        rhs = checked_sub(rhs, checked_mul(u[ii][k], uinv[k][col]));
      }
      uinv[ii][col] = checked_mul(rhs, u[ii][ii]);
    }
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Dense p = dense_zero(n, n);
  Dense pinv = dense_zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    p[perm[i]] = u[i];
    for (std::size_t j = 0; j < n; ++j) pinv[j][perm[i]] = uinv[j][i];
  }
  return Unimodular{std::move(p), std::move(pinv)};
}

void fill_block(GradedMatrix& m, int source_degree, const Dense& block) {
  for (std::size_t r = 0; r < block.size(); ++r) {
    for (std::size_t c = 0; c < block[r].size(); ++c) {
      if (block[r][c] != 0) m.add_entry(source_degree, r, c, block[r][c]);
    }
  }
}

Coeff power(Coeff base, int exponent) {
  Coeff out = 1;
  for (int i = 0; i < exponent; ++i) out = checked_mul(out, base);
  return out;
}

}  // namespace

Presheaf random_presheaf(std::shared_ptr<const SimplicialComplex> complex, int max_rank,
                         int max_degree, std::uint64_t seed) {
  if (max_rank <= 0 || max_degree < 0) throw DomainError("random_presheaf needs positive bounds");
  const SimplicialComplex& X = *complex;
  const std::size_t n = X.size();
  std::mt19937_64 rng(seed);
  if (n == 0) return zero_presheaf(std::move(complex));

  std::vector<Summand> summands;
  std::vector<std::map<int, int>> ranks(n);
  std::uniform_int_distribution<std::size_t> pick_simplex(0, n - 1);
  std::uniform_int_distribution<int> pick_degree(0, max_degree);
  std::uniform_int_distribution<int> pick_kind(0, 3);
  std::uniform_int_distribution<int> pick_mult(0, 3);
  const std::size_t attempts = 3 * n + 4;
  for (std::size_t a = 0; a < attempts; ++a) {
    Summand s;
    s.top = X.simplex(pick_simplex(rng));
    const auto faces = closure(s.top).simplices();
    s.bottom = faces[std::uniform_int_distribution<std::size_t>(0, faces.size() - 1)(rng)];
    const int kind = pick_kind(rng);
    s.cone = kind >= 2 && max_degree >= 1;
    s.boundary = kind == 3 ? 2 : 1;
    s.degree = s.cone ? std::uniform_int_distribution<int>(0, max_degree - 1)(rng) : pick_degree(rng);
    static constexpr Coeff kMultipliers[] = {1, 1, -1, 2};
    s.multiplier = kMultipliers[pick_mult(rng)];

    bool fits = true;
    for (std::size_t i = 0; i < n && fits; ++i) {
      if (!s.supports(X.simplex(i))) continue;
      fits = ranks[i][s.degree] + 1 <= max_rank &&
             (!s.cone || ranks[i][s.degree + 1] + 1 <= max_rank);
    }
    if (!fits) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (!s.supports(X.simplex(i))) continue;
      ++ranks[i][s.degree];
      if (s.cone) ++ranks[i][s.degree + 1];
    }
    summands.push_back(std::move(s));
  }

  // Generators of each stalk: per degree, the summands contributing there.
  std::vector<StalkLayout> layouts(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < summands.size(); ++j) {
      const Summand& s = summands[j];
      if (!s.supports(X.simplex(i))) continue;
      layouts[i][s.degree].push_back(j);
      if (s.cone) layouts[i][s.degree + 1].push_back(j);
    }
  }

  std::vector<GradedBasis> bases(n);
  std::vector<std::map<int, Unimodular>> changes(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::map<int, std::size_t> r;
    for (const auto& [d, gens] : layouts[i]) r[d] = gens.size();
    bases[i] = GradedBasis::from_ranks(r);
    for (const auto& [d, gens] : layouts[i]) changes[i][d] = random_unimodular(gens.size(), rng);
  }

  auto position = [&](std::size_t simplex, int degree, std::size_t summand) -> std::size_t {
    const auto& gens = layouts[simplex].at(degree);
    return static_cast<std::size_t>(std::find(gens.begin(), gens.end(), summand) - gens.begin());
  };
  auto rank_of = [&](std::size_t simplex, int degree) -> std::size_t {
    auto it = layouts[simplex].find(degree);
    return it == layouts[simplex].end() ? 0 : it->second.size();
  };

  std::vector<ChainComplexData> stalks;
  stalks.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    GradedMatrix d(bases[i], bases[i], -1);
    for (const auto& [deg, gens] : layouts[i]) {
      const std::size_t below = rank_of(i, deg - 1);
      if (below == 0) continue;
      Dense block = dense_zero(below, gens.size());
      for (std::size_t c = 0; c < gens.size(); ++c) {
        const Summand& s = summands[gens[c]];
        if (s.cone && s.degree + 1 == deg) block[position(i, deg - 1, gens[c])][c] = s.boundary;
      }
      block = dense_mul(dense_mul(changes[i].at(deg - 1).forward, block, below),
                        changes[i].at(deg).inverse, gens.size());
      fill_block(d, deg, block);
    }
    stalks.emplace_back(bases[i], std::move(d));
  }

  std::map<std::pair<std::size_t, std::size_t>, GradedMatrix> facets;
  for (std::size_t yi = 0; yi < n; ++yi) {
    const Simplex& y = X.simplex(yi);
    if (y.dim() == 0) continue;
    for (int u = 0; u <= y.dim(); ++u) {
      const std::size_t xi = X.index_of(y.face(u));
      GradedMatrix m(bases[yi], bases[xi], 0);
      for (const auto& [deg, gens] : layouts[yi]) {
        const std::size_t rows = rank_of(xi, deg);
        if (rows == 0) continue;
        Dense block = dense_zero(rows, gens.size());
        for (std::size_t c = 0; c < gens.size(); ++c) {
          const Summand& s = summands[gens[c]];
          if (!s.supports(X.simplex(xi))) continue;
          block[position(xi, deg, gens[c])][c] = power(s.multiplier, y.dim() - X.simplex(xi).dim());
        }
        block = dense_mul(dense_mul(changes[xi].at(deg).forward, block, rows),
                          changes[yi].at(deg).inverse, gens.size());
        fill_block(m, deg, block);
      }
      facets.emplace(std::pair{xi, yi}, std::move(m));
    }
  }
  return Presheaf(std::move(complex), std::move(stalks), std::move(facets));
}

// ---------------------------------------------------------------------------
// Hom spaces

namespace {

// Unknown index of entry (row, col) of F_x in source degree d.
class MorphismUnknowns {
 public:
  MorphismUnknowns(const Presheaf& source, const Presheaf& target) {
    const std::size_t n = source.complex().size();
    offsets_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (int d : source.stalk(i).basis().degrees()) {
        const std::size_t rows = target.stalk(i).basis().rank(d);
        const std::size_t cols = source.stalk(i).basis().rank(d);
        offsets_[i][d] = {count_, cols};
        count_ += rows * cols;
      }
    }
  }

  std::size_t count() const { return count_; }

  // Returns count() when the entry cannot exist (zero block).
  std::size_t index(std::size_t simplex, int degree, std::size_t row, std::size_t col) const {
    auto it = offsets_[simplex].find(degree);
    if (it == offsets_[simplex].end()) return count_;
    return it->second.first + row * it->second.second + col;
  }

 private:
  std::vector<std::map<int, std::pair<std::size_t, std::size_t>>> offsets_;
  std::size_t count_ = 0;
};

void add_to_row(std::vector<Coeff>& row, std::size_t index, Coeff value, std::size_t count) {
  if (index < count) row[index] = checked_add(row[index], value);
}

}  // namespace

std::vector<PresheafMorphism> morphism_basis(std::shared_ptr<const Presheaf> source,
                                             std::shared_ptr<const Presheaf> target) {
  const Presheaf& N = *source;
  const Presheaf& M = *target;
  const SimplicialComplex& X = N.complex();
  const MorphismUnknowns unknowns(N, M);
  const std::size_t count = unknowns.count();
  std::vector<std::vector<Coeff>> rows;
  auto push = [&](std::vector<Coeff>&& row) {
    if (std::any_of(row.begin(), row.end(), [](Coeff c) { return c != 0; })) {
      rows.push_back(std::move(row));
    }
  };

  for (std::size_t i = 0; i < X.size(); ++i) {
    const GradedBasis& src = N.stalk(i).basis();
    const GradedBasis& tgt = M.stalk(i).basis();
    const GradedMatrix& dn = N.stalk(i).differential();
    const GradedMatrix& dm = M.stalk(i).differential();
    // ∂' F − F ∂ = 0, entry (r', g) with g in degree d and r' in target degree d − 1.
    for (int d : src.degrees()) {
      for (std::size_t g = 0; g < src.rank(d); ++g) {
        for (std::size_t rp = 0; rp < tgt.rank(d - 1); ++rp) {
          std::vector<Coeff> row(count, 0);
          for (std::size_t r = 0; r < tgt.rank(d); ++r) {
            add_to_row(row, unknowns.index(i, d, r, g), dm.entry(d, rp, r), count);
          }
          for (const auto& [gp, c] : dn.column(GenKey{d, g})) {
            add_to_row(row, unknowns.index(i, d - 1, rp, gp), checked_neg(c), count);
          }
          push(std::move(row));
        }
      }
    }
  }
  for (std::size_t yi = 0; yi < X.size(); ++yi) {
    const Simplex& y = X.simplex(yi);
    if (y.dim() == 0) continue;
    for (int u = 0; u <= y.dim(); ++u) {
      const Simplex x = y.face(u);
      const std::size_t xi = X.index_of(x);
      const GradedMatrix& rn = N.facet_restriction(x, y);
      const GradedMatrix& rm = M.facet_restriction(x, y);
      const GradedBasis& ny = N.stalk(yi).basis();
      const GradedBasis& mx = M.stalk(xi).basis();
      // F_x N_{x→y} − M_{x→y} F_y = 0, entry (r, g) with g in N_y degree d.
      for (int d : ny.degrees()) {
        for (std::size_t g = 0; g < ny.rank(d); ++g) {
          for (std::size_t r = 0; r < mx.rank(d); ++r) {
            std::vector<Coeff> row(count, 0);
            for (const auto& [m, c] : rn.column(GenKey{d, g})) {
              add_to_row(row, unknowns.index(xi, d, r, m), c, count);
            }
            for (std::size_t mp = 0; mp < M.stalk(yi).basis().rank(d); ++mp) {
              add_to_row(row, unknowns.index(yi, d, mp, g), checked_neg(rm.entry(d, r, mp)),
                         count);
            }
            push(std::move(row));
          }
        }
      }
    }
  }

  std::vector<PresheafMorphism> basis;
  for (const std::vector<Coeff>& v : integer_kernel(std::move(rows), count)) {
    std::vector<GradedMatrix> comps;
    for (std::size_t i = 0; i < X.size(); ++i) {
      GradedMatrix m(N.stalk(i).basis(), M.stalk(i).basis(), 0);
      for (int d : N.stalk(i).basis().degrees()) {
        for (std::size_t r = 0; r < M.stalk(i).basis().rank(d); ++r) {
          for (std::size_t c = 0; c < N.stalk(i).basis().rank(d); ++c) {
            m.add_entry(d, r, c, v[unknowns.index(i, d, r, c)]);
          }
        }
      }
      comps.push_back(std::move(m));
    }
    basis.emplace_back(source, target, std::move(comps));
  }
  return basis;
}

PresheafMorphism random_morphism(std::shared_ptr<const Presheaf> source,
                                 std::shared_ptr<const Presheaf> target, std::uint64_t seed) {
  return random_morphism(morphism_basis(source, target), source, target, seed);
}

PresheafMorphism random_morphism(const std::vector<PresheafMorphism>& basis,
                                 std::shared_ptr<const Presheaf> source,
                                 std::shared_ptr<const Presheaf> target, std::uint64_t seed) {
  PresheafMorphism out = PresheafMorphism::zero(source, target);
  if (basis.empty()) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (const PresheafMorphism& b : basis) out = out + b.scaled(coeff(rng));
  if (out.is_zero()) {
    out = basis[std::uniform_int_distribution<std::size_t>(0, basis.size() - 1)(rng)];
  }
  return out;
}

}  // namespace steenrod
