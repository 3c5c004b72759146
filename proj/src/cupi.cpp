#include "steenrod/cupi.hpp"

#include <mutex>
#include <set>
#include <sstream>

#include "steenrod/errors.hpp"

namespace steenrod {

std::vector<std::pair<WGenerator, Coeff>> WGenerator::boundary() const {
  if (i <= 0) return {};
  return {{WGenerator{i - 1, twisted}, 1}, {WGenerator{i - 1, !twisted}, parity_sign(i)}};
}

// ---------------------------------------------------------------------------
// SimplexChain

void SimplexChain::add(const Simplex& x, Coeff c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(x, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

Coeff SimplexChain::coeff(const Simplex& x) const {
  auto it = terms_.find(x);
  return it == terms_.end() ? 0 : it->second;
}

SimplexChain& SimplexChain::operator+=(const SimplexChain& other) {
  for (const auto& [x, c] : other.terms_) add(x, c);
  return *this;
}

SimplexChain SimplexChain::scaled(Coeff c) const {
  SimplexChain out;
  for (const auto& [x, v] : terms_) out.add(x, checked_mul(v, c));
  return out;
}

SimplexChain SimplexChain::boundary() const {
  SimplexChain out;
  for (const auto& [x, c] : terms_) {
    if (x.dim() == 0) continue;
    for (int u = 0; u <= x.dim(); ++u) out.add(x.face(u), checked_mul(c, parity_sign(u)));
  }
  return out;
}

std::string SimplexChain::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [x, c] : terms_) {
    if (!out.empty()) out += ' ';
    out += (c > 0 ? "+" : "") + std::to_string(c) + x.str();
  }
  return out;
}

// ---------------------------------------------------------------------------
// TensorChain

void TensorChain::add(const Simplex& left, const Simplex& right, Coeff c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(Key{left, right}, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

Coeff TensorChain::coeff(const Simplex& left, const Simplex& right) const {
  auto it = terms_.find(Key{left, right});
  return it == terms_.end() ? 0 : it->second;
}

TensorChain& TensorChain::operator+=(const TensorChain& other) {
  for (const auto& [k, c] : other.terms_) add(k.first, k.second, c);
  return *this;
}

TensorChain& TensorChain::operator-=(const TensorChain& other) {
  for (const auto& [k, c] : other.terms_) add(k.first, k.second, checked_neg(c));
  return *this;
}

TensorChain TensorChain::scaled(Coeff c) const {
  TensorChain out;
  for (const auto& [k, v] : terms_) out.add(k.first, k.second, checked_mul(v, c));
  return out;
}

TensorChain TensorChain::transposed() const {
  TensorChain out;
  for (const auto& [k, c] : terms_) {
    out.add(k.second, k.first, checked_mul(c, parity_sign(k.first.dim() * k.second.dim())));
  }
  return out;
}

TensorChain TensorChain::boundary() const {
  TensorChain out;
  for (const auto& [k, c] : terms_) {
    const auto& [a, b] = k;
    if (a.dim() > 0) {
      for (int u = 0; u <= a.dim(); ++u) out.add(a.face(u), b, checked_mul(c, parity_sign(u)));
    }
    if (b.dim() > 0) {
      const Coeff s = checked_mul(c, parity_sign(a.dim()));
      for (int u = 0; u <= b.dim(); ++u) out.add(a, b.face(u), checked_mul(s, parity_sign(u)));
    }
  }
  return out;
}

std::string TensorChain::str() const {
  if (terms_.empty()) return "0\n";
  std::string out;
  for (const auto& [k, c] : terms_) {
    out += (c > 0 ? "+" : "") + std::to_string(c) + " [" + k.first.key() + "|" + k.second.key() +
           "]\n";
  }
  return out;
}

Coeff augmentation(const SimplexChain& chain) {
  Coeff total = 0;
  for (const auto& [x, c] : chain.terms()) {
    if (x.dim() != 0) throw DegreeError("augmentation of a chain of nonzero degree");
    total = checked_add(total, c);
  }
  return total;
}

Coeff augmentation(const FormalChain& chain) {
  Coeff total = 0;
  for (const auto& [key, c] : chain.terms()) {
    if (key.degree != 0) throw DegreeError("augmentation of a chain of nonzero degree");
    total = checked_add(total, c);
  }
  return total;
}

// ---------------------------------------------------------------------------
// CupStructure

namespace {

// (−1)^p sign(π) for the concatenation a·b, or 0 on a repeated vertex.
Coeff join_sign(const Simplex& a, const Simplex& b) {
  std::size_t inversions = 0;
  for (Vertex s : a.vertices()) {
    for (Vertex t : b.vertices()) {
      if (s == t) return 0;
      if (s > t) ++inversions;
    }
  }
  return parity_sign(a.dim()) * parity_sign(static_cast<long long>(inversions));
}

Simplex merged(const Simplex& a, const Simplex& b) {
  std::vector<Vertex> vs = a.vertices();
  vs.insert(vs.end(), b.vertices().begin(), b.vertices().end());
  std::sort(vs.begin(), vs.end());
  return Simplex(std::move(vs));
}

}  // namespace

CupStructure::CupStructure(std::shared_ptr<const SimplicialComplex> complex)
    : complex_(std::move(complex)) {}

CupStructure::CupStructure(SimplicialComplex complex)
    : complex_(std::make_shared<const SimplicialComplex>(std::move(complex))) {}

void CupStructure::require(const Simplex& x) const {
  if (!complex_->contains(x)) throw UnknownSimplexError("simplex " + x.str() + " not in complex");
}

TensorChain CupStructure::aw_coproduct(const Simplex& x) const {
  require(x);
  TensorChain out;
  for (int k = 0; k <= x.dim(); ++k) out.add(x.slice(0, k), x.slice(k, x.dim()), 1);
  return out;
}

SimplexChain CupStructure::join(const Simplex& a, const Simplex& b) const {
  const Coeff sign = join_sign(a, b);
  if (sign == 0) return {};
  Simplex u = merged(a, b);
  if (!complex_->contains(u)) return {};
  return SimplexChain(u, sign);
}

TensorChain CupStructure::compute(int i, const Simplex& x, bool use_cache) const {
  if (i < 0 || i > x.dim()) return {};
  if (use_cache) {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find({i, x}); it != memo_.end()) return it->second;
  }
  TensorChain out;
  if (i == 0) {
    for (int k = 0; k <= x.dim(); ++k) out.add(x.slice(0, k), x.slice(k, x.dim()), 1);
  } else {
    // Every vertex involved lies in x, so joins are evaluated inside x̄.
    for (int k = 0; k <= x.dim(); ++k) {
      const Simplex front = x.slice(0, k);
      const Simplex back = x.slice(k, x.dim());
      const Coeff step = parity_sign(i) * parity_sign(static_cast<long long>(i - 1) * k);
      const TensorChain inner = compute(i - 1, back, use_cache).transposed();
      for (const auto& [pq, c] : inner.terms()) {
        const Coeff sign = join_sign(front, pq.first);
        if (sign == 0) continue;
        out.add(merged(front, pq.first), pq.second, checked_mul(checked_mul(c, sign), step));
      }
    }
  }
  if (use_cache) {
    std::unique_lock lock(mutex_);
    memo_.insert_or_assign({i, x}, out);
  }
  return out;
}

TensorChain CupStructure::cup_i(int i, const Simplex& x) const {
  require(x);
  return compute(i, x, true);
}

TensorChain CupStructure::cup_i_T(int i, const Simplex& x) const {
  return cup_i(i, x).transposed();
}

TensorChain CupStructure::evaluate(WGenerator g, const Simplex& x) const {
  return g.twisted ? cup_i_T(g.i, x) : cup_i(g.i, x);
}

TensorChain CupStructure::cup_i(int i, const SimplexChain& chain) const {
  TensorChain out;
  for (const auto& [x, c] : chain.terms()) out += cup_i(i, x).scaled(c);
  return out;
}

TensorChain CupStructure::cup_i_uncached(int i, const Simplex& x) const {
  require(x);
  return compute(i, x, false);
}

std::size_t CupStructure::cache_size() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

// ---------------------------------------------------------------------------
// Validation

namespace {

using TripleKey = std::tuple<Simplex, Simplex, Simplex>;

void add_triple(std::map<TripleKey, Coeff>& m, TripleKey k, Coeff c) {
  if (c == 0) return;
  auto [it, inserted] = m.try_emplace(std::move(k), c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) m.erase(it);
  }
}

std::string triple_str(const std::map<TripleKey, Coeff>& m) {
  std::string out;
  for (const auto& [k, c] : m) {
    out += (c > 0 ? "+" : "") + std::to_string(c) + " [" + std::get<0>(k).key() + "|" +
           std::get<1>(k).key() + "|" + std::get<2>(k).key() + "] ";
  }
  return out;
}

// ∂(△(g⊗x)) − (−1)^i △(g⊗∂x) − △(∂g⊗x)
TensorChain boundary_defect(const CupStructure& cup, WGenerator g, const Simplex& x) {
  TensorChain defect = cup.evaluate(g, x).boundary();
  if (x.dim() > 0) {
    const Coeff s = parity_sign(g.i);
    for (int u = 0; u <= x.dim(); ++u) {
      defect -= cup.evaluate(g, x.face(u)).scaled(s * parity_sign(u));
    }
  }
  for (const auto& [h, c] : g.boundary()) defect -= cup.evaluate(h, x).scaled(c);
  return defect;
}

}  // namespace

std::vector<CoalgebraFailure> check_special_values(const CupStructure& cup, const Simplex& x,
                                                   int max_i) {
  std::vector<CoalgebraFailure> failures;
  const int n = x.dim();
  for (int i = n + 1; i <= max_i; ++i) {
    const TensorChain v = cup.cup_i(i, x);
    if (!v.is_zero()) failures.push_back({"vanishing above dimension", x, i, v.str()});
  }
  const TensorChain top = cup.cup_i(n, x);
  if (top.size() != 1 || !top.terms().contains({x, x}) ||
      (top.coeff(x, x) != 1 && top.coeff(x, x) != -1)) {
    failures.push_back({"top value ±x⊗x", x, n, top.str()});
  }
  if (n >= 1) {
    std::set<TensorChain::Key> expected;
    for (int u = 0; u <= n; ++u) {
      expected.insert(u % 2 == 0 ? TensorChain::Key{x, x.face(u)} : TensorChain::Key{x.face(u), x});
    }
    const TensorChain sub = cup.cup_i(n - 1, x);
    std::set<TensorChain::Key> support;
    bool units = true;
    for (const auto& [k, c] : sub.terms()) {
      support.insert(k);
      units = units && (c == 1 || c == -1);
    }
    if (support != expected || !units) {
      failures.push_back({"sub-top face pattern", x, n - 1, sub.str()});
    }
  }
  return failures;
}

CoalgebraReport validate_symmetric_coalgebra(const SimplicialComplex& complex, int max_i) {
  CoalgebraReport report;
  const CupStructure cup(std::make_shared<const SimplicialComplex>(complex));

  for (const Simplex& x : complex.simplices()) {
    ++report.simplices_checked;
    for (int i = 0; i <= max_i; ++i) {
      for (bool twisted : {false, true}) {
        const TensorChain defect = boundary_defect(cup, WGenerator{i, twisted}, x);
        ++report.identities_checked;
        if (!defect.is_zero()) {
          report.failures.push_back(
              {twisted ? "boundary relation (T e_i)" : "boundary relation (e_i)", x, i,
               defect.str()});
        }
      }
    }

    const TensorChain aw = cup.cup_i(0, x);
    std::map<TripleKey, Coeff> left, right;
    for (const auto& [ab, c] : aw.terms()) {
      for (const auto value = cup.cup_i(0, ab.first); const auto& [pq, d] : value.terms()) {
        add_triple(left, {pq.first, pq.second, ab.second}, checked_mul(c, d));
      }
      for (const auto value = cup.cup_i(0, ab.second); const auto& [pq, d] : value.terms()) {
        add_triple(right, {ab.first, pq.first, pq.second}, checked_mul(c, d));
      }
    }
    for (const auto& [k, c] : right) add_triple(left, k, checked_neg(c));
    ++report.identities_checked;
    if (!left.empty()) report.failures.push_back({"coassociativity", x, 0, triple_str(left)});

    SimplexChain counit_left, counit_right;
    for (const auto& [ab, c] : aw.terms()) {
      if (ab.first.dim() == 0) counit_left.add(ab.second, c);
      if (ab.second.dim() == 0) counit_right.add(ab.first, c);
    }
    const SimplexChain id(x, 1);
    report.identities_checked += 2;
    if (counit_left != id) report.failures.push_back({"counit (ε⊗id)", x, 0, counit_left.str()});
    if (counit_right != id) report.failures.push_back({"counit (id⊗ε)", x, 0, counit_right.str()});

    for (CoalgebraFailure& f : check_special_values(cup, x, max_i)) {
      report.failures.push_back(std::move(f));
    }
    ++report.identities_checked;

    // Naturality: △_i of each face computed inside ȳ and inside X agree.
    const CupStructure local(closure(x));
    for (const Simplex& face : local.complex().simplices()) {
      for (int i = 0; i <= max_i; ++i) {
        ++report.identities_checked;
        TensorChain diff = local.cup_i(i, face);
        diff -= cup.cup_i(i, face);
        if (!diff.is_zero()) {
          report.failures.push_back({"naturality in closure of " + x.str(), face, i, diff.str()});
        }
      }
    }
  }
  return report;
}

}  // namespace steenrod
