#include "steenrod/gradedalg.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <sstream>

#include "steenrod/errors.hpp"

namespace steenrod {

// ---------------------------------------------------------------------------
// GradedBasis

GradedBasis GradedBasis::from_ranks(const std::map<int, std::size_t>& ranks) {
  GradedBasis basis;
  for (const auto& [degree, rank] : ranks) {
    for (std::size_t i = 0; i < rank; ++i) basis.add(degree, "g" + std::to_string(i));
  }
  return basis;
}

GenKey GradedBasis::add(int degree, std::string label) {
  auto& labels = gens_[degree];
  if (std::find(labels.begin(), labels.end(), label) != labels.end()) {
    throw MalformedInputError("duplicate generator label '" + label + "' in degree " +
                              std::to_string(degree));
  }
  labels.push_back(std::move(label));
  return GenKey{degree, labels.size() - 1};
}

std::size_t GradedBasis::rank(int degree) const {
  auto it = gens_.find(degree);
  return it == gens_.end() ? 0 : it->second.size();
}

std::size_t GradedBasis::total_rank() const {
  std::size_t total = 0;
  for (const auto& [_, labels] : gens_) total += labels.size();
  return total;
}

std::vector<int> GradedBasis::degrees() const {
  std::vector<int> out;
  for (const auto& [degree, labels] : gens_) {
    if (!labels.empty()) out.push_back(degree);
  }
  return out;
}

const std::vector<std::string>& GradedBasis::labels(int degree) const {
  static const std::vector<std::string> kEmpty;
  auto it = gens_.find(degree);
  return it == gens_.end() ? kEmpty : it->second;
}

const std::string& GradedBasis::label(GenKey key) const {
  const auto& l = labels(key.degree);
  if (key.index >= l.size()) {
    throw IndexError("generator index " + std::to_string(key.index) + " out of range in degree " +
                     std::to_string(key.degree));
  }
  return l[key.index];
}

std::optional<GenKey> GradedBasis::find(int degree, const std::string& label) const {
  const auto& l = labels(degree);
  auto it = std::find(l.begin(), l.end(), label);
  if (it == l.end()) return std::nullopt;
  return GenKey{degree, static_cast<std::size_t>(it - l.begin())};
}

std::vector<GenKey> GradedBasis::generators() const {
  std::vector<GenKey> out;
  for (const auto& [degree, labels] : gens_) {
    for (std::size_t i = 0; i < labels.size(); ++i) out.push_back(GenKey{degree, i});
  }
  return out;
}

bool GradedBasis::same_shape(const GradedBasis& other) const {
  return degrees() == other.degrees() &&
         std::all_of(gens_.begin(), gens_.end(),
                     [&](const auto& kv) { return kv.second.size() == other.rank(kv.first); });
}

// ---------------------------------------------------------------------------
// FormalChain

void FormalChain::add(GenKey key, Coeff c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

Coeff FormalChain::coeff(GenKey key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? 0 : it->second;
}

std::optional<int> FormalChain::degree() const {
  if (terms_.empty()) return std::nullopt;
  const int d = terms_.begin()->first.degree;
  for (const auto& [key, _] : terms_) {
    if (key.degree != d) return std::nullopt;
  }
  return d;
}

FormalChain& FormalChain::operator+=(const FormalChain& other) {
  for (const auto& [key, c] : other.terms_) add(key, c);
  return *this;
}

FormalChain& FormalChain::operator-=(const FormalChain& other) {
  for (const auto& [key, c] : other.terms_) add(key, checked_neg(c));
  return *this;
}

FormalChain FormalChain::scaled(Coeff c) const {
  FormalChain out;
  for (const auto& [key, v] : terms_) out.add(key, checked_mul(v, c));
  return out;
}

// ---------------------------------------------------------------------------
// GradedMatrix

GradedMatrix::GradedMatrix(GradedBasis source, GradedBasis target, int shift)
    : source_(std::move(source)), target_(std::move(target)), shift_(shift) {
  for (int d : source_.degrees()) blocks_[d].resize(source_.rank(d));
}

GradedMatrix GradedMatrix::identity(const GradedBasis& basis) {
  GradedMatrix m(basis, basis, 0);
  for (const GenKey& g : basis.generators()) m.add_entry(g.degree, g.index, g.index, 1);
  return m;
}

const SparseColumn& GradedMatrix::empty_column() {
  static const SparseColumn kEmpty;
  return kEmpty;
}

void GradedMatrix::add_entry(int source_degree, std::size_t row, std::size_t col, Coeff value) {
  if (col >= source_.rank(source_degree)) {
    throw IndexError("column " + std::to_string(col) + " out of range in source degree " +
                     std::to_string(source_degree));
  }
  if (row >= target_.rank(source_degree + shift_)) {
    throw IndexError("row " + std::to_string(row) + " out of range in target degree " +
                     std::to_string(source_degree + shift_));
  }
  if (value == 0) return;
  auto& column = blocks_[source_degree][col];
  auto [it, inserted] = column.try_emplace(row, value);
  if (!inserted) {
    it->second = checked_add(it->second, value);
    if (it->second == 0) column.erase(it);
  }
}

Coeff GradedMatrix::entry(int source_degree, std::size_t row, std::size_t col) const {
  const auto& column = this->column(GenKey{source_degree, col});
  auto it = column.find(row);
  return it == column.end() ? 0 : it->second;
}

const SparseColumn& GradedMatrix::column(GenKey source_key) const {
  auto it = blocks_.find(source_key.degree);
  if (it == blocks_.end() || source_key.index >= it->second.size()) {
    if (source_key.index >= source_.rank(source_key.degree)) {
      throw IndexError("source generator out of range");
    }
    return empty_column();
  }
  return it->second[source_key.index];
}

FormalChain GradedMatrix::image(GenKey source_key) const {
  FormalChain out;
  const int target_degree = source_key.degree + shift_;
  for (const auto& [row, v] : column(source_key)) out.add(GenKey{target_degree, row}, v);
  return out;
}

FormalChain GradedMatrix::apply(const FormalChain& chain) const {
  FormalChain out;
  for (const auto& [key, c] : chain.terms()) out += image(key).scaled(c);
  return out;
}

GradedMatrix GradedMatrix::compose(const GradedMatrix& rhs) const {
  if (!rhs.target_.same_shape(source_)) {
    throw ShapeError("composition of graded matrices with mismatched bases");
  }
  GradedMatrix out(rhs.source_, target_, shift_ + rhs.shift_);
  for (const auto& [degree, columns] : rhs.blocks_) {
    for (std::size_t col = 0; col < columns.size(); ++col) {
      for (const auto& [mid, a] : columns[col]) {
        for (const auto& [row, b] : column(GenKey{degree + rhs.shift_, mid})) {
          out.add_entry(degree, row, col, checked_mul(a, b));
        }
      }
    }
  }
  return out;
}

void GradedMatrix::check_compatible(const GradedMatrix& rhs) const {
  if (shift_ != rhs.shift_ || !source_.same_shape(rhs.source_) ||
      !target_.same_shape(rhs.target_)) {
    throw ShapeError("graded matrices of different shape");
  }
}

GradedMatrix GradedMatrix::operator+(const GradedMatrix& rhs) const {
  check_compatible(rhs);
  GradedMatrix out = *this;
  for (const auto& [degree, columns] : rhs.blocks_) {
    for (std::size_t col = 0; col < columns.size(); ++col) {
      for (const auto& [row, v] : columns[col]) out.add_entry(degree, row, col, v);
    }
  }
  return out;
}

GradedMatrix GradedMatrix::operator-(const GradedMatrix& rhs) const {
  return *this + rhs.scaled(-1);
}

GradedMatrix GradedMatrix::scaled(Coeff c) const {
  GradedMatrix out(source_, target_, shift_);
  for (const auto& [degree, columns] : blocks_) {
    for (std::size_t col = 0; col < columns.size(); ++col) {
      for (const auto& [row, v] : columns[col]) out.add_entry(degree, row, col, checked_mul(v, c));
    }
  }
  return out;
}

bool GradedMatrix::is_zero() const { return nonzeros() == 0; }

std::size_t GradedMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& [_, columns] : blocks_) {
    for (const auto& column : columns) n += column.size();
  }
  return n;
}

bool GradedMatrix::operator==(const GradedMatrix& rhs) const {
  if (shift_ != rhs.shift_ || !source_.same_shape(rhs.source_) ||
      !target_.same_shape(rhs.target_)) {
    return false;
  }
  return (*this - rhs).is_zero();
}

// ---------------------------------------------------------------------------
// ChainComplexData

ChainComplexData::ChainComplexData() : differential_(basis_, basis_, -1) {}

ChainComplexData::ChainComplexData(GradedBasis basis, GradedMatrix differential)
    : basis_(std::move(basis)), differential_(std::move(differential)) {
  if (differential_.shift() != -1) {
    throw MalformedInputError("differential must lower degree by one");
  }
  if (!differential_.source().same_shape(basis_) || !differential_.target().same_shape(basis_)) {
    throw ShapeError("differential does not act on the complex's basis");
  }
  if (!differential_.compose(differential_).is_zero()) {
    throw MalformedInputError("differential does not square to zero");
  }
}

ChainComplexData ChainComplexData::unit(int degree) {
  GradedBasis basis;
  basis.add(degree, "1");
  GradedMatrix d(basis, basis, -1);
  return ChainComplexData(basis, d);
}

ChainComplexData tensor_complex(const ChainComplexData& a, const ChainComplexData& b) {
  GradedBasis basis;
  std::map<std::pair<GenKey, GenKey>, GenKey> index;
  std::map<int, std::vector<std::pair<GenKey, GenKey>>> by_total;
  for (int p : a.basis().degrees()) {
    for (int q : b.basis().degrees()) {
      for (std::size_t i = 0; i < a.basis().rank(p); ++i) {
        for (std::size_t j = 0; j < b.basis().rank(q); ++j) {
          by_total[p + q].emplace_back(GenKey{p, i}, GenKey{q, j});
        }
      }
    }
  }
  for (auto& [n, pairs] : by_total) {
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [ka, kb] : pairs) {
      index[{ka, kb}] = basis.add(n, a.basis().label(ka) + "⊗" + b.basis().label(kb));
    }
  }
  GradedMatrix d(basis, basis, -1);
  for (const auto& [pair, key] : index) {
    const auto& [ka, kb] = pair;
    for (const auto value = a.differential().image(ka); const auto& [da, c] : value.terms()) {
      const GenKey t = index.at({da, kb});
      d.add_entry(key.degree, t.index, key.index, c);
    }
    const Coeff sign = parity_sign(ka.degree);
    for (const auto value = b.differential().image(kb); const auto& [db, c] : value.terms()) {
      const GenKey t = index.at({ka, db});
      d.add_entry(key.degree, t.index, key.index, checked_mul(sign, c));
    }
  }
  return ChainComplexData(std::move(basis), std::move(d));
}

GradedMatrix hom_differential(const GradedMatrix& f, const ChainComplexData& source,
                              const ChainComplexData& target) {
  if (!f.source().same_shape(source.basis()) || !f.target().same_shape(target.basis())) {
    throw ShapeError("map does not fit the given complexes");
  }
  const GradedMatrix left = target.differential().compose(f);
  const GradedMatrix right = f.compose(source.differential());
  return left - right.scaled(parity_sign(f.shift()));
}

bool verify_chain_map(const GradedMatrix& f, const ChainComplexData& source,
                      const ChainComplexData& target) {
  return hom_differential(f, source, target).is_zero();
}

namespace {

Coeff abs_coeff(Coeff v) { return v < 0 ? checked_neg(v) : v; }

void make_primitive(std::vector<Coeff>& v) {
  Coeff g = 0;
  for (Coeff x : v) g = std::gcd(g, abs_coeff(x));
  if (g > 1) {
    for (Coeff& x : v) x /= g;
  }
}

Coeff checked_lcm(Coeff a, Coeff b) {
  a = abs_coeff(a);
  b = abs_coeff(b);
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / std::gcd(a, b), b);
}

}  // namespace

std::vector<std::vector<Coeff>> integer_kernel(std::vector<std::vector<Coeff>> rows,
                                               std::size_t cols) {
  for (const auto& r : rows) {
    if (r.size() != cols) throw ShapeError("kernel input rows of inconsistent length");
  }
  // Fraction-free reduction to a form where each pivot column has one entry.
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pick = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (rows[r][c] != 0 && (pick == rows.size() ||
                              abs_coeff(rows[r][c]) < abs_coeff(rows[pick][c]))) {
        pick = r;
      }
    }
    if (pick == rows.size()) continue;
    std::swap(rows[rank], rows[pick]);
    const std::vector<Coeff>& piv = rows[rank];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const Coeff g = std::gcd(abs_coeff(piv[c]), abs_coeff(rows[r][c]));
      const Coeff mr = piv[c] / g;
      const Coeff mp = rows[r][c] / g;
      for (std::size_t k = 0; k < cols; ++k) {
        rows[r][k] = checked_sub(checked_mul(rows[r][k], mr), checked_mul(piv[k], mp));
      }
      make_primitive(rows[r]);
    }
    pivot_cols.push_back(c);
    ++rank;
  }
  rows.resize(rank);

  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<Coeff>> kernel;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Coeff scale = 1;
    for (std::size_t r = 0; r < rank; ++r) {
      if (rows[r][f] != 0) scale = checked_lcm(scale, rows[r][pivot_cols[r]]);
    }
    std::vector<Coeff> v(cols, 0);
    v[f] = scale;
    for (std::size_t r = 0; r < rank; ++r) {
      if (rows[r][f] == 0) continue;
      v[pivot_cols[r]] = checked_neg(checked_mul(rows[r][f], scale / rows[r][pivot_cols[r]]));
    }
    make_primitive(v);
    kernel.push_back(std::move(v));
  }
  return kernel;
}

// ---------------------------------------------------------------------------
// BitVector

BitVector::BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

bool BitVector::get(std::size_t i) const {
  if (i >= size_) throw IndexError("bit index out of range");
  return (words_[i / 64] >> (i % 64)) & 1U;
}

void BitVector::set(std::size_t i, bool value) {
  if (i >= size_) throw IndexError("bit index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
}

void BitVector::flip(std::size_t i) {
  if (i >= size_) throw IndexError("bit index out of range");
  words_[i / 64] ^= std::uint64_t{1} << (i % 64);
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_) throw ShapeError("bit vectors of different length");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool BitVector::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitVector::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t BitVector::first_set() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return size_;
}

bool BitVector::dot(const BitVector& other) const {
  if (other.size_ != size_) throw ShapeError("bit vectors of different length");
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
  return std::popcount(acc) % 2 == 1;
}

// ---------------------------------------------------------------------------
// Field2Space

namespace {

// Basis of {v : row·v = 0 for every row} over F2.
std::vector<BitVector> f2_nullspace(std::vector<BitVector> rows, std::size_t n) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t pick = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (rows[r].get(c)) {
        pick = r;
        break;
      }
    }
    if (pick == rows.size()) continue;
    std::swap(rows[rank], rows[pick]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r].get(c)) rows[r] ^= rows[rank];
    }
    pivots.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(n);
    v.set(f);
    for (std::size_t r = 0; r < rank; ++r) {
      if (rows[r].get(f)) v.set(pivots[r]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

Field2Space::Field2Space(const ChainComplexData& complex) {
  const GradedBasis& basis = complex.basis();
  for (int d : basis.degrees()) {
    Degree& deg = degrees_[d];
    deg.rank = basis.rank(d);
    for (std::size_t j = 0; j < basis.rank(d + 1); ++j) {
      BitVector row(deg.rank);
      for (const auto value = complex.differential().image(GenKey{d + 1, j}); const auto& [key, c] : value.terms()) {
        if (c % 2 != 0) row.flip(key.index);
      }
      deg.up_boundaries.push_back(std::move(row));
    }
  }
  for (auto& [d, deg] : degrees_) {
    // δ of each generator of degree d−1, as a cochain in degree d.
    if (auto below = degrees_.find(d - 1); below != degrees_.end()) {
      std::vector<BitVector> images(below->second.rank, BitVector(deg.rank));
      const auto& ups = below->second.up_boundaries;
      for (std::size_t j = 0; j < ups.size(); ++j) {
        for (std::size_t t = 0; t < below->second.rank; ++t) {
          if (ups[j].get(t)) images[t].set(j);
        }
      }
      for (auto& v : images) {
        if (v.any()) deg.coboundaries.push_back(std::move(v));
      }
    }
    const std::vector<BitVector> cocycles = f2_nullspace(deg.up_boundaries, deg.rank);

    // First pass fixes which coboundaries and cocycles are independent; the
    // second rebuilds the echelon with coordinates once the dimension is known.
    std::vector<BitVector> pivots_only;
    auto independent = [&pivots_only](const BitVector& b) {
      BitVector v = b;
      for (const BitVector& row : pivots_only) {
        if (v.get(row.first_set())) v ^= row;
      }
      if (!v.any()) return false;
      pivots_only.push_back(std::move(v));
      return true;
    };
    std::vector<BitVector> kept;
    for (const BitVector& b : deg.coboundaries) {
      if (independent(b)) kept.push_back(b);
    }
    deg.coboundaries = std::move(kept);
    for (const BitVector& z : cocycles) {
      if (independent(z)) deg.representatives.push_back(z);
    }

    const std::size_t dim = deg.representatives.size();
    auto push_row = [&deg](BitVector v, BitVector coords) {
      for (const EchelonRow& row : deg.echelon) {
        if (v.get(row.pivot)) {
          v ^= row.vector;
          coords ^= row.coords;
        }
      }
      const std::size_t pivot = v.first_set();
      deg.echelon.push_back(EchelonRow{pivot, std::move(v), std::move(coords)});
    };
    for (const BitVector& b : deg.coboundaries) push_row(b, BitVector(dim));
    for (std::size_t j = 0; j < dim; ++j) {
      BitVector coords(dim);
      coords.set(j);
      push_row(deg.representatives[j], std::move(coords));
    }
  }
}

const Field2Space::Degree& Field2Space::at(int degree) const {
  static const Degree kEmpty;
  auto it = degrees_.find(degree);
  return it == degrees_.end() ? kEmpty : it->second;
}

std::vector<int> Field2Space::degrees() const {
  std::vector<int> out;
  for (const auto& [d, _] : degrees_) out.push_back(d);
  return out;
}

std::size_t Field2Space::dimension(int degree) const { return at(degree).representatives.size(); }

std::size_t Field2Space::cochain_rank(int degree) const { return at(degree).rank; }

const std::vector<BitVector>& Field2Space::representatives(int degree) const {
  return at(degree).representatives;
}

const std::vector<BitVector>& Field2Space::coboundary_basis(int degree) const {
  return at(degree).coboundaries;
}

BitVector Field2Space::coboundary(int degree, const BitVector& cochain) const {
  const Degree& deg = at(degree);
  if (cochain.size() != deg.rank) throw ShapeError("cochain has the wrong length");
  BitVector out(at(degree + 1).rank);
  for (std::size_t j = 0; j < deg.up_boundaries.size(); ++j) {
    if (deg.up_boundaries[j].dot(cochain)) out.set(j);
  }
  return out;
}

bool Field2Space::is_cocycle(int degree, const BitVector& cochain) const {
  return !coboundary(degree, cochain).any();
}

BitVector Field2Space::reduce(int degree, const BitVector& cocycle) const {
  if (!is_cocycle(degree, cocycle)) {
    throw DomainError("cochain of degree " + std::to_string(degree) + " is not a cocycle");
  }
  const Degree& deg = at(degree);
  BitVector v = cocycle;
  BitVector coords(deg.representatives.size());
  for (const EchelonRow& row : deg.echelon) {
    if (v.get(row.pivot)) {
      v ^= row.vector;
      coords ^= row.coords;
    }
  }
  if (v.any()) throw DomainError("cocycle outside the span of representatives and coboundaries");
  return coords;
}

Field2Space f2_cohomology(const ChainComplexData& complex) { return Field2Space(complex); }

}  // namespace steenrod
