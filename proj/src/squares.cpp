#include "steenrod/squares.hpp"

#include <algorithm>

#include "steenrod/errors.hpp"

namespace steenrod {

SimplicialCohomology::SimplicialCohomology(std::shared_ptr<const SimplicialComplex> complex)
    : cup_(complex), space_(f2_cohomology(simplicial_chains(*complex))) {}

CohomologyClass make_class(const SimplicialCohomology& h, int degree, BitVector cocycle) {
  BitVector coords = h.space().reduce(degree, cocycle);
  return CohomologyClass{degree, std::move(cocycle), std::move(coords)};
}

CohomologyClass basis_class(const SimplicialCohomology& h, int degree, std::size_t j) {
  const auto& reps = h.space().representatives(degree);
  if (j >= reps.size()) throw IndexError("no basis class " + std::to_string(j));
  return make_class(h, degree, reps[j]);
}

BitVector evaluate_pairing(const SimplicialCohomology& h, int j, const BitVector& alpha,
                           int alpha_degree, const BitVector& beta, int beta_degree) {
  const SimplicialComplex& X = h.complex();
  const int out_degree = alpha_degree + beta_degree - j;
  BitVector out(X.count_of_dim(out_degree));
  if (j < 0) return out;
  for (const Simplex& x : X.simplices_of_dim(out_degree)) {
    bool value = false;
    for (const auto chain = h.cup().cup_i(j, x); const auto& [ab, c] : chain.terms()) {
      if (c % 2 == 0 || ab.first.dim() != alpha_degree || ab.second.dim() != beta_degree) continue;
      if (alpha.get(X.position_in_dim(ab.first)) && beta.get(X.position_in_dim(ab.second))) {
        value = !value;
      }
    }
    if (value) out.set(X.position_in_dim(x));
  }
  return out;
}

BitVector cup_product(const SimplicialCohomology& h, const BitVector& alpha, int alpha_degree,
                      const BitVector& beta, int beta_degree) {
  return evaluate_pairing(h, 0, alpha, alpha_degree, beta, beta_degree);
}

CohomologyClass steenrod_square(const SimplicialCohomology& h, int k, const CohomologyClass& alpha) {
  if (k < 0) throw DomainError("Steenrod square with negative index");
  const int n = alpha.degree;
  BitVector rep = evaluate_pairing(h, n - k, alpha.representative, n, alpha.representative, n);
  return make_class(h, n + k, std::move(rep));
}

std::vector<SquareEntry> squares_table(const SimplicialCohomology& h, int max_k) {
  std::vector<SquareEntry> table;
  for (int degree : h.space().degrees()) {
    for (std::size_t j = 0; j < h.space().dimension(degree); ++j) {
      const CohomologyClass alpha = basis_class(h, degree, j);
      const int top = max_k < 0 ? degree : std::min(degree, max_k);
      for (int k = 0; k <= top; ++k) {
        table.push_back(SquareEntry{degree, j, k, steenrod_square(h, k, alpha).coordinates});
      }
    }
  }
  return table;
}

}  // namespace steenrod
