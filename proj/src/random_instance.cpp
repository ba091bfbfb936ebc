#include "fewbody/random_instance.hpp"

#include <algorithm>

namespace fewbody {

Eigen::MatrixXcd random_hermitian(std::int64_t dim, Rng& rng) {
  Eigen::MatrixXcd g(dim, dim);
  for (std::int64_t r = 0; r < dim; ++r)
    for (std::int64_t c = 0; c < dim; ++c) g(r, c) = rng.cnormal();
  return 0.5 * (g + g.adjoint()).eval();
}

static std::vector<int> random_support(int n_sites, int size, Rng& rng) {
  std::vector<int> sites(n_sites);
  for (int i = 0; i < n_sites; ++i) sites[i] = i;
  // partial Fisher-Yates
  for (int i = 0; i < size; ++i) {
    int j = i + static_cast<int>(rng.below(n_sites - i));
    std::swap(sites[i], sites[j]);
  }
  std::vector<int> sup(sites.begin(), sites.begin() + size);
  std::sort(sup.begin(), sup.end());
  return sup;
}

FewBodyOperator random_instance(std::uint64_t seed, int n_sites, int q, double g, int term_count,
                                TermStyle style, int local_dim) {
  if (n_sites < 1 || q < 1 || q > n_sites || term_count < 1 || g <= 0.0)
    throw Error("random_instance: infeasible parameters");
  if (style == TermStyle::PauliString && local_dim != 2)
    throw Error("random_instance: pauli-string style requires local_dim 2");

  Rng rng(seed);
  FewBodyOperator op;
  op.lattice = Lattice(n_sites, local_dim);

  static const char letters[3] = {'X', 'Y', 'Z'};
  for (int t = 0; t < term_count; ++t) {
    int size = 1 + static_cast<int>(rng.below(q));
    LocalTerm term;
    term.support = random_support(n_sites, size, rng);
    if (style == TermStyle::PauliString) {
      std::string s;
      for (int k = 0; k < size; ++k) s += letters[rng.below(3)];
      double coeff = rng.uniform(-1.0, 1.0);
      if (std::abs(coeff) < 1e-3) coeff = coeff < 0 ? -1e-3 : 1e-3;
      term.matrix = coeff * pauli_string_matrix(s);
    } else {
      std::int64_t dim = 1;
      for (int k = 0; k < size; ++k) dim *= local_dim;
      term.matrix = random_hermitian(dim, rng);
    }
    term.hermitian = true;
    op.terms.push_back(std::move(term));
  }

  Profile p = analyze_profile(op);
  if (p.g <= 0.0) throw Error("random_instance: degenerate draw with zero extensiveness");
  double scale = g / p.g;
  for (auto& t : op.terms) t.matrix *= scale;
  return op;
}

}  // namespace fewbody
