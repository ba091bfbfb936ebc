#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fewbody/lattice.hpp"

namespace fewbody {

/// One local term o_X: a d^|X| x d^|X| matrix acting on the sites in
/// `support` (sorted ascending; the first site is the most significant
/// tensor digit).
struct LocalTerm {
  std::vector<int> support;
  Eigen::MatrixXcd matrix;
  bool hermitian = true;

  void validate(const Lattice& lat) const;
};

/// Locality/extensiveness profile: q = max support size, g = max over
/// sites of the summed spectral norms of incident terms, lambda = 2*g*q.
struct Profile {
  int q = 0;
  double g = 0.0;
  double lambda = 0.0;
  std::size_t term_count = 0;
  double global_norm_bound = 0.0;  // g * N
};

struct FewBodyOperator {
  Lattice lattice;
  std::vector<LocalTerm> terms;

  void validate() const;
  bool empty() const { return terms.empty(); }
};

/// Exact spectral norm (largest singular value) of a small dense matrix.
double matrix_operator_norm(const Eigen::MatrixXcd& m);

Profile analyze_profile(const FewBodyOperator& op);

/// True iff every term has diameter < r on the lattice geometry.
bool check_spatial_range(const FewBodyOperator& op, int r);

// Pauli algebra for local_dim 2.
Eigen::Matrix2cd pauli_matrix(char p);
Eigen::MatrixXcd pauli_string_matrix(const std::string& s);

/// Sum of two operators on the same lattice (term lists concatenated).
FewBodyOperator operator_sum(const FewBodyOperator& a, const FewBodyOperator& b);

/// Scale every term by a real factor.
FewBodyOperator scaled(const FewBodyOperator& op, double factor);

}  // namespace fewbody
