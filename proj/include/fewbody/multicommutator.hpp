#pragma once

#include "fewbody/operator.hpp"

namespace fewbody {

/// Norm bound for [A_n, [A_{n-1}, [..., [A_1, O_X]...]]] in terms of the
/// chain profiles (k_i, g_i) and the base term:
///   prod_{m=1..n} (2 g_m K_m) * ||O_X||,  K_m = |X| + sum_{i<=m-1} k_i.
struct MultiCommutatorBound {
  std::vector<std::pair<int, double>> chain;  // (k_i, g_i)
  int base_support_size = 0;
  double base_norm = 0.0;
  std::vector<double> K;
  double bound = 0.0;
};

MultiCommutatorBound lemma1_bound(const std::vector<Profile>& chain, const LocalTerm& base);

/// Exact norm of the nested commutator via dense embedding, innermost first.
double multicommutator_exact(const std::vector<FewBodyOperator>& chain,
                             const FewBodyOperator& base);

}  // namespace fewbody
