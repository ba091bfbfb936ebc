#pragma once

#include "fewbody/operator.hpp"

namespace fewbody {

enum class TermStyle { PauliString, DenseHermitian };

/// Deterministic-in-seed random operator with locality <= q, rescaled so
/// analyze_profile reports extensiveness exactly g.
FewBodyOperator random_instance(std::uint64_t seed, int n_sites, int q, double g, int term_count,
                                TermStyle style, int local_dim = 2);

/// GUE-style random Hermitian matrix.
Eigen::MatrixXcd random_hermitian(std::int64_t dim, Rng& rng);

}  // namespace fewbody
