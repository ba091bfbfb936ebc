#pragma once

#include <Eigen/Dense>

#include "fewbody/operator.hpp"

namespace fewbody {

/// Dense-embedding dimension cap (default 16384 = 2^14 qubit sites).
/// Overridable via set_dim_cap() or the FEWBODY_DIM_CAP environment variable.
std::int64_t dim_cap();
void set_dim_cap(std::int64_t cap);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Dense d^N x d^N embedding of a single term (identity elsewhere).
/// Site ordering: site 0 is the most significant tensor digit.
Eigen::MatrixXcd embed_term(const Lattice& lat, const LocalTerm& term);

/// Dense embedding of the whole operator.  If every term carries the
/// hermitian flag the result is symmetrized to (M + M^dag)/2.
Eigen::MatrixXcd embed(const FewBodyOperator& op);

/// Exact spectral norm of the embedded operator.
double operator_norm_exact(const FewBodyOperator& op);

}  // namespace fewbody
