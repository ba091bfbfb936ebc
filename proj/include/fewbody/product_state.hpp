#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fewbody/lattice.hpp"
#include "fewbody/operator.hpp"

namespace fewbody {

/// Product state rho_1 (x) ... (x) rho_N, one d x d density matrix per site.
struct ProductState {
  Lattice lattice;
  std::vector<Eigen::MatrixXcd> factors;

  void validate() const;

  /// Tensor product of the factors over `support` (ascending site order).
  Eigen::MatrixXcd reduced(const std::vector<int>& support) const;
};

// Named single-qubit factors.
Eigen::MatrixXcd factor_zero();   // |0><0|
Eigen::MatrixXcd factor_plus();   // |+><+|
Eigen::MatrixXcd factor_mixed(int d = 2);  // I/d
Eigen::MatrixXcd factor_pure(const Eigen::VectorXcd& amplitudes);

ProductState all_zero_state(const Lattice& lat);
ProductState all_plus_state(const Lattice& lat);
ProductState maximally_mixed_state(const Lattice& lat);

/// Deterministic-in-rng random product state; mixed = true draws each factor
/// as w |psi><psi| + (1-w) I/d with random w, else pure |psi><psi|.
ProductState random_product_state(const Lattice& lat, Rng& rng, bool mixed);

/// Subtract tr(rho_X o_X) * I from every term, so tr(rho * op) == 0.
FewBodyOperator center(const FewBodyOperator& op, const ProductState& state);

}  // namespace fewbody
