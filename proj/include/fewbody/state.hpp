#pragma once

#include <Eigen/Dense>

#include "fewbody/product_state.hpp"

namespace fewbody {

/// A quantum state in one of three representations: a product state (per-site
/// factors), a pure state vector on the full Hilbert space, or a dense
/// density matrix.  The bound engine is representation-agnostic.
struct AnyState {
  enum class Kind { Product, Pure, Density };
  Kind kind = Kind::Product;
  ProductState product;
  Eigen::VectorXcd pure;
  Eigen::MatrixXcd density;

  static AnyState of(ProductState st) {
    AnyState s;
    s.kind = Kind::Product;
    s.product = std::move(st);
    return s;
  }
  static AnyState of_pure(Eigen::VectorXcd psi) {
    AnyState s;
    s.kind = Kind::Pure;
    s.pure = std::move(psi);
    return s;
  }
  static AnyState of_density(Eigen::MatrixXcd rho) {
    AnyState s;
    s.kind = Kind::Density;
    s.density = std::move(rho);
    return s;
  }

  void validate(const Lattice& lat) const;

  /// Full dense density matrix (may be large; subject to the caller's cap).
  Eigen::MatrixXcd to_density(const Lattice& lat) const;

  /// Reduced density matrix on `support` (ascending sites): tensor product
  /// of factors for product states, partial trace otherwise.
  Eigen::MatrixXcd reduced(const Lattice& lat, const std::vector<int>& support) const;
};

/// Random full-rank density matrix (generally non-product).
Eigen::MatrixXcd random_density_matrix(std::int64_t dim, Rng& rng);

/// Center every term against an arbitrary state via its reduced densities.
FewBodyOperator center(const FewBodyOperator& op, const AnyState& state);

}  // namespace fewbody
