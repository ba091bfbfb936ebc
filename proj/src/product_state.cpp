#include "fewbody/product_state.hpp"

#include <cmath>

namespace fewbody {

void ProductState::validate() const {
  lattice.validate();
  if (static_cast<int>(factors.size()) != lattice.n_sites)
    throw Error("product state needs one factor per site");
  for (const auto& f : factors) {
    if (f.rows() != lattice.local_dim || f.cols() != lattice.local_dim)
      throw Error("state factor has wrong dimension");
    if ((f - f.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
      throw Error("state factor is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(f, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::state)
      throw Error("state factor is not positive semidefinite");
    if (std::abs(f.trace().real() - 1.0) > tol::state || std::abs(f.trace().imag()) > tol::state)
      throw Error("state factor trace is not 1");
  }
}

Eigen::MatrixXcd ProductState::reduced(const std::vector<int>& support) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int s : support) {
    const Eigen::MatrixXcd& f = factors.at(s);
    Eigen::MatrixXcd next(out.rows() * f.rows(), out.cols() * f.cols());
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c)
        next.block(r * f.rows(), c * f.cols(), f.rows(), f.cols()) = out(r, c) * f;
    out = std::move(next);
  }
  return out;
}

Eigen::MatrixXcd factor_zero() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = 1.0;
  return m;
}

Eigen::MatrixXcd factor_plus() {
  Eigen::MatrixXcd m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return m;
}

Eigen::MatrixXcd factor_mixed(int d) {
  return Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d);
}

Eigen::MatrixXcd factor_pure(const Eigen::VectorXcd& amplitudes) {
  double n2 = amplitudes.squaredNorm();
  if (n2 <= 0.0) throw Error("pure factor amplitudes are all zero");
  Eigen::VectorXcd v = amplitudes / std::sqrt(n2);
  return v * v.adjoint();
}

static ProductState uniform_state(const Lattice& lat, const Eigen::MatrixXcd& f) {
  ProductState st;
  st.lattice = lat;
  st.factors.assign(lat.n_sites, f);
  return st;
}

ProductState all_zero_state(const Lattice& lat) {
  if (lat.local_dim != 2) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(lat.local_dim, lat.local_dim);
    m(0, 0) = 1.0;
    return uniform_state(lat, m);
  }
  return uniform_state(lat, factor_zero());
}

ProductState all_plus_state(const Lattice& lat) {
  if (lat.local_dim != 2) throw Error("plus state requires local_dim 2");
  return uniform_state(lat, factor_plus());
}

ProductState maximally_mixed_state(const Lattice& lat) {
  return uniform_state(lat, factor_mixed(lat.local_dim));
}

ProductState random_product_state(const Lattice& lat, Rng& rng, bool mixed) {
  ProductState st;
  st.lattice = lat;
  st.factors.reserve(lat.n_sites);
  const int d = lat.local_dim;
  for (int i = 0; i < lat.n_sites; ++i) {
    Eigen::VectorXcd psi(d);
    for (int a = 0; a < d; ++a) psi(a) = rng.cnormal();
    Eigen::MatrixXcd f = factor_pure(psi);
    if (mixed) {
      double w = rng.uniform(0.05, 0.95);
      f = w * f + (1.0 - w) * factor_mixed(d);
    }
    st.factors.push_back(f);
  }
  return st;
}

FewBodyOperator center(const FewBodyOperator& op, const ProductState& state) {
  FewBodyOperator out = op;
  for (auto& t : out.terms) {
    Eigen::MatrixXcd rho = state.reduced(t.support);
    cplx mean = (rho * t.matrix).trace();
    // Hermitian terms against Hermitian rho have a real mean; keep the real
    // part so the shifted term stays Hermitian.
    t.matrix -= mean.real() * Eigen::MatrixXcd::Identity(t.matrix.rows(), t.matrix.cols());
  }
  return out;
}

}  // namespace fewbody
