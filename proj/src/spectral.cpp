#include "fewbody/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fewbody {

void AnyState::validate(const Lattice& lat) const {
  const std::int64_t dim = lat.hilbert_dim();
  switch (kind) {
    case Kind::Product:
      product.validate();
      if (product.lattice.n_sites != lat.n_sites) throw Error("state lattice mismatch");
      break;
    case Kind::Pure:
      if (pure.size() != dim) throw Error("pure state dimension mismatch");
      if (std::abs(pure.norm() - 1.0) > 1e-10) throw Error("pure state is not normalized");
      break;
    case Kind::Density: {
      if (density.rows() != dim || density.cols() != dim)
        throw Error("density matrix dimension mismatch");
      if ((density - density.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw Error("density matrix is not Hermitian");
      if (std::abs(density.trace().real() - 1.0) > 1e-9)
        throw Error("density matrix trace is not 1");
      break;
    }
  }
}

Eigen::MatrixXcd AnyState::to_density(const Lattice& lat) const {
  switch (kind) {
    case Kind::Pure:
      return pure * pure.adjoint();
    case Kind::Density:
      return density;
    case Kind::Product: {
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(1, 1);
      for (const auto& f : product.factors) rho = kron(rho, f);
      return rho;
    }
  }
  throw Error("unreachable");
}

Eigen::MatrixXcd AnyState::reduced(const Lattice& lat, const std::vector<int>& support) const {
  if (kind == Kind::Product) return product.reduced(support);

  const int d = lat.local_dim;
  const int N = lat.n_sites;
  std::vector<std::int64_t> stride(N, 1);
  for (int i = N - 2; i >= 0; --i) stride[i] = stride[i + 1] * d;

  std::int64_t sub = 1;
  for (std::size_t j = 0; j < support.size(); ++j) sub *= d;
  std::vector<std::int64_t> off(sub, 0);
  for (std::int64_t cfg = 0; cfg < sub; ++cfg) {
    std::int64_t c = cfg, o = 0;
    for (int j = static_cast<int>(support.size()) - 1; j >= 0; --j) {
      o += (c % d) * stride[support[j]];
      c /= d;
    }
    off[cfg] = o;
  }
  std::vector<int> rest;
  for (int i = 0; i < N; ++i)
    if (std::find(support.begin(), support.end(), i) == support.end()) rest.push_back(i);

  Eigen::MatrixXcd rho = to_density(lat);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(sub, sub);
  std::vector<int> digits(rest.size(), 0);
  while (true) {
    std::int64_t base = 0;
    for (std::size_t k = 0; k < rest.size(); ++k) base += digits[k] * stride[rest[k]];
    for (std::int64_t r = 0; r < sub; ++r)
      for (std::int64_t c = 0; c < sub; ++c) out(r, c) += rho(base + off[r], base + off[c]);
    std::size_t k = 0;
    for (; k < digits.size(); ++k) {
      if (++digits[k] < d) break;
      digits[k] = 0;
    }
    if (k == digits.size()) break;
  }
  return out;
}

Eigen::MatrixXcd random_density_matrix(std::int64_t dim, Rng& rng) {
  Eigen::MatrixXcd w(dim, dim);
  for (std::int64_t r = 0; r < dim; ++r)
    for (std::int64_t c = 0; c < dim; ++c) w(r, c) = rng.cnormal();
  Eigen::MatrixXcd rho = w * w.adjoint();
  rho /= rho.trace().real();
  return rho;
}

FewBodyOperator center(const FewBodyOperator& op, const AnyState& state) {
  if (state.kind == AnyState::Kind::Product) return center(op, state.product);
  FewBodyOperator out = op;
  for (auto& t : out.terms) {
    Eigen::MatrixXcd rho = state.reduced(op.lattice, t.support);
    cplx mean = (rho * t.matrix).trace();
    t.matrix -= mean.real() * Eigen::MatrixXcd::Identity(t.matrix.rows(), t.matrix.cols());
  }
  return out;
}

Eigensystem eigensystem(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw Error("eigensystem of non-square matrix");
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw Error("eigensystem requires a Hermitian matrix");
  Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed to converge");
  return Eigensystem{es.eigenvalues(), es.eigenvectors()};
}

static SpectralDistribution merge_bins(const Eigen::VectorXd& values,
                                       const std::vector<double>& raw_weights) {
  SpectralDistribution dist;
  double amax = values.size() ? std::max(std::abs(values(0)), std::abs(values(values.size() - 1)))
                              : 0.0;
  dist.merge_tol = tol::merge * std::max(1.0, amax);
  double wsum = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    double w = raw_weights[i];
    if (w < 0.0) {
      if (w < -tol::weight) {
        // weights are <v|rho|v>; anything meaningfully negative means rho
        // was not PSD
        throw Error("negative spectral weight " + std::to_string(w));
      }
      w = 0.0;
    }
    if (!dist.eigenvalues.empty() && values(i) - dist.eigenvalues.back() <= dist.merge_tol) {
      dist.weights.back() += w;
    } else {
      dist.eigenvalues.push_back(values(i));
      dist.weights.push_back(w);
    }
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-7)
    throw Error("spectral weights sum to " + std::to_string(wsum));
  return dist;
}

SpectralDistribution distribution_of_matrix(const Eigen::MatrixXcd& m, const AnyState& state,
                                            const Lattice& lat) {
  Eigensystem es = eigensystem(m);
  const Eigen::Index n = es.values.size();
  std::vector<double> w(n, 0.0);
  if (state.kind == AnyState::Kind::Pure) {
    for (Eigen::Index i = 0; i < n; ++i) {
      cplx a = es.vectors.col(i).dot(state.pure);
      w[i] = std::norm(a);
    }
  } else {
    Eigen::MatrixXcd rho = state.to_density(lat);
    Eigen::MatrixXcd rv = rho * es.vectors;
    for (Eigen::Index i = 0; i < n; ++i) {
      cplx a = es.vectors.col(i).dot(rv.col(i));
      w[i] = a.real();
    }
  }
  return merge_bins(es.values, w);
}

SpectralDistribution spectral_distribution(const FewBodyOperator& op, const AnyState& state) {
  return distribution_of_matrix(embed(op), state, op.lattice);
}

double mgf_exact(const SpectralDistribution& dist, double tau) {
  if (!std::isfinite(tau)) throw Error("mgf requires finite tau");
  if (dist.eigenvalues.empty()) return 0.0;
  // shift by the max of tau*lambda over supported eigenvalues
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dist.eigenvalues.size(); ++i)
    if (dist.weights[i] > 0.0) shift = std::max(shift, tau * dist.eigenvalues[i]);
  if (!std::isfinite(shift)) return 0.0;  // no supported eigenvalue at all
  double s = 0.0;
  for (std::size_t i = 0; i < dist.eigenvalues.size(); ++i)
    if (dist.weights[i] > 0.0) s += dist.weights[i] * std::exp(tau * dist.eigenvalues[i] - shift);
  return shift + std::log(s);
}

double tail_exact(const SpectralDistribution& dist, double x, TailSide side) {
  double s = 0.0;
  for (std::size_t i = 0; i < dist.eigenvalues.size(); ++i) {
    double lam = dist.eigenvalues[i];
    bool in = (side == TailSide::Geq) ? (lam >= x - dist.merge_tol)
                                      : (lam <= -x + dist.merge_tol);
    if (in) s += dist.weights[i];
  }
  return std::min(s, 1.0);
}

double tail_two_sided(const SpectralDistribution& dist, double x) {
  double s = tail_exact(dist, x, TailSide::Geq) + tail_exact(dist, x, TailSide::LeqNegated);
  return std::min(s, 1.0);
}

double moment_exact(const SpectralDistribution& dist, int m) {
  if (m < 0) throw Error("moment order must be nonnegative");
  double s = 0.0;
  for (std::size_t i = 0; i < dist.eigenvalues.size(); ++i)
    s += dist.weights[i] * std::pow(dist.eigenvalues[i], m);
  return s;
}

double excitation_norm(const FewBodyOperator& H, const FewBodyOperator& A,
                       const Eigen::VectorXcd& omega, double x) {
  Eigen::MatrixXcd h = embed(H);
  Eigen::MatrixXcd a = embed(A);
  if (omega.size() != h.rows()) throw Error("excitation_norm: state dimension mismatch");
  if (std::abs(omega.norm() - 1.0) > 1e-10) throw Error("excitation_norm: omega not normalized");
  Eigen::VectorXcd phi = a * omega;
  Eigensystem es = eigensystem(h);
  double amax = std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
  double tol_x = tol::merge * std::max(1.0, amax);
  double s2 = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) >= x - tol_x) {
      cplx c = es.vectors.col(i).dot(phi);
      s2 += std::norm(c);
    }
  }
  return std::sqrt(std::max(0.0, s2));
}

double commutator_norm_exact(const FewBodyOperator& A, const FewBodyOperator& B) {
  Eigen::MatrixXcd a = embed(A);
  Eigen::MatrixXcd b = embed(B);
  if (a.rows() != b.rows()) throw Error("commutator of operators on different lattices");
  return matrix_operator_norm(a * b - b * a);
}

double mgf_product_blocks(const std::vector<LocalTerm>& blocks, const ProductState& state,
                          double tau) {
  std::vector<bool> seen(state.lattice.n_sites, false);
  for (const auto& b : blocks)
    for (int s : b.support) {
      if (seen[s]) throw Error("mgf_product_blocks requires pairwise-disjoint supports");
      seen[s] = true;
    }
  double total = 0.0;
  for (const auto& b : blocks) {
    Eigensystem es = eigensystem(b.matrix);
    Eigen::MatrixXcd rho = state.reduced(b.support);
    double shift = tau >= 0.0 ? tau * es.values.maxCoeff() : tau * es.values.minCoeff();
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
      cplx w = es.vectors.col(i).dot(rho * es.vectors.col(i));
      s += std::max(0.0, w.real()) * std::exp(tau * es.values(i) - shift);
    }
    total += shift + std::log(s);
  }
  return total;
}

}  // namespace fewbody
