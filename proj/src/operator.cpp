#include "fewbody/operator.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace fewbody {

void LocalTerm::validate(const Lattice& lat) const {
  if (support.empty()) throw Error("term support must be nonempty");
  if (!std::is_sorted(support.begin(), support.end())) throw Error("term support must be sorted");
  for (std::size_t i = 1; i < support.size(); ++i)
    if (support[i] == support[i - 1]) throw Error("term support has duplicate sites");
  if (support.front() < 0 || support.back() >= lat.n_sites)
    throw Error("term support outside lattice");

  std::int64_t want = 1;
  for (std::size_t i = 0; i < support.size(); ++i) want *= lat.local_dim;
  if (matrix.rows() != want || matrix.cols() != want)
    throw Error("term matrix dimension does not match d^|support|");

  if (hermitian) {
    double dev = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (dev > tol::term_hermitian)
      throw Error("term flagged hermitian deviates from M = M^dag by " + std::to_string(dev));
  }
}

void FewBodyOperator::validate() const {
  lattice.validate();
  for (const auto& t : terms) t.validate(lattice);
}

double matrix_operator_norm(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return 0.0;
  // sqrt of the top eigenvalue of M^dag M; SelfAdjointEigenSolver is
  // deterministic, which keeps certificates reproducible.
  Eigen::MatrixXcd mm = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mm, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

Profile analyze_profile(const FewBodyOperator& op) {
  Profile p;
  p.term_count = op.terms.size();
  std::map<int, double> per_site;
  for (const auto& t : op.terms) {
    p.q = std::max(p.q, static_cast<int>(t.support.size()));
    double nrm = matrix_operator_norm(t.matrix);
    for (int s : t.support) per_site[s] += nrm;
  }
  for (const auto& [site, sum] : per_site) p.g = std::max(p.g, sum);
  p.lambda = 2.0 * p.g * p.q;
  p.global_norm_bound = p.g * op.lattice.n_sites;
  return p;
}

bool check_spatial_range(const FewBodyOperator& op, int r) {
  if (!op.lattice.geometry) throw Error("no geometry");
  if (r <= 0) throw Error("range must be positive");
  for (const auto& t : op.terms)
    if (op.lattice.diameter(t.support) >= r) return false;
  return true;
}

Eigen::Matrix2cd pauli_matrix(char p) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  const cplx i(0.0, 1.0);
  switch (p) {
    case 'I': m(0, 0) = 1; m(1, 1) = 1; break;
    case 'X': m(0, 1) = 1; m(1, 0) = 1; break;
    case 'Y': m(0, 1) = -i; m(1, 0) = i; break;
    case 'Z': m(0, 0) = 1; m(1, 1) = -1; break;
    default: throw Error(std::string("unknown Pauli letter '") + p + "'");
  }
  return m;
}

Eigen::MatrixXcd pauli_string_matrix(const std::string& s) {
  if (s.empty()) throw Error("empty Pauli string");
  Eigen::MatrixXcd m = pauli_matrix(s[0]);
  for (std::size_t k = 1; k < s.size(); ++k) {
    Eigen::Matrix2cd f = pauli_matrix(s[k]);
    Eigen::MatrixXcd out(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) out.block(2 * r, 2 * c, 2, 2) = m(r, c) * f;
    m = std::move(out);
  }
  return m;
}

FewBodyOperator operator_sum(const FewBodyOperator& a, const FewBodyOperator& b) {
  if (a.lattice.n_sites != b.lattice.n_sites || a.lattice.local_dim != b.lattice.local_dim)
    throw Error("operator_sum: lattices differ");
  FewBodyOperator out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

FewBodyOperator scaled(const FewBodyOperator& op, double factor) {
  FewBodyOperator out = op;
  for (auto& t : out.terms) t.matrix *= factor;
  return out;
}

}  // namespace fewbody
