#include "fewbody/multicommutator.hpp"

#include "fewbody/embed.hpp"

namespace fewbody {

MultiCommutatorBound lemma1_bound(const std::vector<Profile>& chain, const LocalTerm& base) {
  if (chain.empty()) throw Error("lemma1_bound: empty chain");
  MultiCommutatorBound out;
  out.base_support_size = static_cast<int>(base.support.size());
  out.base_norm = matrix_operator_norm(base.matrix);
  double k_running = out.base_support_size;
  double product = 1.0;
  for (const auto& p : chain) {
    out.chain.emplace_back(p.q, p.g);
    out.K.push_back(k_running);
    product *= 2.0 * p.g * k_running;
    k_running += p.q;
  }
  out.bound = product * out.base_norm;
  return out;
}

double multicommutator_exact(const std::vector<FewBodyOperator>& chain,
                             const FewBodyOperator& base) {
  if (chain.empty()) throw Error("multicommutator_exact: empty chain");
  Eigen::MatrixXcd acc = embed(base);
  for (const auto& a : chain) {
    Eigen::MatrixXcd m = embed(a);
    if (m.rows() != acc.rows()) throw Error("multicommutator: lattice mismatch in chain");
    acc = (m * acc - acc * m).eval();
  }
  return matrix_operator_norm(acc);
}

}  // namespace fewbody
