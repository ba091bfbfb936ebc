#include "fewbody/embed.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

namespace fewbody {

namespace {
std::atomic<std::int64_t> g_dim_cap{0};  // 0 = uninitialized

std::int64_t init_cap() {
  if (const char* env = std::getenv("FEWBODY_DIM_CAP")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 16384;
}
}  // namespace

std::int64_t dim_cap() {
  std::int64_t c = g_dim_cap.load();
  if (c == 0) {
    c = init_cap();
    g_dim_cap.store(c);
  }
  return c;
}

void set_dim_cap(std::int64_t cap) {
  if (cap < 2) throw Error("dimension cap must be at least 2");
  g_dim_cap.store(cap);
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

static std::int64_t checked_dim(const Lattice& lat) {
  std::int64_t dim = lat.hilbert_dim();
  if (dim > dim_cap())
    throw Error("embedding requires dimension " + std::to_string(dim) +
                " which exceeds the cap " + std::to_string(dim_cap()));
  return dim;
}

Eigen::MatrixXcd embed_term(const Lattice& lat, const LocalTerm& term) {
  const std::int64_t dim = checked_dim(lat);
  const int d = lat.local_dim;
  const int N = lat.n_sites;
  const int q = static_cast<int>(term.support.size());

  // stride of site i in the full index (site 0 most significant)
  std::vector<std::int64_t> stride(N, 1);
  for (int i = N - 2; i >= 0; --i) stride[i] = stride[i + 1] * d;

  std::int64_t sub = 1;
  for (int j = 0; j < q; ++j) sub *= d;

  // offsets contributed by each support configuration
  std::vector<std::int64_t> off(sub, 0);
  for (std::int64_t cfg = 0; cfg < sub; ++cfg) {
    std::int64_t c = cfg, o = 0;
    for (int j = q - 1; j >= 0; --j) {
      o += (c % d) * stride[term.support[j]];
      c /= d;
    }
    off[cfg] = o;
  }

  std::vector<int> rest_sites;
  for (int i = 0; i < N; ++i)
    if (std::find(term.support.begin(), term.support.end(), i) == term.support.end())
      rest_sites.push_back(i);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<int> digits(rest_sites.size(), 0);
  while (true) {
    std::int64_t base = 0;
    for (std::size_t k = 0; k < rest_sites.size(); ++k) base += digits[k] * stride[rest_sites[k]];
    for (std::int64_t r = 0; r < sub; ++r)
      for (std::int64_t c = 0; c < sub; ++c) out(base + off[r], base + off[c]) += term.matrix(r, c);
    // advance mixed-radix counter over the rest sites
    std::size_t k = 0;
    for (; k < digits.size(); ++k) {
      if (++digits[k] < d) break;
      digits[k] = 0;
    }
    if (k == digits.size()) break;
  }
  return out;
}

Eigen::MatrixXcd embed(const FewBodyOperator& op) {
  const std::int64_t dim = checked_dim(op.lattice);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  bool all_hermitian = true;
  for (const auto& t : op.terms) {
    out += embed_term(op.lattice, t);
    all_hermitian = all_hermitian && t.hermitian;
  }
  if (all_hermitian) out = 0.5 * (out + out.adjoint()).eval();
  return out;
}

double operator_norm_exact(const FewBodyOperator& op) {
  return matrix_operator_norm(embed(op));
}

}  // namespace fewbody
