#include "fewbody/moments.hpp"

#include <algorithm>
#include <cmath>

namespace fewbody {

mpz_class binom_exact(long a, long b) {
  if (b < 0) return 0;
  if (b == 0) return 1;
  if (a < 0) throw Error("binom_exact: negative upper argument");
  if (a < b) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return r;
}

std::vector<mpz_class> theta_coefficients(int n_bar, int m) {
  if (m < 1 || n_bar < m) throw Error("decomposition requires n_bar >= m >= 1");
  std::vector<mpz_class> theta(m);
  for (int j = 0; j < m; ++j) {
    mpz_class t = binom_exact(n_bar - m + j - 1, j);
    theta[j] = (j % 2 == 0) ? t : -t;
  }
  return theta;
}

bool theta_recurrence_check(int n_bar, int m) {
  std::vector<mpz_class> closed = theta_coefficients(n_bar, m);
  std::vector<mpz_class> rec(m);
  rec[0] = 1;
  for (int j0 = 1; j0 < m; ++j0) {
    mpz_class s = 0;
    for (int j = 0; j < j0; ++j) s += rec[j] * binom_exact(n_bar - m + j0, j0 - j);
    rec[j0] = -s + 1;
  }
  for (int j = 0; j < m; ++j)
    if (closed[j] != rec[j]) return false;
  return true;
}

SummandCount summand_count(int n_bar, int m) {
  std::vector<mpz_class> theta = theta_coefficients(n_bar, m);
  SummandCount out;
  out.exact = 0;
  for (int j = 0; j < m; ++j) out.exact += abs(theta[j]) * binom_exact(n_bar, m - j);
  out.bound = binom_exact(n_bar, m);
  mpz_mul_2exp(out.bound.get_mpz_t(), out.bound.get_mpz_t(), m);
  return out;
}

mpz_class moment_identity_subsets(int n_bar, int m) {
  mpz_class total = 0;
  for (int j = 0; j < m; ++j) total += binom_exact(n_bar, m - j);
  return total;
}

namespace {

/// Visit all size-r subsets of {0..n-1}.
template <typename F>
void for_each_subset(int n, int r, F&& f) {
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    f(idx);
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& m, int p) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  for (int i = 0; i < p; ++i) out = (out * m).eval();
  return out;
}

}  // namespace

double verify_moment_identity(const Layering& lay, int m, std::int64_t subset_budget) {
  const int n_bar = lay.n_bar;
  if (m < 1 || n_bar < m) throw Error("decomposition requires n_bar >= m >= 1");
  mpz_class want = moment_identity_subsets(n_bar, m);
  if (want > subset_budget)
    throw Error("moment identity needs " + want.get_str() + " subsets; budget is " +
                std::to_string(subset_budget));

  std::vector<Eigen::MatrixXcd> L;
  L.reserve(lay.layers.size());
  for (const auto& layer : lay.layers) L.push_back(embed(layer_operator(lay.lattice, layer)));
  const Eigen::Index dim = L.front().rows();

  Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& l : L) avg += l;
  avg /= static_cast<double>(n_bar);
  Eigen::MatrixXcd lhs = matrix_power(avg, m);

  std::vector<mpz_class> theta = theta_coefficients(n_bar, m);
  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(dim, dim);
  const double nbar_pow_m = std::pow(static_cast<double>(n_bar), m);
  for (int j = 0; j < m; ++j) {
    const int r = m - j;
    Eigen::MatrixXcd s_term = Eigen::MatrixXcd::Zero(dim, dim);
    for_each_subset(n_bar, r, [&](const std::vector<int>& idx) {
      Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
      for (int i : idx) sum += L[i];
      s_term += matrix_power(sum, m);
    });
    rhs += (theta[j].get_d() / nbar_pow_m) * s_term;
  }
  return matrix_operator_norm(lhs - rhs);
}

namespace {

/// Adaptive Simpson on a smooth piece.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol) {
  if (b <= a) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

double moment_bound_subgaussian(int n_xi, int m, const SubsetMomentParams& p) {
  if (m == 0) return 1.0;
  if (m < 0) throw Error("moment order must be nonnegative");
  if (n_xi < 1) throw Error("subset size must be positive");
  if (p.x_max <= 0.0) return 0.0;  // all layers are zero

  const double ct = lemma5_c_tilde(p.g, p.k, p.C, n_xi, Lemma5Variant::Statement);
  auto integrand = [&](double x) {
    double t = two_branch_tail(ct, p.n_sites, p.lambda, x);
    return m * std::pow(x, m - 1) * std::min(1.0, 2.0 * t);
  };

  // split where the clamp releases and where the branches cross, so each
  // piece is smooth
  std::vector<double> cuts = {0.0, p.x_max};
  if (ct > 0.0 && p.n_sites > 0)
    cuts.push_back(std::sqrt(4.0 * ct * p.n_sites * std::log(2.0)));
  if (p.lambda > 0.0) {
    cuts.push_back(8.0 * p.lambda * std::log(2.0));
    if (ct > 0.0 && p.n_sites > 0) cuts.push_back(ct * p.n_sites / (2.0 * p.lambda));
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = std::clamp(cuts[i], 0.0, p.x_max);
    double b = std::clamp(cuts[i + 1], 0.0, p.x_max);
    if (b > a) total += integrate_adaptive(integrand, a, b, 1e-6 * std::pow(p.x_max, m));
  }
  // beyond x_max the true tail vanishes, so truncation loses nothing; the
  // inflation keeps the quadrature on the upper side of the exact integral
  return total * (1.0 + 1e-5);
}

InfiniteDimEval prepare_infinite_dim(const Layering& lay, const ProductState& state, int m_max) {
  if (lay.n_bar < 2) throw Error("infinite-dim pipeline needs n_bar >= 2");
  AnyState st = AnyState::of(state);
  Layering cl = centered(lay, st);

  InfiniteDimEval ev;
  ev.params.g = cl.max_g();
  ev.params.k = cl.max_k();
  ev.params.C = 0.5;
  ev.params.lambda = 2.0 * ev.params.g * ev.params.k;
  ev.params.n_sites = cl.lattice.n_sites;
  ev.params.x_max = cl.layer_norm_cap();

  ev.constants.g = ev.params.g;
  ev.constants.k = ev.params.k;
  ev.constants.lambda = ev.params.lambda;
  ev.constants.n_bar = cl.n_bar;
  ev.constants.m0 = ceil_log2(cl.n_bar);
  ev.constants.tau_max = tau_max_for(ev.params.lambda);

  ev.m_max_used = std::min(m_max, cl.n_bar);
  const int n_bar = cl.n_bar;
  for (int m = 1; m <= ev.m_max_used; ++m) {
    std::vector<mpz_class> theta = theta_coefficients(n_bar, m);
    double bound = 0.0;
    for (int j = 0; j < m; ++j) {
      const int xi = m - j;
      double weight = mpz_class(abs(theta[j])).get_d() * binom_exact(n_bar, xi).get_d() *
                      std::pow(static_cast<double>(xi) / n_bar, m);
      bound += weight * moment_bound_subgaussian(xi, m, ev.params);
    }
    ev.moment_bounds.push_back(bound);
  }
  ev.dist_avg = spectral_distribution(average_operator(cl), st);
  return ev;
}

double InfiniteDimEval::tail(double x) const {
  if (x <= 0.0) throw Error("infinite_dim_tail requires x > 0");
  double best = 1.0;
  for (int m = 2; m <= m_max_used; m += 2)
    best = std::min(best, moment_bounds[m - 1] / std::pow(x, m));
  return best;
}

BoundCertificate certify_infinite_dim_tail(const Layering& lay, const ProductState& state,
                                           int m_max, int grid_points) {
  InfiniteDimEval ev = prepare_infinite_dim(lay, state, m_max);
  double span = std::max({std::abs(ev.dist_avg.min_value()), std::abs(ev.dist_avg.max_value()),
                          1.0});
  std::vector<double> grid(grid_points);
  std::vector<double> bounds, exacts;
  for (int i = 0; i < grid_points; ++i) {
    double x = 1.2 * span * (i + 1) / grid_points;  // strictly positive grid
    grid[i] = x;
    bounds.push_back(ev.tail(x));
    exacts.push_back(std::max(tail_exact(ev.dist_avg, x, TailSide::Geq),
                              tail_exact(ev.dist_avg, x, TailSide::LeqNegated)));
  }
  return make_certificate("thm6", "", ev.constants, grid, bounds, exacts);
}

}  // namespace fewbody
