#pragma once

#include <gmpxx.h>

#include "fewbody/bounds.hpp"

namespace fewbody {

/// Exact binomial coefficient; binom(a, 0) = 1 for any a >= -1, and
/// binom(a, b) = 0 for 0 <= a < b.
mpz_class binom_exact(long a, long b);

/// theta_j = (-1)^j binom(n_bar - m + j - 1, j), j = 0..m-1.
/// Requires n_bar >= m >= 1.
std::vector<mpz_class> theta_coefficients(int n_bar, int m);

/// True iff the closed form satisfies the overcounting recurrence
///   theta_{j0} = -sum_{j<j0} theta_j binom(n_bar - m + j0, j0 - j) + 1
/// exactly in integer arithmetic.
bool theta_recurrence_check(int n_bar, int m);

struct SummandCount {
  mpz_class exact;  // sum_j |theta_j| binom(n_bar, m-j)
  mpz_class bound;  // 2^m binom(n_bar, m)
};
SummandCount summand_count(int n_bar, int m);

/// || A^m - sum_j theta_j S_{m-j} || by dense embedding, with
/// S_{m-j} = (1/n_bar^m) sum_{|Xi|=m-j} (sum_{i in Xi} A_i^c)^m.
double verify_moment_identity(const Layering& lay, int m, std::int64_t subset_budget = 100000);

/// Total subsets a verify_moment_identity call would enumerate.
mpz_class moment_identity_subsets(int n_bar, int m);

struct SubsetMomentParams {
  double g = 0.0;      // max layer extensiveness (after centering)
  double k = 0.0;      // max layer locality
  double C = 0.5;
  double lambda = 0.0; // 2 g k
  int n_sites = 0;
  double x_max = 0.0;  // norm cap on any subset average
};

/// Adaptive Simpson quadrature (relative tolerance against the integral
/// scale passed as tol).
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol);

/// Certified upper bound on |<A_Xi^m>| for any size-n_xi subset average:
/// m * int_0^{x_max} x^{m-1} min(1, 2 T(x)) dx with T the two-branch tail
/// built from the size-n_xi C-tilde.  Adaptive quadrature, upper-inflated.
double moment_bound_subgaussian(int n_xi, int m, const SubsetMomentParams& p);

/// The assembled moment-bound pipeline for a centered layering.
struct InfiniteDimEval {
  BoundConstants constants;
  SubsetMomentParams params;
  int m_max_used = 0;
  std::vector<double> moment_bounds;  // moment_bounds[m-1] >= |<A^m>|
  SpectralDistribution dist_avg;      // exact distribution of the average

  /// min over even m of bound_m / x^m, clamped to 1; x > 0 required.
  /// Markov on odd moments is not sign-safe, so only even orders enter.
  double tail(double x) const;
};

InfiniteDimEval prepare_infinite_dim(const Layering& lay, const ProductState& state,
                                     int m_max = 12);

BoundCertificate certify_infinite_dim_tail(const Layering& lay, const ProductState& state,
                                           int m_max = 12, int grid_points = 101);

}  // namespace fewbody
