#pragma once

#include <functional>
#include <string>

#include "fewbody/decomposition.hpp"
#include "fewbody/spectral.hpp"

namespace fewbody {

enum class Lemma5Variant { Statement, Proof };
enum class CommutatorMode { Exact, LambdaGN };

/// Constants backing a bound: the per-block Hoeffding constant C, the scale
/// lambda = 2 g k, the dyadic depth m0 = ceil(log2 n_bar), and the derived
/// C-tilde of both variants.  tau_max is the half-width of the tau domain.
struct BoundConstants {
  double C = 0.5;
  double g = 0.0;
  double k = 0.0;
  double lambda = 0.0;
  int n_bar = 1;
  int m0 = 0;
  double c_tilde_statement = 0.0;
  double c_tilde_proof = 0.0;
  double tau_max = 0.0;
};

struct BoundCertificate {
  std::string theorem_id;
  std::string digest;
  BoundConstants constants;
  std::vector<double> grid;  // tau or x sample points
  std::vector<double> bound_values;
  std::vector<double> exact_values;
  double margin_min = 0.0;  // min(bound - exact)
  bool pass = false;
  std::string note;
};

int ceil_log2(int n);

/// tau domain half-width 1/(4 lambda); unconstrained (1.0) when lambda == 0.
double tau_max_for(double lambda);

std::vector<double> make_tau_grid(double tau_max, int n = 101);
std::vector<double> make_x_grid(double x_max, int n = 101);

/// Assemble a certificate; pass iff every point satisfies
/// bound - exact >= -1e-9 * (1 + |bound|).
BoundCertificate make_certificate(std::string theorem_id, std::string digest,
                                  BoundConstants constants, std::vector<double> grid,
                                  std::vector<double> bound_values,
                                  std::vector<double> exact_values);

// ---- closed-form kernels -------------------------------------------------

/// Per-independent-block Hoeffding: sum of tau^2 (2||a||)^2 / 8.
double hoeffding_sum(const std::vector<double>& block_norms, double tau);
double hoeffding_block_mgf(const Layer& layer, double tau);

/// C-tilde = 2 g^2 C / k + (3 lambda g / c_v) ceil(log2 n_bar), c_v = 2 or 8.
double lemma5_c_tilde(double g, double k, double C, int n_bar, Lemma5Variant variant);

/// max(exp(-x^2 / (4 c_tilde N)), exp(-x / (8 lambda))), clamped to 1.
double two_branch_tail(double c_tilde, int n_sites, double lambda, double x);

/// (-sigma/lambda) log(1 - lambda |tau|), with the sigma -> 0 limit handled.
double thm3_mgf_formula(double sigma, double lambda, double tau);

/// (x/sigma)^{sigma/lambda} e^{-(x-sigma)/lambda} for x >= sigma, clamped to 1.
double thm3_tail_formula(double sigma, double lambda, double x);

/// (x/(lambda q))^{q/(2k)} exp(-x/(2 k lambda) + q/(2k)) for x >= lambda q.
double cor4_formula(double lambda, int q, int k, double x);

/// ||A|| exp(-x/(5 k lambda) + q).
double akl_formula(double norm_a, int k, double lambda, int q, double x);

/// ((sigma1 + sigma2)/|x|)^2 clamped to 1.
double chebyshev_bound(double sigma1, double sigma2, double x);

/// inf over sampled tau >= 0 in the domain of exp(-tau x + mgf_bound(tau));
/// only nonnegative tau gives a valid Markov bound for the upper tail.
double mgf_to_tail(const std::function<double(double)>& mgf_bound, double x, double tau_max,
                   int n = 101);

// ---- theorem evaluators ---------------------------------------------------

/// Theorem joining two few-body MGFs:
///   M(A+B) <= [M(2A) + M(2B)]/2 + (3 tau^2 / 2) ||[A,B]||.
struct Thm1Eval {
  BoundConstants constants;
  SpectralDistribution dist_a, dist_b, dist_sum;
  double commutator_norm = 0.0;

  double bound(double tau) const;
  double exact(double tau) const;
};
Thm1Eval prepare_thm1(const FewBodyOperator& a, const FewBodyOperator& b, const AnyState& state,
                      CommutatorMode mode);
BoundCertificate certify_thm1(const FewBodyOperator& a, const FewBodyOperator& b,
                              const AnyState& state, CommutatorMode mode, int grid_points = 101);

/// Dyadic extension to n_bar summands:
///   M(A) <= 2^{-m0} sum_j M((2^{m0}/n_bar) A_j) + (3 lambda g N / 8) m0 tau^2.
struct Cor2Eval {
  BoundConstants constants;
  int n_sites = 0;
  std::vector<SpectralDistribution> dist_parts;
  SpectralDistribution dist_avg;

  double bound(double tau) const;
  double exact(double tau) const;
};
Cor2Eval prepare_cor2(const std::vector<FewBodyOperator>& parts, const AnyState& state);
BoundCertificate certify_cor2(const std::vector<FewBodyOperator>& parts, const AnyState& state,
                              int grid_points = 101);

/// Exactly-localized layers: M(A) <= (-sigma/lambda) log(1 - lambda |tau|)
/// and the tail form for x >= sigma.
struct Thm3Eval {
  BoundConstants constants;
  double sigma = 0.0;
  SpectralDistribution dist_avg;

  double mgf_bound(double tau) const { return thm3_mgf_formula(sigma, constants.lambda, tau); }
  double tail_bound(double x) const { return thm3_tail_formula(sigma, constants.lambda, x); }
  double exact_mgf(double tau) const { return mgf_exact(dist_avg, tau); }
  double exact_tail(double x) const { return tail_exact(dist_avg, x); }
};
/// Centers the layering, measures sigma = max layer localization width, and
/// verifies rho Pi_{>sigma} = rho Pi_{<-sigma} = 0 for every layer.
Thm3Eval prepare_thm3(const Layering& lay, const ProductState& state);
BoundCertificate certify_thm3_mgf(const Thm3Eval& ev, double lambda_tau_max = 0.9,
                                  int grid_points = 101);
BoundCertificate certify_thm3_tail(const Thm3Eval& ev, int grid_points = 101);
BoundCertificate certify_thm3_mgf(const Layering& lay, const ProductState& state,
                                  double lambda_tau_max = 0.9, int grid_points = 101);
BoundCertificate certify_thm3_tail(const Layering& lay, const ProductState& state,
                                   int grid_points = 101);

/// Frustration-free excitation bound (ratio form).
struct Cor4Eval {
  BoundConstants constants;  // profile of H
  int q = 0;                 // probe locality
  double probe_image_norm = 0.0;  // ||A|Omega>||
  Eigensystem h_eig;
  Eigen::VectorXcd phi;  // A|Omega>
  double x_min = 0.0;    // lambda q

  double bound(double x) const;
  double exact_ratio(double x) const;
};
Cor4Eval prepare_cor4(const FewBodyOperator& h, const FewBodyOperator& probe,
                      const Eigen::VectorXcd& omega);
BoundCertificate certify_cor4(const FewBodyOperator& h, const FewBodyOperator& probe,
                              const Eigen::VectorXcd& omega, double x_max, int grid_points = 101);

/// Baseline excitation bound ||A|| e^{-x/(5 k lambda) + q} (cited result).
BoundCertificate certify_akl(const FewBodyOperator& h, const FewBodyOperator& probe,
                             const Eigen::VectorXcd& omega, double x_max, int grid_points = 101);

/// Finite-dimensional Chernoff: M(A) <= C-tilde N tau^2 on |tau| <= 1/(4 lambda).
struct Lemma5Eval {
  BoundConstants constants;
  int n_sites = 0;
  SpectralDistribution dist_avg;

  double bound(double tau, Lemma5Variant v) const;
  double exact(double tau) const { return mgf_exact(dist_avg, tau); }
  double tail_bound(double x, Lemma5Variant v) const;
  double exact_tail(double x) const { return tail_exact(dist_avg, x); }
};
Lemma5Eval prepare_lemma5(const Layering& lay, const ProductState& state);
BoundCertificate certify_lemma5_mgf(const Lemma5Eval& ev, Lemma5Variant v, int grid_points = 101);
BoundCertificate certify_lemma5_tail(const Lemma5Eval& ev, Lemma5Variant v, int grid_points = 101);
BoundCertificate certify_lemma5_mgf(const Layering& lay, const ProductState& state,
                                    Lemma5Variant v, int grid_points = 101);
BoundCertificate certify_lemma5_tail(const Layering& lay, const ProductState& state,
                                     Lemma5Variant v, int grid_points = 101);

/// Single non-overlapping layer against the per-block Hoeffding sum.
BoundCertificate certify_hoeffding_layer(const Layer& layer, const ProductState& state,
                                         const Lattice& lat, int grid_points = 101);

/// Chebyshev baseline for A_1 + A_2 (sigma_i = sqrt of centered second moments).
BoundCertificate certify_chebyshev(const FewBodyOperator& a, const FewBodyOperator& b,
                                   const AnyState& state, int grid_points = 101);

/// Structural digest of operators/states for replayable certificates.
std::string digest_operator(const FewBodyOperator& op);
std::string digest_state(const AnyState& state);

}  // namespace fewbody
