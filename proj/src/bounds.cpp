#include "fewbody/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace fewbody {

int ceil_log2(int n) {
  if (n < 1) throw Error("ceil_log2 of nonpositive value");
  int m = 0;
  int p = 1;
  while (p < n) {
    p *= 2;
    ++m;
  }
  return m;
}

double tau_max_for(double lambda) { return lambda > 0.0 ? 1.0 / (4.0 * lambda) : 1.0; }

std::vector<double> make_tau_grid(double tau_max, int n) {
  if (n < 2) throw Error("grid needs at least 2 points");
  double hi = tau_max * (1.0 - 1e-6);
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = -hi + 2.0 * hi * i / (n - 1);
  return grid;
}

std::vector<double> make_x_grid(double x_max, int n) {
  if (n < 2) throw Error("grid needs at least 2 points");
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = x_max * i / (n - 1);
  return grid;
}

BoundCertificate make_certificate(std::string theorem_id, std::string digest,
                                  BoundConstants constants, std::vector<double> grid,
                                  std::vector<double> bound_values,
                                  std::vector<double> exact_values) {
  if (grid.size() != bound_values.size() || grid.size() != exact_values.size())
    throw Error("certificate arrays misaligned");
  BoundCertificate cert;
  cert.theorem_id = std::move(theorem_id);
  cert.digest = std::move(digest);
  cert.constants = constants;
  cert.grid = std::move(grid);
  cert.bound_values = std::move(bound_values);
  cert.exact_values = std::move(exact_values);
  cert.pass = true;
  cert.margin_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cert.grid.size(); ++i) {
    double margin = cert.bound_values[i] - cert.exact_values[i];
    if (!std::isfinite(margin)) {
      // +inf bound over finite exact is sound; anything else fails
      if (std::isinf(cert.bound_values[i]) && cert.bound_values[i] > 0 &&
          std::isfinite(cert.exact_values[i]))
        continue;
      cert.pass = false;
      cert.margin_min = -std::numeric_limits<double>::infinity();
      continue;
    }
    cert.margin_min = std::min(cert.margin_min, margin);
    if (margin < -tol::margin * (1.0 + std::abs(cert.bound_values[i]))) cert.pass = false;
  }
  if (cert.grid.empty()) cert.margin_min = 0.0;
  return cert;
}

// ---- kernels ---------------------------------------------------------------

double hoeffding_sum(const std::vector<double>& block_norms, double tau) {
  double s = 0.0;
  for (double n : block_norms) s += (2.0 * n) * (2.0 * n);
  return tau * tau * s / 8.0;
}

double hoeffding_block_mgf(const Layer& layer, double tau) {
  return hoeffding_sum(layer.block_norms, tau);
}

double lemma5_c_tilde(double g, double k, double C, int n_bar, Lemma5Variant variant) {
  if (n_bar < 1) throw Error("lemma5_c_tilde: n_bar must be positive");
  if (k <= 0.0) return 0.0;  // zero operator
  double lambda = 2.0 * g * k;
  double cv = variant == Lemma5Variant::Statement ? 2.0 : 8.0;
  return 2.0 * g * g * C / k + (3.0 * lambda * g / cv) * ceil_log2(n_bar);
}

double two_branch_tail(double c_tilde, int n_sites, double lambda, double x) {
  if (x <= 0.0) return 1.0;
  double gauss = (c_tilde > 0.0 && n_sites > 0) ? std::exp(-x * x / (4.0 * c_tilde * n_sites)) : 0.0;
  double expo = lambda > 0.0 ? std::exp(-x / (8.0 * lambda)) : 0.0;
  return std::min(1.0, std::max(gauss, expo));
}

double thm3_mgf_formula(double sigma, double lambda, double tau) {
  if (sigma < 0.0) throw Error("thm3: negative width");
  double u = lambda * std::abs(tau);
  if (u >= 1.0) throw Error("thm3: lambda |tau| must be below 1");
  if (sigma == 0.0 || lambda == 0.0) return 0.0;
  return -(sigma / lambda) * std::log1p(-u);
}

double thm3_tail_formula(double sigma, double lambda, double x) {
  if (x < sigma) throw Error("thm3 tail requires x >= sigma");
  if (lambda <= 0.0) return x > sigma ? 0.0 : 1.0;
  if (sigma == 0.0) return std::exp(-x / lambda);
  if (x == sigma) return 1.0;
  double v = (sigma / lambda) * std::log(x / sigma) - (x - sigma) / lambda;
  return std::min(1.0, std::exp(v));
}

double cor4_formula(double lambda, int q, int k, double x) {
  if (q < 1 || k < 1 || lambda <= 0.0) throw Error("cor4 requires q, k >= 1 and lambda > 0");
  double threshold = lambda * q;
  if (x < threshold) throw Error("below validity threshold");
  double e = (q / (2.0 * k)) * std::log(x / threshold) - x / (2.0 * k * lambda) + q / (2.0 * k);
  return std::exp(e);
}

double akl_formula(double norm_a, int k, double lambda, int q, double x) {
  if (norm_a == 0.0) return 0.0;
  if (k < 1 || lambda <= 0.0) throw Error("akl requires k >= 1 and lambda > 0");
  return norm_a * std::exp(-x / (5.0 * k * lambda) + q);
}

double chebyshev_bound(double sigma1, double sigma2, double x) {
  if (x == 0.0) return 1.0;
  double r = (sigma1 + sigma2) / std::abs(x);
  return std::min(1.0, r * r);
}

double mgf_to_tail(const std::function<double(double)>& mgf_bound, double x, double tau_max,
                   int n) {
  if (tau_max < 0.0) throw Error("mgf_to_tail: empty domain");
  double hi = tau_max * (1.0 - 1e-6);
  double best = 1.0;  // tau = 0 always gives exp(mgf(0)) >= 1, clamp covers it
  for (int i = 0; i < n; ++i) {
    double tau = hi * i / (n - 1);
    double v = std::exp(-tau * x + mgf_bound(tau));
    best = std::min(best, v);
  }
  return best;
}

// ---- digests ---------------------------------------------------------------

static std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string digest_operator(const FewBodyOperator& op) {
  std::uint64_t h = fnv1a(&op.lattice.n_sites, sizeof op.lattice.n_sites);
  h = fnv1a(&op.lattice.local_dim, sizeof op.lattice.local_dim, h);
  for (const auto& t : op.terms) {
    h = fnv1a(t.support.data(), t.support.size() * sizeof(int), h);
    h = fnv1a(t.matrix.data(), sizeof(cplx) * t.matrix.size(), h);
  }
  return hex64(h);
}

std::string digest_state(const AnyState& state) {
  std::uint64_t h = fnv1a("state");
  switch (state.kind) {
    case AnyState::Kind::Product:
      for (const auto& f : state.product.factors)
        h = fnv1a(f.data(), sizeof(cplx) * f.size(), h);
      break;
    case AnyState::Kind::Pure:
      h = fnv1a(state.pure.data(), sizeof(cplx) * state.pure.size(), h);
      break;
    case AnyState::Kind::Density:
      h = fnv1a(state.density.data(), sizeof(cplx) * state.density.size(), h);
      break;
  }
  return hex64(h);
}

// ---- Theorem 1 -------------------------------------------------------------

double Thm1Eval::bound(double tau) const {
  if (std::abs(tau) >= constants.tau_max) throw Error("outside Theorem 1 domain");
  return 0.5 * (mgf_exact(dist_a, 2.0 * tau) + mgf_exact(dist_b, 2.0 * tau)) +
         1.5 * tau * tau * commutator_norm;
}

double Thm1Eval::exact(double tau) const { return mgf_exact(dist_sum, tau); }

Thm1Eval prepare_thm1(const FewBodyOperator& a, const FewBodyOperator& b, const AnyState& state,
                      CommutatorMode mode) {
  Profile pa = analyze_profile(a);
  Profile pb = analyze_profile(b);
  Thm1Eval ev;
  ev.constants.g = std::max(pa.g, pb.g);
  ev.constants.k = std::max(pa.q, pb.q);
  ev.constants.lambda = 2.0 * ev.constants.g * ev.constants.k;
  ev.constants.tau_max = tau_max_for(ev.constants.lambda);
  ev.constants.n_bar = 2;

  FewBodyOperator ac = center(a, state);
  FewBodyOperator bc = center(b, state);
  ev.dist_a = spectral_distribution(ac, state);
  ev.dist_b = spectral_distribution(bc, state);
  ev.dist_sum = spectral_distribution(operator_sum(ac, bc), state);
  ev.commutator_norm = mode == CommutatorMode::Exact
                           ? commutator_norm_exact(ac, bc)
                           : ev.constants.lambda * ev.constants.g * a.lattice.n_sites;
  return ev;
}

BoundCertificate certify_thm1(const FewBodyOperator& a, const FewBodyOperator& b,
                              const AnyState& state, CommutatorMode mode, int grid_points) {
  Thm1Eval ev = prepare_thm1(a, b, state, mode);
  std::vector<double> grid = make_tau_grid(ev.constants.tau_max, grid_points);
  std::vector<double> bounds, exacts;
  for (double tau : grid) {
    bounds.push_back(ev.bound(tau));
    exacts.push_back(ev.exact(tau));
  }
  std::string digest = digest_operator(a) + ":" + digest_operator(b) + ":" + digest_state(state);
  return make_certificate("thm1", digest, ev.constants, grid, bounds, exacts);
}

// ---- Corollary 2 -----------------------------------------------------------

double Cor2Eval::bound(double tau) const {
  if (std::abs(tau) >= constants.tau_max) throw Error("outside Corollary 2 domain");
  const double pow2 = std::ldexp(1.0, constants.m0);
  const double n_bar = static_cast<double>(constants.n_bar);
  double s = 0.0;
  for (const auto& d : dist_parts) s += mgf_exact(d, tau * pow2 / n_bar);
  return s / pow2 +
         (3.0 * constants.lambda * constants.g * n_sites / 8.0) * constants.m0 * tau * tau;
}

double Cor2Eval::exact(double tau) const { return mgf_exact(dist_avg, tau); }

Cor2Eval prepare_cor2(const std::vector<FewBodyOperator>& parts, const AnyState& state) {
  if (parts.empty()) throw Error("cor2 needs at least one summand");
  Cor2Eval ev;
  ev.constants.n_bar = static_cast<int>(parts.size());
  ev.constants.m0 = ceil_log2(ev.constants.n_bar);
  ev.n_sites = parts.front().lattice.n_sites;
  for (const auto& p : parts) {
    Profile pr = analyze_profile(p);
    ev.constants.g = std::max(ev.constants.g, pr.g);
    ev.constants.k = std::max(ev.constants.k, static_cast<double>(pr.q));
  }
  ev.constants.lambda = 2.0 * ev.constants.g * ev.constants.k;
  ev.constants.tau_max = tau_max_for(ev.constants.lambda);

  FewBodyOperator avg;
  avg.lattice = parts.front().lattice;
  for (const auto& p : parts) {
    FewBodyOperator pc = center(p, state);
    ev.dist_parts.push_back(spectral_distribution(pc, state));
    for (auto& t : pc.terms) {
      t.matrix /= static_cast<double>(ev.constants.n_bar);
      avg.terms.push_back(std::move(t));
    }
  }
  ev.dist_avg = spectral_distribution(avg, state);
  return ev;
}

BoundCertificate certify_cor2(const std::vector<FewBodyOperator>& parts, const AnyState& state,
                              int grid_points) {
  Cor2Eval ev = prepare_cor2(parts, state);
  std::vector<double> grid = make_tau_grid(ev.constants.tau_max, grid_points);
  std::vector<double> bounds, exacts;
  for (double tau : grid) {
    bounds.push_back(ev.bound(tau));
    exacts.push_back(ev.exact(tau));
  }
  std::string digest;
  for (const auto& p : parts) digest += digest_operator(p) + ":";
  digest += digest_state(state);
  return make_certificate("cor2", digest, ev.constants, grid, bounds, exacts);
}

// ---- Theorem 3 -------------------------------------------------------------

Thm3Eval prepare_thm3(const Layering& lay, const ProductState& state) {
  AnyState st = AnyState::of(state);
  Layering cl = centered(lay, st);

  Thm3Eval ev;
  ev.constants.g = cl.max_g();
  ev.constants.k = cl.max_k();
  ev.constants.lambda = 2.0 * ev.constants.g * ev.constants.k;
  ev.constants.n_bar = cl.n_bar;
  ev.constants.tau_max = ev.constants.lambda > 0.0 ? 1.0 / ev.constants.lambda : 1.0;

  ev.sigma = 0.0;
  for (std::size_t j = 0; j < cl.layers.size(); ++j) {
    double sj = localization_width(cl.layers[j], state, cl.lattice);
    ev.sigma = std::max(ev.sigma, sj);
    // verify the assumption rho Pi_{>sigma_j} = rho Pi_{<-sigma_j} = 0
    // against the full layer spectrum
    SpectralDistribution ld =
        spectral_distribution(layer_operator(cl.lattice, cl.layers[j]), st);
    double slack = sj * 1e-9 + ld.merge_tol + 1e-12;
    double leaked = 0.0;
    for (std::size_t i = 0; i < ld.eigenvalues.size(); ++i)
      if (std::abs(ld.eigenvalues[i]) > sj + slack) leaked += ld.weights[i];
    if (leaked > 1e-10)
      throw Error("layer " + std::to_string(j) + " violates exact localization; leaked weight " +
                  std::to_string(leaked));
  }
  ev.dist_avg = spectral_distribution(average_operator(cl), st);
  return ev;
}

BoundCertificate certify_thm3_mgf(const Thm3Eval& ev, double lambda_tau_max,
                                  int grid_points) {
  double tm = ev.constants.lambda > 0.0 ? lambda_tau_max / ev.constants.lambda : 1.0;
  std::vector<double> grid = make_tau_grid(tm, grid_points);
  std::vector<double> bounds, exacts;
  for (double tau : grid) {
    bounds.push_back(ev.mgf_bound(tau));
    exacts.push_back(ev.exact_mgf(tau));
  }
  return make_certificate("thm3-mgf", "", ev.constants, grid, bounds, exacts);
}

BoundCertificate certify_thm3_tail(const Thm3Eval& ev, int grid_points) {
  double span = std::max({std::abs(ev.dist_avg.min_value()), std::abs(ev.dist_avg.max_value()),
                          ev.sigma, 1.0});
  std::vector<double> grid(grid_points);
  for (int i = 0; i < grid_points; ++i)
    grid[i] = ev.sigma + (1.2 * span - ev.sigma) * i / (grid_points - 1);
  std::vector<double> bounds, exacts;
  for (double x : grid) {
    bounds.push_back(ev.tail_bound(x));
    exacts.push_back(std::max(tail_exact(ev.dist_avg, x, TailSide::Geq),
                              tail_exact(ev.dist_avg, x, TailSide::LeqNegated)));
  }
  return make_certificate("thm3-tail", "", ev.constants, grid, bounds, exacts);
}

BoundCertificate certify_thm3_mgf(const Layering& lay, const ProductState& state,
                                  double lambda_tau_max, int grid_points) {
  return certify_thm3_mgf(prepare_thm3(lay, state), lambda_tau_max, grid_points);
}

BoundCertificate certify_thm3_tail(const Layering& lay, const ProductState& state,
                                   int grid_points) {
  return certify_thm3_tail(prepare_thm3(lay, state), grid_points);
}

// ---- Corollary 4 and the AKL baseline --------------------------------------

double Cor4Eval::bound(double x) const {
  return cor4_formula(constants.lambda, q, static_cast<int>(constants.k), x);
}

double Cor4Eval::exact_ratio(double x) const {
  if (probe_image_norm <= 1e-14) return 0.0;
  double amax = std::max(std::abs(h_eig.values(0)), std::abs(h_eig.values(h_eig.values.size() - 1)));
  double tol_x = tol::merge * std::max(1.0, amax);
  double s2 = 0.0;
  for (Eigen::Index i = 0; i < h_eig.values.size(); ++i)
    if (h_eig.values(i) >= x - tol_x) s2 += std::norm(h_eig.vectors.col(i).dot(phi));
  return std::sqrt(std::max(0.0, s2)) / probe_image_norm;
}

Cor4Eval prepare_cor4(const FewBodyOperator& h, const FewBodyOperator& probe,
                      const Eigen::VectorXcd& omega) {
  Cor4Eval ev;
  Profile ph = analyze_profile(h);
  Profile pp = analyze_profile(probe);
  if (ph.q < 1) throw Error("cor4: Hamiltonian has no terms");
  ev.constants.g = ph.g;
  ev.constants.k = ph.q;
  ev.constants.lambda = ph.lambda;
  ev.q = pp.q;
  ev.x_min = ev.constants.lambda * ev.q;

  for (std::size_t t = 0; t < h.terms.size(); ++t) {
    Eigen::MatrixXcd ht = embed_term(h.lattice, h.terms[t]);
    double res = (ht * omega).norm();
    double nrm = matrix_operator_norm(h.terms[t].matrix);
    if (res > 1e-10 * std::max(1.0, nrm))
      throw Error("frustration-freeness fails for term " + std::to_string(t) + "; residual " +
                  std::to_string(res));
  }
  ev.h_eig = eigensystem(embed(h));
  ev.phi = embed(probe) * omega;
  ev.probe_image_norm = ev.phi.norm();
  return ev;
}

BoundCertificate certify_cor4(const FewBodyOperator& h, const FewBodyOperator& probe,
                              const Eigen::VectorXcd& omega, double x_max, int grid_points) {
  Cor4Eval ev = prepare_cor4(h, probe, omega);
  if (x_max < ev.x_min) x_max = ev.x_min * 2.0 + 1.0;
  std::vector<double> grid(grid_points);
  for (int i = 0; i < grid_points; ++i)
    grid[i] = ev.x_min + (x_max - ev.x_min) * i / (grid_points - 1);
  std::vector<double> bounds, exacts;
  for (double x : grid) {
    bounds.push_back(ev.bound(x));
    exacts.push_back(ev.exact_ratio(x));
  }
  std::string digest = digest_operator(h) + ":" + digest_operator(probe);
  return make_certificate("cor4", digest, ev.constants, grid, bounds, exacts);
}

BoundCertificate certify_akl(const FewBodyOperator& h, const FewBodyOperator& probe,
                             const Eigen::VectorXcd& omega, double x_max, int grid_points) {
  Profile ph = analyze_profile(h);
  Profile pp = analyze_profile(probe);
  BoundConstants constants;
  constants.g = ph.g;
  constants.k = ph.q;
  constants.lambda = ph.lambda;

  Eigen::MatrixXcd hm = embed(h);
  if ((hm * omega).norm() > 1e-8) throw Error("akl: omega is not a zero-energy state of H");
  Eigen::MatrixXcd am = embed(probe);
  double norm_a = matrix_operator_norm(am);
  Eigensystem es = eigensystem(hm);
  Eigen::VectorXcd phi = am * omega;
  Eigen::VectorXcd overlaps(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) overlaps(i) = es.vectors.col(i).dot(phi);
  double amax = std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
  double tol_x = tol::merge * std::max(1.0, amax);

  std::vector<double> grid = make_x_grid(x_max, grid_points);
  std::vector<double> bounds, exacts;
  for (double x : grid) {
    bounds.push_back(akl_formula(norm_a, ph.q, ph.lambda, pp.q, x));
    double s2 = 0.0;
    for (Eigen::Index i = 0; i < es.values.size(); ++i)
      if (es.values(i) >= x - tol_x) s2 += std::norm(overlaps(i));
    exacts.push_back(std::sqrt(std::max(0.0, s2)));
  }
  std::string digest = digest_operator(h) + ":" + digest_operator(probe);
  return make_certificate("akl", digest, constants, grid, bounds, exacts);
}

// ---- Lemma 5 ---------------------------------------------------------------

double Lemma5Eval::bound(double tau, Lemma5Variant v) const {
  if (std::abs(tau) > constants.tau_max * (1.0 + 1e-12)) throw Error("outside Lemma 5 domain");
  double ct = v == Lemma5Variant::Statement ? constants.c_tilde_statement : constants.c_tilde_proof;
  return ct * n_sites * tau * tau;
}

double Lemma5Eval::tail_bound(double x, Lemma5Variant v) const {
  double ct = v == Lemma5Variant::Statement ? constants.c_tilde_statement : constants.c_tilde_proof;
  return two_branch_tail(ct, n_sites, constants.lambda, x);
}

Lemma5Eval prepare_lemma5(const Layering& lay, const ProductState& state) {
  AnyState st = AnyState::of(state);
  Layering cl = centered(lay, st);
  Lemma5Eval ev;
  ev.n_sites = cl.lattice.n_sites;
  ev.constants.g = cl.max_g();
  ev.constants.k = cl.max_k();
  ev.constants.lambda = 2.0 * ev.constants.g * ev.constants.k;
  ev.constants.n_bar = cl.n_bar;
  ev.constants.m0 = ceil_log2(cl.n_bar);
  ev.constants.tau_max = tau_max_for(ev.constants.lambda);
  ev.constants.c_tilde_statement =
      lemma5_c_tilde(ev.constants.g, ev.constants.k, ev.constants.C, cl.n_bar,
                     Lemma5Variant::Statement);
  ev.constants.c_tilde_proof = lemma5_c_tilde(ev.constants.g, ev.constants.k, ev.constants.C,
                                              cl.n_bar, Lemma5Variant::Proof);
  ev.dist_avg = spectral_distribution(average_operator(cl), st);
  return ev;
}

BoundCertificate certify_lemma5_mgf(const Lemma5Eval& ev, Lemma5Variant v, int grid_points) {
  std::vector<double> grid = make_tau_grid(ev.constants.tau_max, grid_points);
  std::vector<double> bounds, exacts;
  for (double tau : grid) {
    bounds.push_back(ev.bound(tau, v));
    exacts.push_back(ev.exact(tau));
  }
  const char* id = v == Lemma5Variant::Statement ? "lemma5-mgf" : "lemma5-mgf-proof";
  return make_certificate(id, "", ev.constants, grid, bounds, exacts);
}

BoundCertificate certify_lemma5_tail(const Lemma5Eval& ev, Lemma5Variant v, int grid_points) {
  double span = std::max({std::abs(ev.dist_avg.min_value()), std::abs(ev.dist_avg.max_value()), 1.0});
  std::vector<double> grid = make_x_grid(1.2 * span, grid_points);
  std::vector<double> bounds, exacts;
  for (double x : grid) {
    bounds.push_back(ev.tail_bound(x, v));
    exacts.push_back(std::max(tail_exact(ev.dist_avg, x, TailSide::Geq),
                              tail_exact(ev.dist_avg, x, TailSide::LeqNegated)));
  }
  const char* id = v == Lemma5Variant::Statement ? "lemma5-tail" : "lemma5-tail-proof";
  return make_certificate(id, "", ev.constants, grid, bounds, exacts);
}

BoundCertificate certify_lemma5_mgf(const Layering& lay, const ProductState& state,
                                    Lemma5Variant v, int grid_points) {
  return certify_lemma5_mgf(prepare_lemma5(lay, state), v, grid_points);
}

BoundCertificate certify_lemma5_tail(const Layering& lay, const ProductState& state,
                                     Lemma5Variant v, int grid_points) {
  return certify_lemma5_tail(prepare_lemma5(lay, state), v, grid_points);
}

BoundCertificate certify_hoeffding_layer(const Layer& layer, const ProductState& state,
                                         const Lattice& lat, int grid_points) {
  AnyState st = AnyState::of(state);
  Layering single;
  single.lattice = lat;
  single.n_bar = 1;
  single.chi = 1;
  single.layers.push_back(layer);
  Layering cl = centered(single, st);
  const Layer& c = cl.layers.front();

  SpectralDistribution dist = spectral_distribution(layer_operator(lat, c), st);
  BoundConstants constants;
  constants.g = c.g;
  constants.k = c.k;
  constants.lambda = 2.0 * c.g * c.k;
  std::vector<double> grid = make_tau_grid(1.0, grid_points);
  std::vector<double> bounds, exacts;
  for (double tau : grid) {
    bounds.push_back(hoeffding_block_mgf(c, tau));
    exacts.push_back(mgf_exact(dist, tau));
  }
  return make_certificate("lemma3", "", constants, grid, bounds, exacts);
}

BoundCertificate certify_chebyshev(const FewBodyOperator& a, const FewBodyOperator& b,
                                   const AnyState& state, int grid_points) {
  FewBodyOperator ac = center(a, state);
  FewBodyOperator bc = center(b, state);
  SpectralDistribution da = spectral_distribution(ac, state);
  SpectralDistribution db = spectral_distribution(bc, state);
  SpectralDistribution dsum = spectral_distribution(operator_sum(ac, bc), state);
  double s1 = std::sqrt(std::max(0.0, moment_exact(da, 2)));
  double s2 = std::sqrt(std::max(0.0, moment_exact(db, 2)));
  double span = std::max({std::abs(dsum.min_value()), std::abs(dsum.max_value()), 1.0});
  std::vector<double> grid = make_x_grid(1.2 * span, grid_points);
  std::vector<double> bounds, exacts;
  for (double x : grid) {
    bounds.push_back(chebyshev_bound(s1, s2, x));
    exacts.push_back(tail_exact(dsum, x));
  }
  BoundConstants constants;
  return make_certificate("chebyshev", "", constants, grid, bounds, exacts);
}

}  // namespace fewbody
