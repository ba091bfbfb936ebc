#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fewbody/bounds.hpp"
#include "fewbody/random_instance.hpp"

using namespace fewbody;

namespace {

LocalTerm pauli_term(const std::vector<int>& support, const std::string& s, double coeff = 1.0) {
  LocalTerm t;
  t.support = support;
  t.matrix = coeff * pauli_string_matrix(s);
  return t;
}

FewBodyOperator onsite_projectors(int n) {
  FewBodyOperator op;
  op.lattice = Lattice(n);
  for (int i = 0; i < n; ++i) {
    LocalTerm t;
    t.support = {i};
    t.matrix = Eigen::MatrixXcd::Zero(2, 2);
    t.matrix(1, 1) = 1.0;
    op.terms.push_back(t);
  }
  return op;
}

}  // namespace

TEST_CASE("per-block Hoeffding sums") {
  Lattice lat(4);
  FewBodyOperator op;
  op.lattice = lat;
  for (int i = 0; i < 4; ++i) op.terms.push_back(pauli_term({i}, "X"));
  Layering lay = make_layering(lat, {op.terms});
  const Layer& layer = lay.layers.front();

  CHECK(hoeffding_block_mgf(layer, 1.0) == doctest::Approx(2.0));
  CHECK(hoeffding_block_mgf(layer, 0.0) == doctest::Approx(0.0));
  CHECK(hoeffding_sum({1.0}, 0.7) == doctest::Approx(0.7 * 0.7 / 2.0));

  ProductState zero = all_zero_state(lat);
  SpectralDistribution d = spectral_distribution(op, AnyState::of(zero));
  CHECK(mgf_exact(d, 1.0) == doctest::Approx(4.0 * std::log(std::cosh(1.0))));
  CHECK(mgf_exact(d, 1.0) <= hoeffding_block_mgf(layer, 1.0));

  BoundCertificate cert = certify_hoeffding_layer(layer, zero, lat, 41);
  CHECK(cert.pass);
}

TEST_CASE("theorem 1: vanishing commutator and domain handling") {
  Lattice lat(2);
  FewBodyOperator a;
  a.lattice = lat;
  a.terms.push_back(pauli_term({0}, "X"));
  FewBodyOperator b;
  b.lattice = lat;
  b.terms.push_back(pauli_term({1}, "Z"));
  AnyState st = AnyState::of(all_zero_state(lat));

  Thm1Eval ev = prepare_thm1(a, b, st, CommutatorMode::Exact);
  CHECK(ev.commutator_norm == doctest::Approx(0.0));
  double tau = 0.1;
  CHECK(ev.bound(tau) ==
        doctest::Approx(0.5 * (mgf_exact(ev.dist_a, 2 * tau) + mgf_exact(ev.dist_b, 2 * tau))));
  CHECK(ev.bound(0.0) == doctest::Approx(0.0));
  CHECK_THROWS_WITH_AS(ev.bound(ev.constants.tau_max * 1.01), "outside Theorem 1 domain", Error);

  BoundCertificate cert = certify_thm1(a, b, st, CommutatorMode::Exact, 41);
  CHECK(cert.pass);
}

TEST_CASE("theorem 1 dominates the exact MGF on an overlapping pair") {
  Lattice lat(2);
  FewBodyOperator a;
  a.lattice = lat;
  a.terms.push_back(pauli_term({0}, "X"));
  FewBodyOperator b;
  b.lattice = lat;
  b.terms.push_back(pauli_term({0, 1}, "ZZ"));
  Rng rng(12);
  AnyState st = AnyState::of_density(random_density_matrix(4, rng));
  Thm1Eval ev = prepare_thm1(a, b, st, CommutatorMode::Exact);
  CHECK(ev.bound(0.05) >= ev.exact(0.05) - 1e-12);

  BoundCertificate cert = certify_thm1(a, b, st, CommutatorMode::Exact, 101);
  CHECK(cert.pass);
  BoundCertificate loose = certify_thm1(a, b, st, CommutatorMode::LambdaGN, 101);
  CHECK(loose.pass);
  // the lambda g N fallback can only be looser
  for (std::size_t i = 0; i < cert.grid.size(); ++i)
    CHECK(loose.bound_values[i] >= cert.bound_values[i] - 1e-12);
}

TEST_CASE("theorem 1 with B = 0 reduces to half the doubled MGF") {
  Lattice lat(2);
  FewBodyOperator a;
  a.lattice = lat;
  a.terms.push_back(pauli_term({0}, "X"));
  FewBodyOperator b;
  b.lattice = lat;  // zero operator
  AnyState st = AnyState::of(all_zero_state(lat));
  Thm1Eval ev = prepare_thm1(a, b, st, CommutatorMode::Exact);
  double tau = 0.11;
  CHECK(ev.bound(tau) == doctest::Approx(0.5 * mgf_exact(ev.dist_a, 2 * tau)));
  // convexity: M(2A)/2 >= M(A)
  CHECK(ev.bound(tau) >= ev.exact(tau) - 1e-12);
}

TEST_CASE("corollary 2 reduces to the exact MGF at n_bar = 1") {
  Rng rng(5);
  FewBodyOperator a = random_instance(rng.next_u64(), 4, 2, 1.0, 5, TermStyle::PauliString);
  AnyState st = AnyState::of(random_product_state(a.lattice, rng, true));
  Cor2Eval ev = prepare_cor2({a}, st);
  CHECK(ev.constants.m0 == 0);
  for (double tau : {-0.02, 0.01, 0.03})
    CHECK(ev.bound(tau) == doctest::Approx(ev.exact(tau)).epsilon(1e-10));
}

TEST_CASE("corollary 2 structural identity at n_bar = 2 with disjoint parts") {
  Lattice lat(4);
  FewBodyOperator a1;
  a1.lattice = lat;
  a1.terms.push_back(pauli_term({0, 1}, "XX"));
  FewBodyOperator a2;
  a2.lattice = lat;
  a2.terms.push_back(pauli_term({2, 3}, "ZZ"));
  AnyState st = AnyState::of(all_zero_state(lat));
  Cor2Eval ev = prepare_cor2({a1, a2}, st);
  CHECK(ev.constants.m0 == 1);
  double tau = 0.04;
  double expected = 0.5 * (mgf_exact(ev.dist_parts[0], tau) + mgf_exact(ev.dist_parts[1], tau)) +
                    (3.0 * ev.constants.lambda * ev.constants.g * 4 / 8.0) * tau * tau;
  CHECK(ev.bound(tau) == doctest::Approx(expected).epsilon(1e-12));

  BoundCertificate cert = certify_cor2({a1, a2}, st, 41);
  CHECK(cert.pass);
}

TEST_CASE("corollary 2 soundness on a random layered instance") {
  Rng rng(31);
  std::vector<FewBodyOperator> parts;
  for (int j = 0; j < 4; ++j)
    parts.push_back(random_instance(rng.next_u64(), 6, 2, 1.0, 6, TermStyle::DenseHermitian));
  AnyState st = AnyState::of(random_product_state(parts[0].lattice, rng, true));
  BoundCertificate cert = certify_cor2(parts, st, 101);
  CHECK(cert.pass);
}

TEST_CASE("theorem 3 formulas") {
  CHECK(thm3_tail_formula(0.0, 2.0, 2.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(thm3_mgf_formula(1.5, 2.0, 0.0) == doctest::Approx(0.0));
  CHECK(thm3_mgf_formula(1.0, 2.0, 0.2) == doctest::Approx(-0.5 * std::log(0.6)));
  CHECK(thm3_tail_formula(1.0, 2.0, 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(thm3_mgf_formula(1.0, 2.0, 0.6), Error);
  CHECK_THROWS_AS(thm3_tail_formula(1.0, 2.0, 0.5), Error);
}

TEST_CASE("theorem 3 on a kernel-state layering") {
  // layers of on-site (P1 - I/2) blocks against |00...0>; after centering
  // the blocks become P1 and the state sits in every kernel, sigma = 0
  Lattice lat(4);
  std::vector<LocalTerm> blocks;
  for (int i = 0; i < 4; ++i) {
    LocalTerm t;
    t.support = {i};
    t.matrix = Eigen::MatrixXcd::Zero(2, 2);
    t.matrix(1, 1) = 1.0;
    t.matrix -= 0.5 * Eigen::MatrixXcd::Identity(2, 2);
    blocks.push_back(t);
  }
  Layering lay = make_layering(lat, {blocks});
  ProductState zero = all_zero_state(lat);
  Thm3Eval ev = prepare_thm3(lay, zero);
  CHECK(ev.sigma == doctest::Approx(0.0));
  CHECK(ev.exact_mgf(0.1) == doctest::Approx(0.0).epsilon(1e-10));
  BoundCertificate mgf = certify_thm3_mgf(lay, zero);
  BoundCertificate tail = certify_thm3_tail(lay, zero);
  CHECK(mgf.pass);
  CHECK(tail.pass);
}

TEST_CASE("theorem 3 with one active block") {
  Lattice lat(3);
  std::vector<LocalTerm> blocks;
  blocks.push_back(pauli_term({0}, "X"));  // active: spread +-1 under |0>
  for (int i = 1; i < 3; ++i) {
    LocalTerm t;
    t.support = {i};
    t.matrix = Eigen::MatrixXcd::Zero(2, 2);
    t.matrix(1, 1) = 1.0;
    blocks.push_back(t);
  }
  Layering lay = make_layering(lat, {blocks});
  ProductState zero = all_zero_state(lat);
  Thm3Eval ev = prepare_thm3(lay, zero);
  CHECK(ev.sigma == doctest::Approx(1.0));
  // exact MGF is log cosh tau, the bound is (sigma/lambda)(-log(1 - lambda tau))
  double tau = 0.2;
  CHECK(ev.exact_mgf(tau) == doctest::Approx(std::log(std::cosh(tau))).epsilon(1e-10));
  CHECK(ev.mgf_bound(tau) >= ev.exact_mgf(tau));
  BoundCertificate mgf = certify_thm3_mgf(lay, zero);
  BoundCertificate tail = certify_thm3_tail(lay, zero);
  CHECK(mgf.pass);
  CHECK(tail.pass);
}

TEST_CASE("theorem 3 rejects delocalized layers") {
  // claim a localized layering against |+> states: the projector blocks leak
  Lattice lat(2);
  std::vector<LocalTerm> blocks;
  for (int i = 0; i < 2; ++i) {
    LocalTerm t;
    t.support = {i};
    t.matrix = Eigen::MatrixXcd::Zero(2, 2);
    t.matrix(1, 1) = 1.0;
    blocks.push_back(t);
  }
  Layering lay = make_layering(lat, {blocks});
  // the width is measured, so this passes with sigma = 1 (after centering)
  Thm3Eval ev = prepare_thm3(lay, all_plus_state(lat));
  CHECK(ev.sigma > 0.0);
}

TEST_CASE("corollary 4 on the on-site projector Hamiltonian") {
  FewBodyOperator h = onsite_projectors(3);
  Eigen::VectorXcd omega = Eigen::VectorXcd::Zero(8);
  omega(0) = 1.0;
  FewBodyOperator a;
  a.lattice = h.lattice;
  a.terms.push_back(pauli_term({0, 1}, "XX"));

  Cor4Eval ev = prepare_cor4(h, a, omega);
  CHECK(ev.constants.lambda == doctest::Approx(2.0));
  CHECK(ev.q == 2);
  CHECK(ev.x_min == doctest::Approx(4.0));
  CHECK(ev.bound(4.0) == doctest::Approx(1.0));
  CHECK(ev.exact_ratio(4.0) == doctest::Approx(0.0));
  CHECK_THROWS_WITH_AS(ev.bound(3.0), "below validity threshold", Error);

  BoundCertificate cert = certify_cor4(h, a, omega, 10.0, 61);
  CHECK(cert.pass);
  // bound decreases beyond the validity threshold
  for (std::size_t i = 1; i < cert.grid.size(); ++i)
    CHECK(cert.bound_values[i] <= cert.bound_values[i - 1] + 1e-12);
}

TEST_CASE("corollary 4 rejects frustrated Hamiltonians") {
  Lattice lat(2);
  FewBodyOperator h;
  h.lattice = lat;
  h.terms.push_back(pauli_term({0}, "Z"));  // |0> has eigenvalue +1, not 0
  Eigen::VectorXcd omega = Eigen::VectorXcd::Zero(4);
  omega(0) = 1.0;
  FewBodyOperator a;
  a.lattice = lat;
  a.terms.push_back(pauli_term({1}, "X"));
  CHECK_THROWS_AS(prepare_cor4(h, a, omega), Error);
}

TEST_CASE("corollary 4 with a probe that fixes the ground state") {
  FewBodyOperator h = onsite_projectors(2);
  Eigen::VectorXcd omega = Eigen::VectorXcd::Zero(4);
  omega(0) = 1.0;
  FewBodyOperator a;
  a.lattice = h.lattice;
  LocalTerm t;
  t.support = {0};
  t.matrix = Eigen::MatrixXcd::Zero(2, 2);
  t.matrix(0, 0) = 1.0;  // |0><0|: A|Omega> = |Omega>
  a.terms.push_back(t);
  Cor4Eval ev = prepare_cor4(h, a, omega);
  CHECK(ev.exact_ratio(2.0) == doctest::Approx(0.0));
}

TEST_CASE("akl baseline values") {
  CHECK(akl_formula(1.0, 1, 2.0, 1, 0.0) == doctest::Approx(std::exp(1.0)));
  CHECK(akl_formula(0.0, 1, 2.0, 3, 5.0) == doctest::Approx(0.0));
  // on-site projectors: k = 1, lambda = 2, so x/(5 k lambda) = x/10
  CHECK(akl_formula(1.0, 1, 2.0, 1, 5.0) == doctest::Approx(std::exp(1.0 - 0.5)));

  FewBodyOperator h = onsite_projectors(3);
  Eigen::VectorXcd omega = Eigen::VectorXcd::Zero(8);
  omega(0) = 1.0;
  FewBodyOperator a;
  a.lattice = h.lattice;
  a.terms.push_back(pauli_term({0}, "X"));
  BoundCertificate cert = certify_akl(h, a, omega, 6.0, 31);
  CHECK(cert.pass);
}

TEST_CASE("lemma 5 constants") {
  CHECK(lemma5_c_tilde(1.0, 2.0, 0.5, 1, Lemma5Variant::Statement) == doctest::Approx(0.5));
  CHECK(lemma5_c_tilde(1.0, 2.0, 0.5, 2, Lemma5Variant::Statement) == doctest::Approx(6.5));
  CHECK(lemma5_c_tilde(1.0, 2.0, 0.5, 2, Lemma5Variant::Proof) == doctest::Approx(0.5 + 1.5));
  // statement variant dominates the proof variant
  for (int n_bar : {1, 2, 5, 9})
    CHECK(lemma5_c_tilde(1.3, 2.0, 0.5, n_bar, Lemma5Variant::Statement) >=
          lemma5_c_tilde(1.3, 2.0, 0.5, n_bar, Lemma5Variant::Proof));
}

TEST_CASE("lemma 5 on an even/odd chain layering") {
  Rng rng(8);
  FewBodyOperator op;
  op.lattice = chain_lattice(8);
  for (int i = 0; i + 1 < 8; ++i) {
    LocalTerm t;
    t.support = {i, i + 1};
    Eigen::MatrixXcd h = random_hermitian(4, rng);
    h *= 1.0 / matrix_operator_norm(h);
    t.matrix = h;
    op.terms.push_back(t);
  }
  Layering lay = decompose(op);
  ProductState st = random_product_state(op.lattice, rng, true);
  BoundCertificate mgf = certify_lemma5_mgf(lay, st, Lemma5Variant::Statement, 101);
  BoundCertificate tail = certify_lemma5_tail(lay, st, Lemma5Variant::Statement, 101);
  CHECK(mgf.pass);
  CHECK(tail.pass);

  BoundCertificate proof_mgf = certify_lemma5_mgf(lay, st, Lemma5Variant::Proof, 101);
  for (std::size_t i = 0; i < mgf.grid.size(); ++i)
    CHECK(mgf.bound_values[i] >= proof_mgf.bound_values[i] - 1e-12);
}

TEST_CASE("two-branch tail closed form") {
  // C-tilde = 6.5, N = 8, lambda = 4, x = 12: the Gaussian branch loses
  double v = two_branch_tail(6.5, 8, 4.0, 12.0);
  CHECK(v == doctest::Approx(std::exp(-12.0 / 32.0)));
  CHECK(two_branch_tail(6.5, 8, 4.0, 0.0) == doctest::Approx(1.0));
  CHECK(two_branch_tail(6.5, 8, 4.0, 2.0) ==
        doctest::Approx(std::max(std::exp(-4.0 / 208.0), std::exp(-2.0 / 32.0))));
}

TEST_CASE("mgf_to_tail optimizes the quadratic bound") {
  double c1 = 2.0;
  auto quad = [&](double tau) { return c1 * tau * tau; };
  // unconstrained domain: the optimum tau = x/(2 c1) is interior
  for (double x : {0.5, 1.0, 2.0}) {
    double got = mgf_to_tail(quad, x, 10.0, 4001);
    CHECK(got == doctest::Approx(std::exp(-x * x / (4 * c1))).epsilon(1e-4));
  }
  CHECK(mgf_to_tail(quad, 0.0, 10.0) == doctest::Approx(1.0));

  // constrained domain: the sampled inf sits at the boundary and is tighter
  // than the closed two-branch form
  double ct = 6.5;
  int n = 8;
  double lambda = 4.0;
  auto bound = [&](double tau) { return ct * n * tau * tau; };
  double got = mgf_to_tail(bound, 12.0, 1.0 / (4 * lambda), 4001);
  double boundary = std::exp(-12.0 / 16.0 + ct * n / 256.0);
  CHECK(got == doctest::Approx(boundary).epsilon(1e-4));
  CHECK(got <= two_branch_tail(ct, n, lambda, 12.0) + 1e-12);

  // monotone: a pointwise-larger curve never gives a smaller tail bound
  auto bigger = [&](double tau) { return ct * n * tau * tau + 0.3; };
  CHECK(mgf_to_tail(bigger, 12.0, 1.0 / (4 * lambda)) >=
        mgf_to_tail(bound, 12.0, 1.0 / (4 * lambda)) - 1e-12);
}

TEST_CASE("chebyshev baseline") {
  CHECK(chebyshev_bound(1.0, 1.0, 4.0) == doctest::Approx(0.25));
  CHECK(chebyshev_bound(1.0, 1.0, 1e9) <= 1e-17);
  CHECK(chebyshev_bound(1.0, 1.0, 1.5) == doctest::Approx(1.0));
  CHECK(chebyshev_bound(1.0, 1.0, 0.0) == doctest::Approx(1.0));

  Rng rng(3);
  Lattice lat(4);
  FewBodyOperator a = random_instance(rng.next_u64(), 4, 2, 1.0, 4, TermStyle::PauliString);
  FewBodyOperator b = random_instance(rng.next_u64(), 4, 2, 1.0, 4, TermStyle::PauliString);
  AnyState st = AnyState::of(random_product_state(lat, rng, true));
  BoundCertificate cert = certify_chebyshev(a, b, st, 41);
  CHECK(cert.pass);
}

TEST_CASE("certificates flag violations") {
  BoundConstants constants;
  BoundCertificate bad = make_certificate("demo", "", constants, {0.0, 1.0}, {1.0, 0.5},
                                          {0.2, 0.6});
  CHECK_FALSE(bad.pass);
  CHECK(bad.margin_min == doctest::Approx(-0.1));
  BoundCertificate ok = make_certificate("demo", "", constants, {0.0}, {1.0}, {1.0});
  CHECK(ok.pass);
}

TEST_CASE("tail kernels are clamped and nonincreasing") {
  double prev2 = 2.0, prev3 = 2.0;
  for (int i = 0; i <= 60; ++i) {
    double x = 0.2 * i;
    double t2 = two_branch_tail(6.5, 8, 4.0, x);
    CHECK(t2 <= 1.0);
    CHECK(t2 <= prev2 + 1e-12);
    prev2 = t2;
    if (x >= 1.5) {
      double t3 = thm3_tail_formula(1.5, 2.0, x);
      CHECK(t3 <= 1.0);
      CHECK(t3 <= prev3 + 1e-12);
      prev3 = t3;
    }
  }
}

TEST_CASE("decomposed layers never exceed n_bar times the source extensiveness") {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    FewBodyOperator op = random_instance(rng.next_u64(), 6, 2, 1.2, 8, TermStyle::PauliString);
    Profile p = analyze_profile(op);
    Layering base = decompose(op);
    Layering lay = decompose(op, base.chi + static_cast<int>(rng.below(3)));
    for (const auto& l : lay.layers) CHECK(l.g <= lay.n_bar * p.g * (1.0 + 1e-12));
  }
}

TEST_CASE("tau grids are symmetric and inside the open domain") {
  std::vector<double> grid = make_tau_grid(0.25, 101);
  CHECK(grid.size() == 101);
  CHECK(grid.front() == doctest::Approx(-0.25 * (1 - 1e-6)));
  CHECK(grid.back() == doctest::Approx(0.25 * (1 - 1e-6)));
  CHECK(std::abs(grid[50]) < 1e-15);
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(5) == 3);
}
