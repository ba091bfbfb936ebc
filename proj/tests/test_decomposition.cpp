#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fewbody/decomposition.hpp"
#include "fewbody/random_instance.hpp"
#include "fewbody/spectral.hpp"

using namespace fewbody;

namespace {

LocalTerm pauli_term(const std::vector<int>& support, const std::string& s, double coeff = 1.0) {
  LocalTerm t;
  t.support = support;
  t.matrix = coeff * pauli_string_matrix(s);
  return t;
}

FewBodyOperator nn_chain(int n, Rng& rng, double g_cap = 1.0) {
  FewBodyOperator op;
  op.lattice = chain_lattice(n);
  for (int i = 0; i + 1 < n; ++i) {
    LocalTerm t;
    t.support = {i, i + 1};
    Eigen::MatrixXcd h = random_hermitian(4, rng);
    h *= g_cap / matrix_operator_norm(h);
    t.matrix = h;
    op.terms.push_back(t);
  }
  return op;
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

TEST_CASE("conflict graphs") {
  Rng rng(1);
  FewBodyOperator chain = nn_chain(5, rng);  // 4 bond terms -> path graph
  ConflictGraph g = build_conflict_graph(chain);
  CHECK(g.n == 4);
  CHECK(g.max_degree == 2);
  CHECK(g.adj[0].size() == 1);
  CHECK(g.adj[1].size() == 2);

  ConflictGraph singles = build_conflict_graph(onsite_projectors(4));
  CHECK(singles.max_degree == 0);

  FewBodyOperator share;
  share.lattice = Lattice(4);
  share.terms.push_back(pauli_term({0, 2}, "XZ"));
  share.terms.push_back(pauli_term({2, 3}, "ZZ"));
  ConflictGraph sg = build_conflict_graph(share);
  CHECK(sg.adj[0] == std::vector<int>{1});
}

TEST_CASE("even/odd layering of a nearest-neighbor chain") {
  Rng rng(2);
  FewBodyOperator op = nn_chain(6, rng);
  Layering lay = decompose(op);
  CHECK(lay.chi == 2);
  CHECK(lay.n_bar == 2);
  for (const auto& l : lay.layers) CHECK(l.scale == doctest::Approx(2.0));
  Profile p = analyze_profile(op);
  CHECK(lay.reconstruction_error <= 1e-10 * (1.0 + p.global_norm_bound));
  // the two layers partition the five bonds into sizes 3 and 2
  CHECK(lay.layers[0].block_count + lay.layers[1].block_count == 5);
  CHECK(lay.lemma_caps_ok);
}

TEST_CASE("disjoint supports collapse to one layer") {
  FewBodyOperator op = onsite_projectors(4);
  Layering lay = decompose(op);
  CHECK(lay.chi == 1);
  CHECK(lay.n_bar == 1);
  CHECK(lay.layers[0].block_count == 4);
  CHECK(lay.reconstruction_error <= 1e-12);
}

TEST_CASE("star pattern needs one layer per term") {
  FewBodyOperator op;
  op.lattice = Lattice(6);
  for (int i = 1; i <= 5; ++i) op.terms.push_back(pauli_term({0, i}, "ZZ"));
  Layering lay = decompose(op);
  CHECK(lay.chi == 5);
  for (const auto& l : lay.layers) CHECK(l.block_count == 1);
}

TEST_CASE("layer budget below the chromatic bound is rejected") {
  FewBodyOperator op;
  op.lattice = Lattice(6);
  for (int i = 1; i <= 5; ++i) op.terms.push_back(pauli_term({0, i}, "ZZ"));
  CHECK_THROWS_AS(decompose(op, 3), Error);
  FewBodyOperator empty;
  empty.lattice = Lattice(3);
  CHECK_THROWS_AS(decompose(empty), Error);
}

TEST_CASE("round-robin replication keeps the average exact") {
  Rng rng(3);
  FewBodyOperator op = nn_chain(6, rng);
  Profile p = analyze_profile(op);
  for (int n_bar : {2, 4, 6, 5}) {
    Layering lay = decompose(op, n_bar);
    CHECK(lay.n_bar == n_bar);
    CHECK(lay.reconstruction_error <= 1e-10 * (1.0 + p.global_norm_bound));
  }
}

TEST_CASE("random operators: exact reconstruction, chi <= Delta + 1, disjoint layers") {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 4 + static_cast<int>(rng.below(4));
    FewBodyOperator op = random_instance(rng.next_u64(), n, 1 + rng.below(3),
                                         0.5 + rng.uniform(), n + rng.below(n),
                                         trial % 2 ? TermStyle::PauliString
                                                   : TermStyle::DenseHermitian);
    ConflictGraph cg = build_conflict_graph(op);
    Layering lay = decompose(op);
    Profile p = analyze_profile(op);
    CHECK(lay.chi <= cg.max_degree + 1);
    CHECK(lay.reconstruction_error >= 0.0);
    CHECK(lay.reconstruction_error <= 1e-10 * (1.0 + p.global_norm_bound));
    for (const auto& l : lay.layers) {
      std::vector<bool> seen(n, false);
      for (const auto& b : l.blocks)
        for (int s : b.support) {
          CHECK_FALSE(seen[s]);
          seen[s] = true;
        }
    }
  }
}

TEST_CASE("localization width on canonical layers") {
  Lattice lat(1);
  ProductState zero = all_zero_state(lat);

  // sigma^z - I annihilates |0><0| up to the eigenvalue it sits on
  Layer zl;
  LocalTerm zt = pauli_term({0}, "Z");
  zt.matrix -= Eigen::Matrix2cd::Identity();
  zt.hermitian = true;
  zl.blocks.push_back(zt);
  CHECK(localization_width(zl, zero, lat) == doctest::Approx(0.0));

  Layer xl;
  xl.blocks.push_back(pauli_term({0}, "X"));
  CHECK(localization_width(xl, zero, lat) == doctest::Approx(1.0));

  Lattice lat3(3);
  Layer proj;
  for (int i = 0; i < 3; ++i) {
    LocalTerm t;
    t.support = {i};
    t.matrix = Eigen::MatrixXcd::Zero(2, 2);
    t.matrix(1, 1) = 1.0;
    proj.blocks.push_back(t);
  }
  CHECK(localization_width(proj, all_zero_state(lat3), lat3) == doctest::Approx(0.0));

  Layer overlapping;
  overlapping.blocks.push_back(pauli_term({0, 1}, "XX"));
  overlapping.blocks.push_back(pauli_term({1, 2}, "ZZ"));
  CHECK_THROWS_AS(localization_width(overlapping, all_zero_state(lat3), lat3), Error);
}

TEST_CASE("band-block norms vanish beyond the 2 g q window") {
  Lattice lat(3);
  FewBodyOperator hop = onsite_projectors(3);
  Layering lay = make_layering(lat, {hop.terms});
  const Layer& layer = lay.layers.front();
  CHECK(layer.g == doctest::Approx(1.0));

  FewBodyOperator probe;
  probe.lattice = lat;
  probe.terms.push_back(pauli_term({0}, "X"));

  BandBlockResult far = band_block_norm_check(layer, probe, 0.0, 2.5, lat);
  CHECK(far.asserted_zero);
  CHECK(far.norm <= 1e-10);

  BandBlockResult near = band_block_norm_check(layer, probe, 0.0, 1.5, lat);
  CHECK_FALSE(near.asserted_zero);
  CHECK(near.norm <= 1.0 + 1e-9);

  FewBodyOperator id;
  id.lattice = lat;
  LocalTerm idt;
  idt.support = {0};
  idt.matrix = Eigen::MatrixXcd::Identity(2, 2);
  id.terms.push_back(idt);
  BandBlockResult none = band_block_norm_check(layer, id, 0.0, 0.5, lat);
  CHECK(none.norm <= 1e-10);
}

TEST_CASE("make_layering validates per-layer disjointness") {
  Lattice lat(3);
  std::vector<LocalTerm> bad;
  bad.push_back(pauli_term({0, 1}, "XX"));
  bad.push_back(pauli_term({1, 2}, "ZZ"));
  CHECK_THROWS_AS(make_layering(lat, {bad}), Error);
}

TEST_CASE("centering a layering recomputes layer profiles") {
  Lattice lat(2);
  std::vector<LocalTerm> blocks;
  LocalTerm t;
  t.support = {0};
  t.matrix = Eigen::MatrixXcd::Zero(2, 2);
  t.matrix(1, 1) = 4.0;  // projector scaled: mean 0 under |0>, so unchanged
  blocks.push_back(t);
  Layering lay = make_layering(lat, {blocks});
  Layering cl = centered(lay, AnyState::of(all_zero_state(lat)));
  CHECK(cl.layers[0].g == doctest::Approx(4.0));
  // against |1><1| factors the projector centers to 4(P - I)
  ProductState one;
  one.lattice = lat;
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(2, 2);
  f(1, 1) = 1.0;
  one.factors = {f, f};
  Layering c2 = centered(lay, AnyState::of(one));
  CHECK(c2.layers[0].blocks[0].matrix(0, 0).real() == doctest::Approx(-4.0));
  CHECK(c2.layers[0].blocks[0].matrix(1, 1).real() == doctest::Approx(0.0));
}
