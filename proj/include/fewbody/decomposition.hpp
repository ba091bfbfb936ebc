#pragma once

#include <optional>

#include "fewbody/state.hpp"

namespace fewbody {

/// Term-intersection graph: vertex per term, edge iff supports intersect.
struct ConflictGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;
  int max_degree = 0;
};

ConflictGraph build_conflict_graph(const FewBodyOperator& op);

/// One layer A_j^c: scaled copies of source terms with pairwise-disjoint
/// supports, plus its own recomputed profile.
struct Layer {
  std::vector<LocalTerm> blocks;
  std::vector<int> term_indices;  // indices into the source operator's terms
  double scale = 1.0;
  int k = 0;               // max block support size
  double g = 0.0;          // extensiveness (= max block norm when disjoint)
  double block_norm_sum = 0.0;
  std::vector<double> block_norms;
  int block_count = 0;
};

/// A = (1/n_bar) sum_j A_j^c, reconstructed exactly.
struct Layering {
  Lattice lattice;
  std::vector<Layer> layers;
  int n_bar = 0;
  int chi = 0;  // greedy chromatic classes used
  double reconstruction_error = -1.0;  // exact norm, or -1 if above the cap
  bool lemma_caps_ok = true;  // N_j <= N/k and ||a|| <= g k (reported, not enforced)

  int max_k() const;
  double max_g() const;
  /// max over layers of the block-norm sum; upper bound on every layer norm
  /// and on every subset-average norm.
  double layer_norm_cap() const;
};

/// Greedy conflict-graph coloring (descending degree, ties by index) into
/// chi <= Delta + 1 classes; layer j = (scale) * class terms so that the
/// average reconstructs the operator exactly.  n_bar_requested > chi
/// replicates classes round-robin; n_bar_requested < chi is an error.
Layering decompose(const FewBodyOperator& op, std::optional<int> n_bar_requested = {});

/// Layering assembled from explicit layers (validated for disjointness).
Layering make_layering(const Lattice& lat, std::vector<std::vector<LocalTerm>> layers);

FewBodyOperator layer_operator(const Lattice& lat, const Layer& layer);

/// The reconstructed operator (1/n_bar) * sum of all layer blocks.
FewBodyOperator average_operator(const Layering& lay);

/// Per-block centering of every layer against the state.
Layering centered(const Layering& lay, const AnyState& state);

/// Smallest sigma >= 0 with rho Pi_{>sigma} = rho Pi_{<-sigma} = 0 for the
/// layer, computed block-by-block (blocks are independent under a product
/// state).
double localization_width(const Layer& layer, const ProductState& state, const Lattice& lat);

struct BandBlockResult {
  double norm = 0.0;
  bool asserted_zero = false;
};

/// Precomputed layer eigensystem + embedded probe for scanning many
/// (epsilon, delta_epsilon) cells.
struct BandBlockEval {
  std::vector<double> layer_values;
  Eigen::MatrixXcd layer_vectors;
  Eigen::MatrixXcd probe_matrix;
  double probe_norm = 0.0;
  double zero_threshold = 0.0;  // 2 g q

  BandBlockResult check(double epsilon, double delta_epsilon) const;
};
BandBlockEval prepare_band_block(const Layer& layer, const FewBodyOperator& probe,
                                 const Lattice& lat);

/// Exact || Pi_{>= eps+d_eps}^{(layer)} O Pi_{<= eps}^{(layer)} ||;
/// asserted_zero is set when d_eps > 2 g q makes the norm provably vanish.
BandBlockResult band_block_norm_check(const Layer& layer, const FewBodyOperator& probe,
                                      double epsilon, double delta_epsilon, const Lattice& lat);

}  // namespace fewbody
