#include "fewbody/decomposition.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fewbody/embed.hpp"
#include "fewbody/spectral.hpp"

namespace fewbody {

ConflictGraph build_conflict_graph(const FewBodyOperator& op) {
  ConflictGraph g;
  g.n = static_cast<int>(op.terms.size());
  g.adj.resize(g.n);
  for (int a = 0; a < g.n; ++a) {
    for (int b = a + 1; b < g.n; ++b) {
      const auto& sa = op.terms[a].support;
      const auto& sb = op.terms[b].support;
      bool hit = false;
      for (int s : sa)
        if (std::binary_search(sb.begin(), sb.end(), s)) {
          hit = true;
          break;
        }
      if (hit) {
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
      }
    }
  }
  for (const auto& nb : g.adj) g.max_degree = std::max(g.max_degree, static_cast<int>(nb.size()));
  return g;
}

int Layering::max_k() const {
  int k = 0;
  for (const auto& l : layers) k = std::max(k, l.k);
  return k;
}

double Layering::max_g() const {
  double g = 0.0;
  for (const auto& l : layers) g = std::max(g, l.g);
  return g;
}

double Layering::layer_norm_cap() const {
  double c = 0.0;
  for (const auto& l : layers) c = std::max(c, l.block_norm_sum);
  return c;
}

static void finalize_layer(Layer& layer) {
  layer.k = 0;
  layer.g = 0.0;
  layer.block_norm_sum = 0.0;
  layer.block_norms.clear();
  layer.block_count = static_cast<int>(layer.blocks.size());
  std::map<int, double> per_site;
  for (const auto& b : layer.blocks) {
    layer.k = std::max(layer.k, static_cast<int>(b.support.size()));
    double nrm = matrix_operator_norm(b.matrix);
    layer.block_norms.push_back(nrm);
    layer.block_norm_sum += nrm;
    for (int s : b.support) per_site[s] += nrm;
  }
  for (const auto& [site, sum] : per_site) layer.g = std::max(layer.g, sum);
}

static void check_disjoint(const Layer& layer, int n_sites) {
  std::vector<bool> seen(n_sites, false);
  for (const auto& b : layer.blocks)
    for (int s : b.support) {
      if (seen[s]) throw Error("layer has overlapping block supports");
      seen[s] = true;
    }
}

static double exact_reconstruction_error(const FewBodyOperator& op, const Layering& lay) {
  if (op.lattice.hilbert_dim() > dim_cap()) return -1.0;
  Eigen::MatrixXcd diff = embed(op) - embed(average_operator(lay));
  return matrix_operator_norm(diff);
}

Layering decompose(const FewBodyOperator& op, std::optional<int> n_bar_requested) {
  if (op.terms.empty()) throw Error("decompose requires a nonzero operator");
  ConflictGraph cg = build_conflict_graph(op);

  // greedy coloring: descending degree, ties by term index, lowest free color
  std::vector<int> order(cg.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return cg.adj[a].size() > cg.adj[b].size();
  });
  std::vector<int> color(cg.n, -1);
  int chi = 0;
  for (int v : order) {
    std::vector<bool> used(chi + 1, false);
    for (int u : cg.adj[v])
      if (color[u] >= 0 && color[u] <= chi) used[color[u]] = true;
    int c = 0;
    while (c < static_cast<int>(used.size()) && used[c]) ++c;
    color[v] = c;
    chi = std::max(chi, c + 1);
  }

  int n_bar = n_bar_requested.value_or(chi);
  if (n_bar < chi)
    throw Error("cannot honor layer budget; chromatic lower bound is " + std::to_string(chi));

  // layer j (0-based) carries class j mod chi; replicated classes keep the
  // average exact via the n_bar / multiplicity scale
  std::vector<int> multiplicity(chi, 0);
  for (int j = 0; j < n_bar; ++j) multiplicity[j % chi]++;

  Layering lay;
  lay.lattice = op.lattice;
  lay.n_bar = n_bar;
  lay.chi = chi;
  for (int j = 0; j < n_bar; ++j) {
    Layer layer;
    int cls = j % chi;
    layer.scale = static_cast<double>(n_bar) / multiplicity[cls];
    for (int t = 0; t < cg.n; ++t) {
      if (color[t] == cls) {
        LocalTerm b = op.terms[t];
        b.matrix *= layer.scale;
        layer.blocks.push_back(std::move(b));
        layer.term_indices.push_back(t);
      }
    }
    check_disjoint(layer, op.lattice.n_sites);
    finalize_layer(layer);
    lay.layers.push_back(std::move(layer));
  }

  // Lemma-style caps, reported not enforced: block count <= N/k and block
  // norms <= g*k measured on the source operator
  Profile src = analyze_profile(op);
  lay.lemma_caps_ok = true;
  for (const auto& l : lay.layers) {
    if (l.k > 0 && l.block_count > op.lattice.n_sites / l.k) lay.lemma_caps_ok = false;
    for (const auto& b : l.blocks)
      if (matrix_operator_norm(b.matrix) > src.g * src.q + 1e-12) lay.lemma_caps_ok = false;
  }

  lay.reconstruction_error = exact_reconstruction_error(op, lay);
  return lay;
}

Layering make_layering(const Lattice& lat, std::vector<std::vector<LocalTerm>> layers) {
  if (layers.empty()) throw Error("make_layering: no layers");
  Layering lay;
  lay.lattice = lat;
  lay.n_bar = static_cast<int>(layers.size());
  lay.chi = lay.n_bar;
  for (auto& blocks : layers) {
    Layer layer;
    layer.blocks = std::move(blocks);
    for (const auto& b : layer.blocks) b.validate(lat);
    check_disjoint(layer, lat.n_sites);
    finalize_layer(layer);
    lay.layers.push_back(std::move(layer));
  }
  lay.reconstruction_error = 0.0;  // the layering defines the operator
  return lay;
}

FewBodyOperator layer_operator(const Lattice& lat, const Layer& layer) {
  FewBodyOperator op;
  op.lattice = lat;
  op.terms = layer.blocks;
  return op;
}

FewBodyOperator average_operator(const Layering& lay) {
  FewBodyOperator op;
  op.lattice = lay.lattice;
  for (const auto& l : lay.layers)
    for (const auto& b : l.blocks) {
      LocalTerm t = b;
      t.matrix /= static_cast<double>(lay.n_bar);
      op.terms.push_back(std::move(t));
    }
  return op;
}

Layering centered(const Layering& lay, const AnyState& state) {
  Layering out = lay;
  for (auto& layer : out.layers) {
    for (auto& b : layer.blocks) {
      Eigen::MatrixXcd rho = state.reduced(out.lattice, b.support);
      cplx mean = (rho * b.matrix).trace();
      b.matrix -= mean.real() * Eigen::MatrixXcd::Identity(b.matrix.rows(), b.matrix.cols());
    }
    finalize_layer(layer);
  }
  return out;
}

double localization_width(const Layer& layer, const ProductState& state, const Lattice& lat) {
  check_disjoint(layer, lat.n_sites);
  double hi = 0.0, lo = 0.0;  // supported layer spectrum lies in [lo, hi]
  for (const auto& b : layer.blocks) {
    Eigensystem es = eigensystem(b.matrix);
    Eigen::MatrixXcd rho = state.reduced(b.support);
    double bmax = 0.0, bmin = 0.0;
    bool any = false;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
      cplx w = es.vectors.col(i).dot(rho * es.vectors.col(i));
      if (w.real() > tol::weight) {
        if (!any) {
          bmax = bmin = es.values(i);
          any = true;
        } else {
          bmax = std::max(bmax, es.values(i));
          bmin = std::min(bmin, es.values(i));
        }
      }
    }
    if (any) {
      hi += bmax;
      lo += bmin;
    }
  }
  return std::max({hi, -lo, 0.0});
}

BandBlockEval prepare_band_block(const Layer& layer, const FewBodyOperator& probe,
                                 const Lattice& lat) {
  check_disjoint(layer, lat.n_sites);
  BandBlockEval ev;
  Eigensystem es = eigensystem(embed(layer_operator(lat, layer)));
  ev.layer_values.assign(es.values.data(), es.values.data() + es.values.size());
  ev.layer_vectors = std::move(es.vectors);
  ev.probe_matrix = embed(probe);
  ev.probe_norm = matrix_operator_norm(ev.probe_matrix);
  Profile pq = analyze_profile(probe);
  ev.zero_threshold = 2.0 * layer.g * pq.q;
  return ev;
}

BandBlockResult BandBlockEval::check(double epsilon, double delta_epsilon) const {
  std::vector<Eigen::Index> lo_idx, hi_idx;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(layer_values.size()); ++i) {
    if (layer_values[i] <= epsilon) lo_idx.push_back(i);
    if (layer_values[i] >= epsilon + delta_epsilon) hi_idx.push_back(i);
  }
  BandBlockResult res;
  res.asserted_zero = delta_epsilon > zero_threshold;
  if (lo_idx.empty() || hi_idx.empty()) {
    res.norm = 0.0;
    return res;
  }
  Eigen::MatrixXcd vlo(layer_vectors.rows(), static_cast<Eigen::Index>(lo_idx.size()));
  for (std::size_t c = 0; c < lo_idx.size(); ++c) vlo.col(c) = layer_vectors.col(lo_idx[c]);
  Eigen::MatrixXcd vhi(layer_vectors.rows(), static_cast<Eigen::Index>(hi_idx.size()));
  for (std::size_t c = 0; c < hi_idx.size(); ++c) vhi.col(c) = layer_vectors.col(hi_idx[c]);
  // || Pi_hi O Pi_lo || equals || V_hi^dag O V_lo || because the V are isometries
  res.norm = matrix_operator_norm(vhi.adjoint() * probe_matrix * vlo);
  return res;
}

BandBlockResult band_block_norm_check(const Layer& layer, const FewBodyOperator& probe,
                                      double epsilon, double delta_epsilon, const Lattice& lat) {
  return prepare_band_block(layer, probe, lat).check(epsilon, delta_epsilon);
}

}  // namespace fewbody
