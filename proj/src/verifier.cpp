#include "fewbody/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fewbody/multicommutator.hpp"

namespace fewbody {

namespace {

std::uint64_t instance_seed(std::uint64_t plan_seed, const std::string& name, int index) {
  std::uint64_t h = fnv1a(name);
  h = fnv1a(&plan_seed, sizeof plan_seed, h);
  h = fnv1a(&index, sizeof index, h);
  return h;
}

std::string make_digest(std::uint64_t plan_seed, const std::string& name, int index) {
  std::ostringstream os;
  os << "v=" << kVersion << ";seed=" << plan_seed << ";family=" << name << ";index=" << index;
  return os.str();
}

int pick(const std::vector<int>& xs, Rng& rng) {
  if (xs.empty()) throw Error("family has an empty choice list");
  return xs[rng.below(xs.size())];
}

/// Per-site pure vectors plus the matching product state.
struct PurePair {
  std::vector<Eigen::VectorXcd> psis;
  ProductState state;
};

PurePair random_pure_product(const Lattice& lat, Rng& rng) {
  PurePair out;
  out.state.lattice = lat;
  for (int i = 0; i < lat.n_sites; ++i) {
    Eigen::VectorXcd psi(lat.local_dim);
    for (int a = 0; a < lat.local_dim; ++a) psi(a) = rng.cnormal();
    psi /= psi.norm();
    out.psis.push_back(psi);
    out.state.factors.push_back(psi * psi.adjoint());
  }
  return out;
}

AnyState make_state(const Lattice& lat, Rng& rng, const std::string& mode, int index) {
  std::string m = mode;
  if (m == "alternate") {
    const char* cycle[3] = {"computational", "pure", "mixed"};
    m = cycle[index % 3];
  }
  if (m == "computational") return AnyState::of(all_zero_state(lat));
  if (m == "pure") return AnyState::of(random_product_state(lat, rng, false));
  if (m == "mixed") return AnyState::of(random_product_state(lat, rng, true));
  if (m == "density") return AnyState::of_density(random_density_matrix(lat.hilbert_dim(), rng));
  throw Error("unknown state family \"" + m + "\"");
}

/// Random partition of the sites into floor(N/k) blocks of exactly k sites,
/// with random Hermitian block matrices of norm <= g_cap.  Keeping every
/// block at full size k preserves the block-count premise N_j <= N/k that
/// the layered bounds assume.
std::vector<LocalTerm> random_tiling(const Lattice& lat, int k, double g_cap, Rng& rng) {
  std::vector<int> sites(lat.n_sites);
  for (int i = 0; i < lat.n_sites; ++i) sites[i] = i;
  for (int i = lat.n_sites - 1; i > 0; --i) {
    int j = static_cast<int>(rng.below(i + 1));
    std::swap(sites[i], sites[j]);
  }
  std::vector<LocalTerm> blocks;
  std::int64_t bd = 1;
  for (int j = 0; j < k; ++j) bd *= lat.local_dim;
  int nblocks = lat.n_sites / k;
  for (int b = 0; b < nblocks; ++b) {
    LocalTerm t;
    t.support.assign(sites.begin() + b * k, sites.begin() + (b + 1) * k);
    std::sort(t.support.begin(), t.support.end());
    Eigen::MatrixXcd h = random_hermitian(bd, rng);
    double nrm = matrix_operator_norm(h);
    double target = g_cap * (0.3 + 0.7 * rng.uniform());
    if (nrm > 0) h *= target / nrm;
    t.matrix = h;
    t.hermitian = true;
    blocks.push_back(std::move(t));
  }
  return blocks;
}

Layering random_tiling_layering(const Lattice& lat, int n_bar, int k, double g_cap, Rng& rng) {
  std::vector<std::vector<LocalTerm>> layers;
  for (int j = 0; j < n_bar; ++j) layers.push_back(random_tiling(lat, k, g_cap, rng));
  return make_layering(lat, std::move(layers));
}

/// Nearest-neighbor chain with one random Hermitian term per bond.
FewBodyOperator random_chain_operator(int n, double g_cap, Rng& rng) {
  FewBodyOperator op;
  op.lattice = chain_lattice(n);
  for (int i = 0; i + 1 < n; ++i) {
    LocalTerm t;
    t.support = {i, i + 1};
    Eigen::MatrixXcd h = random_hermitian(4, rng);
    double nrm = matrix_operator_norm(h);
    double target = g_cap * (0.3 + 0.7 * rng.uniform());
    if (nrm > 0) h *= target / nrm;
    t.matrix = h;
    op.terms.push_back(std::move(t));
  }
  return op;
}

double normalized_pass_floor(double bound) { return -tol::margin * (1.0 + std::abs(bound)); }

void fold_certificate(const BoundCertificate& cert, InstanceOutcome& out) {
  out.margin = std::min(out.margin, cert.margin_min);
  if (!cert.pass) {
    out.pass = false;
    if (out.detail.empty())
      out.detail = cert.theorem_id + " margin " + std::to_string(cert.margin_min);
  }
}

// ---- family builders -------------------------------------------------------

InstanceOutcome run_thm1(const Family& f, Rng& rng, int index) {
  InstanceOutcome out;
  out.pass = true;
  out.margin = std::numeric_limits<double>::infinity();
  int n = pick(f.n_sites, rng);
  Lattice lat(n);
  int qa = 1 + static_cast<int>(rng.below(f.q_max));
  int qb = 1 + static_cast<int>(rng.below(f.q_max));
  double ga = f.g_max * (0.25 + 0.75 * rng.uniform());
  double gb = f.g_max * (0.25 + 0.75 * rng.uniform());
  TermStyle sa = index % 2 ? TermStyle::PauliString : TermStyle::DenseHermitian;
  FewBodyOperator a = random_instance(rng.next_u64(), n, qa, ga, n + rng.below(n), sa);
  FewBodyOperator b = random_instance(rng.next_u64(), n, qb, gb, n + rng.below(n), sa);
  AnyState st = make_state(lat, rng, f.states, index);
  CommutatorMode mode = index % 2 ? CommutatorMode::Exact : CommutatorMode::LambdaGN;
  fold_certificate(certify_thm1(a, b, st, mode), out);
  return out;
}

InstanceOutcome run_cor2(const Family& f, Rng& rng, int index) {
  InstanceOutcome out;
  out.pass = true;
  out.margin = std::numeric_limits<double>::infinity();
  int n = pick(f.n_sites, rng);
  Lattice lat(n);
  int n_bar = pick(f.n_bars, rng);
  std::vector<FewBodyOperator> parts;
  for (int j = 0; j < n_bar; ++j) {
    int q = 1 + static_cast<int>(rng.below(f.q_max));
    double g = f.g_max * (0.25 + 0.75 * rng.uniform());
    TermStyle s = (index + j) % 2 ? TermStyle::PauliString : TermStyle::DenseHermitian;
    parts.push_back(random_instance(rng.next_u64(), n, q, g, n + rng.below(n), s));
  }
  AnyState st = make_state(lat, rng, f.states, index);
  fold_certificate(certify_cor2(parts, st), out);
  return out;
}

InstanceOutcome run_thm3(const Family& f, Rng& rng, int index) {
  InstanceOutcome out;
  out.pass = true;
  out.margin = std::numeric_limits<double>::infinity();
  int n = pick(f.n_sites, rng);
  Lattice lat(n);
  PurePair pp = random_pure_product(lat, rng);

  int k = 1 + static_cast<int>(rng.below(std::min(2, n)));
  int n_bar = 1 + static_cast<int>(rng.below(3));
  int active_per_layer = index % 3;

  std::vector<std::vector<LocalTerm>> layers;
  for (int j = 0; j < n_bar; ++j) {
    std::vector<LocalTerm> blocks = random_tiling(lat, k, f.g_max, rng);
    // align all but `active_per_layer` blocks with the state, so each layer
    // is exactly localized with a small width
    for (std::size_t b = 0; b + active_per_layer < blocks.size(); ++b) {
      Eigen::VectorXcd phi = Eigen::VectorXcd::Ones(1);
      for (int s : blocks[b].support) {
        Eigen::VectorXcd next(phi.size() * lat.local_dim);
        for (Eigen::Index r = 0; r < phi.size(); ++r)
          next.segment(r * lat.local_dim, lat.local_dim) = phi(r) * pp.psis[s];
        phi = next;
      }
      Eigen::MatrixXcd p = phi * phi.adjoint();
      Eigen::MatrixXcd q =
          Eigen::MatrixXcd::Identity(p.rows(), p.cols()) - p;
      blocks[b].matrix = (p * blocks[b].matrix * p + q * blocks[b].matrix * q).eval();
      blocks[b].matrix = 0.5 * (blocks[b].matrix + blocks[b].matrix.adjoint()).eval();
    }
    layers.push_back(std::move(blocks));
  }
  Layering lay = make_layering(lat, std::move(layers));
  Thm3Eval ev = prepare_thm3(lay, pp.state);
  fold_certificate(certify_thm3_mgf(ev, 0.9), out);
  fold_certificate(certify_thm3_tail(ev), out);
  return out;
}

InstanceOutcome run_cor4(const Family& f, Rng& rng, int index) {
  InstanceOutcome out;
  out.pass = true;
  out.margin = std::numeric_limits<double>::infinity();
  int n = pick(f.n_sites, rng);
  FewBodyOperator h;
  if (index % 2 == 0) {
    // on-site projector Hamiltonian
    h.lattice = Lattice(n);
    for (int i = 0; i < n; ++i) {
      LocalTerm t;
      t.support = {i};
      Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(2, 2);
      p(1, 1) = rng.uniform(0.5, 1.5);
      t.matrix = p;
      h.terms.push_back(std::move(t));
    }
  } else {
    // singlet-projector chain: every bond term annihilates |00...0>
    h.lattice = chain_lattice(n);
    Eigen::VectorXcd s(4);
    s << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      LocalTerm t;
      t.support = {i, i + 1};
      t.matrix = rng.uniform(0.5, 1.5) * (s * s.adjoint());
      h.terms.push_back(std::move(t));
    }
  }
  std::int64_t dim = h.lattice.hilbert_dim();
  Eigen::VectorXcd omega = Eigen::VectorXcd::Zero(dim);
  omega(0) = 1.0;  // |00...0>

  int q = 1 + index % std::min(3, n);
  FewBodyOperator probe =
      random_instance(rng.next_u64(), n, q, 1.0, 1 + rng.below(3), TermStyle::DenseHermitian);
  Profile ph = analyze_profile(h);
  Profile pq = analyze_profile(probe);
  double x_min = ph.lambda * pq.q;
  fold_certificate(certify_cor4(h, probe, omega, x_min + 6.0), out);
  fold_certificate(certify_akl(h, probe, omega, x_min + 6.0), out);
  return out;
}

InstanceOutcome run_lemma5(const Family& f, Rng& rng, int index) {
  InstanceOutcome out;
  out.pass = true;
  out.margin = std::numeric_limits<double>::infinity();
  int n = pick(f.n_sites, rng);
  if (n % 2) ++n;
  Lattice lat(n);
  Layering lay;
  if (index % 2 == 0) {
    FewBodyOperator chain = random_chain_operator(n, f.g_max, rng);
    lay = decompose(chain);
    lat = chain.lattice;
  } else {
    int k = 1 + static_cast<int>(rng.below(2));
    int n_bar = 2 + static_cast<int>(rng.below(3));
    lay = random_tiling_layering(lat, n_bar, k, f.g_max, rng);
  }
  ProductState st = (index % 3 == 0) ? all_zero_state(lat)
                                     : random_product_state(lat, rng, index % 3 == 2);
  Lemma5Eval ev = prepare_lemma5(lay, st);
  fold_certificate(certify_lemma5_mgf(ev, Lemma5Variant::Statement), out);
  fold_certificate(certify_lemma5_tail(ev, Lemma5Variant::Statement), out);
  BoundCertificate proof_mgf = certify_lemma5_mgf(ev, Lemma5Variant::Proof);
  BoundCertificate proof_tail = certify_lemma5_tail(ev, Lemma5Variant::Proof);
  out.proof_variant_failed = !(proof_mgf.pass && proof_tail.pass);
  return out;
}

InstanceOutcome run_lemma1(const Family& f, Rng& rng, int index) {
  InstanceOutcome out;
  out.pass = true;
  out.margin = std::numeric_limits<double>::infinity();
  int n = pick(f.n_sites, rng);
  Lattice lat(n);
  int chain_len = 1 + static_cast<int>(rng.below(3));
  std::vector<FewBodyOperator> chain;
  std::vector<Profile> profiles;
  for (int i = 0; i < chain_len; ++i) {
    int q = 1 + static_cast<int>(rng.below(2));
    double g = 0.3 + 1.2 * rng.uniform();
    TermStyle s = (index + i) % 2 ? TermStyle::PauliString : TermStyle::DenseHermitian;
    chain.push_back(random_instance(rng.next_u64(), n, q, g, 1 + rng.below(n), s));
    profiles.push_back(analyze_profile(chain.back()));
  }
  LocalTerm base;
  int bq = 1 + static_cast<int>(rng.below(2));
  std::vector<int> sites(n);
  for (int i = 0; i < n; ++i) sites[i] = i;
  for (int i = 0; i < bq; ++i) std::swap(sites[i], sites[i + rng.below(n - i)]);
  base.support.assign(sites.begin(), sites.begin() + bq);
  std::sort(base.support.begin(), base.support.end());
  base.matrix = random_hermitian(bq == 1 ? 2 : 4, rng);

  FewBodyOperator base_op;
  base_op.lattice = lat;
  base_op.terms.push_back(base);

  MultiCommutatorBound mb = lemma1_bound(profiles, base);
  double exact = multicommutator_exact(chain, base_op);
  double margin = mb.bound - exact;
  out.margin = std::min(out.margin, margin);
  if (margin < normalized_pass_floor(mb.bound)) {
    out.pass = false;
    out.detail = "lemma1 margin " + std::to_string(margin);
  }

  // single-commutator corollary: ||[A,B]|| <= lambda g N with the joint profile
  if (chain.size() >= 2) {
    Profile pa = profiles[0], pb = profiles[1];
    double gj = std::max(pa.g, pb.g);
    double kj = std::max(pa.q, pb.q);
    double bound = 2.0 * gj * kj * gj * n;
    double ex = commutator_norm_exact(chain[0], chain[1]);
    double m2 = bound - ex;
    out.margin = std::min(out.margin, m2);
    if (m2 < normalized_pass_floor(bound)) {
      out.pass = false;
      out.detail = "single-commutator margin " + std::to_string(m2);
    }
  }
  return out;
}

InstanceOutcome run_bandblock(const Family& f, Rng& rng, int index) {
  InstanceOutcome out;
  out.pass = true;
  out.margin = std::numeric_limits<double>::infinity();
  int n = pick(f.n_sites, rng);
  Lattice lat(n);
  int k = 1 + static_cast<int>(rng.below(std::min(3, n)));
  std::vector<LocalTerm> blocks = random_tiling(lat, k, f.g_max, rng);
  Layering lay = make_layering(lat, {blocks});
  const Layer& layer = lay.layers.front();

  int q = 1 + static_cast<int>(rng.below(std::min(3, n)));
  FewBodyOperator probe =
      random_instance(rng.next_u64(), n, q, 1.0, 1 + rng.below(3),
                      index % 2 ? TermStyle::PauliString : TermStyle::DenseHermitian);
  BandBlockEval ev = prepare_band_block(layer, probe, lat);
  double norm_o = ev.probe_norm;
  double threshold = ev.zero_threshold;
  double lo = ev.layer_values.front(), hi = ev.layer_values.back();
  for (int a = 0; a < 10; ++a) {
    double eps = lo + (hi - lo) * a / 9.0;
    for (int b = 0; b < 10; ++b) {
      double deps = 0.25 * threshold + (2.5 - 0.25) * threshold * b / 9.0;
      if (threshold == 0.0) deps = 0.1 + b * 0.1;
      BandBlockResult r = ev.check(eps, deps);
      double allowed = r.asserted_zero ? 1e-10 * norm_o : norm_o + 1e-9;
      double margin = allowed - r.norm;
      out.margin = std::min(out.margin, margin);
      if (margin < 0) {
        out.pass = false;
        out.detail = "band-block cell eps=" + std::to_string(eps) +
                     " deps=" + std::to_string(deps) + " norm=" + std::to_string(r.norm);
      }
    }
  }
  return out;
}

InstanceOutcome run_identity(const Family& f, Rng& rng, int index) {
  InstanceOutcome out;
  out.pass = true;
  out.margin = std::numeric_limits<double>::infinity();
  int n = pick(f.n_sites, rng);
  Lattice lat(n);
  int k = 1 + static_cast<int>(rng.below(2));
  int n_bar = 2 + static_cast<int>(rng.below(4));
  Layering lay = random_tiling_layering(lat, n_bar, k, f.g_max, rng);
  double norm_a = operator_norm_exact(average_operator(lay));
  for (int m = 1; m <= std::min(4, n_bar); ++m) {
    double residual = verify_moment_identity(lay, m);
    double allowed = 1e-9 * std::pow(std::max(norm_a, 1e-6), m);
    double margin = allowed - residual;
    out.margin = std::min(out.margin, margin);
    if (margin < 0) {
      out.pass = false;
      out.detail = "moment identity m=" + std::to_string(m) + " residual " +
                   std::to_string(residual);
    }
  }
  return out;
}

InstanceOutcome run_thm6(const Family& f, Rng& rng, int index) {
  InstanceOutcome out;
  out.pass = true;
  out.margin = std::numeric_limits<double>::infinity();
  int n = pick(f.n_sites, rng);
  Lattice lat(n);
  int n_bar = index % 2 ? 8 : 4;
  int k = 1 + static_cast<int>(rng.below(2));
  Layering lay = random_tiling_layering(lat, n_bar, k, std::min(f.g_max, 1.0), rng);
  ProductState st = (index % 3 == 0) ? all_zero_state(lat)
                                     : random_product_state(lat, rng, index % 3 == 2);
  InfiniteDimEval ev = prepare_infinite_dim(lay, st);
  // tail soundness on a strictly positive grid
  double span = std::max({std::abs(ev.dist_avg.min_value()),
                          std::abs(ev.dist_avg.max_value()), 1.0});
  for (int i = 1; i <= 40; ++i) {
    double x = 1.2 * span * i / 40.0;
    double bound = ev.tail(x);
    double exact = std::max(tail_exact(ev.dist_avg, x, TailSide::Geq),
                            tail_exact(ev.dist_avg, x, TailSide::LeqNegated));
    double margin = bound - exact;
    out.margin = std::min(out.margin, margin);
    if (margin < normalized_pass_floor(bound)) {
      out.pass = false;
      out.detail = "thm6 tail at x=" + std::to_string(x);
    }
  }
  // per-m moment soundness
  for (int m = 1; m <= std::min({6, ev.m_max_used}); ++m) {
    double bound = ev.moment_bounds[m - 1];
    double exact = std::abs(moment_exact(ev.dist_avg, m));
    double margin = bound - exact;
    out.margin = std::min(out.margin, margin);
    if (margin < normalized_pass_floor(bound)) {
      out.pass = false;
      out.detail = "thm6 moment m=" + std::to_string(m);
    }
  }
  return out;
}

InstanceOutcome run_decompose(const Family& f, Rng& rng, int index) {
  InstanceOutcome out;
  out.pass = true;
  out.margin = std::numeric_limits<double>::infinity();
  int n = pick(f.n_sites, rng);
  int q = 1 + static_cast<int>(rng.below(f.q_max));
  double g = f.g_max * (0.25 + 0.75 * rng.uniform());
  TermStyle s = index % 2 ? TermStyle::PauliString : TermStyle::DenseHermitian;
  FewBodyOperator op = random_instance(rng.next_u64(), n, q, g, n + rng.below(2 * n), s);
  ConflictGraph cg = build_conflict_graph(op);
  std::optional<int> req;
  Layering probe_chi = decompose(op);
  if (index % 3 == 0) req = probe_chi.chi * 2;  // exercise round-robin replication
  Layering lay = req ? decompose(op, req) : probe_chi;

  Profile p = analyze_profile(op);
  double allowed = tol::reconstruction * (1.0 + p.g * n);
  double margin = allowed - lay.reconstruction_error;
  out.margin = std::min(out.margin, margin);
  if (lay.reconstruction_error < 0 || margin < 0) {
    out.pass = false;
    out.detail = "reconstruction error " + std::to_string(lay.reconstruction_error);
  }
  if (lay.chi > cg.max_degree + 1) {
    out.pass = false;
    out.detail = "chi " + std::to_string(lay.chi) + " exceeds max degree + 1";
  }
  out.margin = std::min(out.margin, static_cast<double>(cg.max_degree + 1 - lay.chi));
  for (const auto& l : lay.layers) {
    // layers are scaled copies of source terms, so g_layer <= n_bar * g
    double cap = lay.n_bar * p.g;
    out.margin = std::min(out.margin, cap + 1e-12 - l.g);
    if (l.g > cap * (1.0 + 1e-12)) {
      out.pass = false;
      out.detail = "layer extensiveness " + std::to_string(l.g) + " exceeds n_bar * g";
    }
  }
  return out;
}

}  // namespace

InstanceOutcome run_instance(const Family& family, std::uint64_t plan_seed, int index) {
  Rng rng(instance_seed(plan_seed, family.theorem, index));
  InstanceOutcome out;
  out.digest = make_digest(plan_seed, family.theorem, index);
  try {
    InstanceOutcome r;
    if (family.theorem == "thm1")
      r = run_thm1(family, rng, index);
    else if (family.theorem == "cor2")
      r = run_cor2(family, rng, index);
    else if (family.theorem == "thm3")
      r = run_thm3(family, rng, index);
    else if (family.theorem == "cor4")
      r = run_cor4(family, rng, index);
    else if (family.theorem == "lemma5")
      r = run_lemma5(family, rng, index);
    else if (family.theorem == "lemma1")
      r = run_lemma1(family, rng, index);
    else if (family.theorem == "bandblock")
      r = run_bandblock(family, rng, index);
    else if (family.theorem == "identity")
      r = run_identity(family, rng, index);
    else if (family.theorem == "thm6")
      r = run_thm6(family, rng, index);
    else if (family.theorem == "decompose")
      r = run_decompose(family, rng, index);
    else
      throw Error("unknown theorem family \"" + family.theorem + "\"");
    r.digest = out.digest;
    return r;
  } catch (const std::exception& e) {
    out.pass = false;
    out.margin = -std::numeric_limits<double>::infinity();
    out.detail = std::string("error: ") + e.what();
    return out;
  }
}

SweepReport run_sweep(const SweepPlan& plan) {
  SweepReport report;
  report.seed = plan.seed;
  report.version = kVersion;
  report.pass = true;
  for (const auto& family : plan.families) {
    FamilyResult fr;
    fr.name = family.theorem;
    fr.worst_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < family.instances; ++i) {
      InstanceOutcome o = run_instance(family, plan.seed, i);
      ++fr.instances;
      if (o.pass) ++fr.passed;
      if (o.margin < fr.worst_margin) {
        fr.worst_margin = o.margin;
        fr.worst_digest = o.digest;
      }
      if (o.proof_variant_failed) ++fr.proof_variant_failures;
      if (!o.pass) fr.failure_details.push_back(o.digest + ": " + o.detail);
    }
    if (fr.instances == 0) fr.worst_margin = 0.0;
    if (fr.passed != fr.instances) report.pass = false;
    report.families.push_back(std::move(fr));
  }
  return report;
}

SweepPlan default_plan() {
  SweepPlan plan;
  plan.seed = 42;
  auto add = [&](std::string theorem, int instances, std::vector<int> ns,
                 std::string states = "alternate") {
    Family f;
    f.theorem = std::move(theorem);
    f.instances = instances;
    f.n_sites = std::move(ns);
    f.states = std::move(states);
    plan.families.push_back(std::move(f));
  };
  add("thm1", 200, {4, 6, 8});
  add("thm1", 50, {4, 6}, "density");
  add("cor2", 100, {4, 6, 8});
  add("thm3", 50, {4, 6, 8});
  add("cor4", 50, {6, 8, 10});
  add("lemma5", 50, {4, 6, 8, 10});
  add("lemma1", 100, {4, 5, 6, 7, 8});
  add("bandblock", 50, {4, 6, 8});
  add("identity", 30, {4, 5, 6});
  add("thm6", 50, {6, 8, 10});
  add("decompose", 200, {4, 6, 8});
  return plan;
}

SweepPlan plan_from_json(const json& j) {
  SweepPlan plan;
  plan.seed = j.value("seed", static_cast<std::uint64_t>(42));
  for (const json& jf : j.at("families")) {
    Family f;
    f.theorem = jf.at("theorem").get<std::string>();
    f.instances = jf.value("instances", 10);
    if (jf.contains("n_sites")) f.n_sites = jf.at("n_sites").get<std::vector<int>>();
    if (jf.contains("n_bars")) f.n_bars = jf.at("n_bars").get<std::vector<int>>();
    f.q_max = jf.value("q_max", 3);
    f.g_max = jf.value("g_max", 2.0);
    f.states = jf.value("states", std::string("alternate"));
    plan.families.push_back(std::move(f));
  }
  return plan;
}

json plan_to_json(const SweepPlan& plan) {
  json j;
  j["seed"] = plan.seed;
  json fams = json::array();
  for (const auto& f : plan.families) {
    fams.push_back(json{{"theorem", f.theorem},
                        {"instances", f.instances},
                        {"n_sites", f.n_sites},
                        {"n_bars", f.n_bars},
                        {"q_max", f.q_max},
                        {"g_max", f.g_max},
                        {"states", f.states}});
  }
  j["families"] = std::move(fams);
  return j;
}

json report_to_json(const SweepReport& report) {
  json j;
  j["seed"] = report.seed;
  j["version"] = report.version;
  json fams = json::array();
  for (const auto& fr : report.families) {
    json jf;
    jf["name"] = fr.name;
    jf["instances"] = fr.instances;
    jf["passed"] = fr.passed;
    jf["worst_margin"] = fr.worst_margin;
    jf["worst_digest"] = fr.worst_digest;
    jf["proof_variant_failures"] = fr.proof_variant_failures;
    jf["failures"] = fr.failure_details;
    fams.push_back(std::move(jf));
  }
  j["families"] = std::move(fams);
  j["verdict"] = report.pass ? "pass" : "fail";
  return j;
}

BoundCertificate replay(const SweepPlan& plan, const std::string& digest) {
  // digest format: v=<version>;seed=<seed>;family=<name>;index=<i>
  std::string version, family_name;
  std::uint64_t seed = 0;
  int index = -1;
  std::istringstream is(digest);
  std::string part;
  while (std::getline(is, part, ';')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw Error("unknown digest");
    std::string key = part.substr(0, eq), val = part.substr(eq + 1);
    if (key == "v")
      version = val;
    else if (key == "seed")
      seed = std::stoull(val);
    else if (key == "family")
      family_name = val;
    else if (key == "index")
      index = std::stoi(val);
    else
      throw Error("unknown digest");
  }
  if (family_name.empty() || index < 0) throw Error("unknown digest");

  const Family* family = nullptr;
  for (const auto& f : plan.families)
    if (f.theorem == family_name) {
      family = &f;
      break;
    }
  if (!family) throw Error("unknown digest: no family \"" + family_name + "\" in the plan");

  InstanceOutcome o = run_instance(*family, seed, index);
  BoundCertificate cert;
  cert.theorem_id = family_name;
  cert.digest = o.digest;
  cert.margin_min = o.margin;
  cert.pass = o.pass;
  cert.note = o.detail;
  if (version != kVersion)
    cert.note += std::string(cert.note.empty() ? "" : "; ") + "version mismatch: digest " +
                 version + " vs current " + kVersion;
  return cert;
}

}  // namespace fewbody
