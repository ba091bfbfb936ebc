#include "fewbody/io.hpp"

#include <cstdio>
#include <fstream>
#include <unistd.h>

namespace fewbody {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

static Eigen::MatrixXcd matrix_from_json(const json& jm) {
  if (!jm.is_array() || jm.empty()) throw Error("term matrix must be a nonempty array of rows");
  const std::size_t n = jm.size();
  Eigen::MatrixXcd m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const json& row = jm.at(r);
    if (!row.is_array() || row.size() != n) throw Error("term matrix must be square");
    for (std::size_t c = 0; c < n; ++c) {
      const json& e = row.at(c);
      if (!e.is_array() || e.size() != 2) throw Error("matrix entries must be [re, im] pairs");
      m(r, c) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

static json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

FewBodyOperator operator_from_json(const json& j) {
  FewBodyOperator op;
  op.lattice.n_sites = j.at("n_sites").get<int>();
  op.lattice.local_dim = j.value("local_dim", 2);
  if (j.contains("geometry") && !j.at("geometry").is_null()) {
    Geometry geo;
    geo.dims = j.at("geometry").at("dims").get<std::vector<int>>();
    op.lattice.geometry = geo;
  }
  op.lattice.validate();

  for (const json& jt : j.at("terms")) {
    LocalTerm t;
    t.support = jt.at("support").get<std::vector<int>>();
    double coeff = jt.value("coeff", 1.0);
    bool has_pauli = jt.contains("pauli") && !jt.at("pauli").is_null();
    bool has_matrix = jt.contains("matrix") && !jt.at("matrix").is_null();
    if (has_pauli == has_matrix)
      throw Error("each term needs exactly one of \"pauli\" or \"matrix\"");
    if (has_pauli) {
      if (op.lattice.local_dim != 2) throw Error("\"pauli\" terms require local_dim 2");
      std::string s = jt.at("pauli").get<std::string>();
      if (s.size() != t.support.size())
        throw Error("pauli string length must match the support size");
      t.matrix = coeff * pauli_string_matrix(s);
    } else {
      t.matrix = coeff * matrix_from_json(jt.at("matrix"));
    }
    t.hermitian = (t.matrix - t.matrix.adjoint()).cwiseAbs().maxCoeff() <= tol::term_hermitian;
    op.terms.push_back(std::move(t));
  }
  op.validate();
  return op;
}

json operator_to_json(const FewBodyOperator& op) {
  json j;
  j["n_sites"] = op.lattice.n_sites;
  j["local_dim"] = op.lattice.local_dim;
  if (op.lattice.geometry)
    j["geometry"] = json{{"dims", op.lattice.geometry->dims}};
  else
    j["geometry"] = nullptr;
  json terms = json::array();
  for (const auto& t : op.terms) {
    json jt;
    jt["support"] = t.support;
    jt["pauli"] = nullptr;
    jt["matrix"] = matrix_to_json(t.matrix);
    jt["coeff"] = 1.0;
    terms.push_back(std::move(jt));
  }
  j["terms"] = std::move(terms);
  return j;
}

ProductState state_from_json(const json& j, const Lattice& lat) {
  if (j.at("kind").get<std::string>() != "product")
    throw Error("state file kind must be \"product\"");
  ProductState st;
  st.lattice = lat;
  const json& jf = j.at("factors");
  if (static_cast<int>(jf.size()) != lat.n_sites)
    throw Error("state file needs one factor per site");
  for (const json& f : jf) {
    if (f.contains("named")) {
      std::string name = f.at("named").get<std::string>();
      if (name == "zero")
        st.factors.push_back(factor_zero());
      else if (name == "plus")
        st.factors.push_back(factor_plus());
      else if (name == "mixed")
        st.factors.push_back(factor_mixed(lat.local_dim));
      else
        throw Error("unknown named factor \"" + name + "\"");
    } else if (f.contains("pure")) {
      const json& amps = f.at("pure");
      Eigen::VectorXcd v(amps.size());
      for (std::size_t a = 0; a < amps.size(); ++a)
        v(a) = cplx(amps.at(a).at(0).get<double>(), amps.at(a).at(1).get<double>());
      if (v.size() != lat.local_dim) throw Error("pure factor has wrong dimension");
      st.factors.push_back(factor_pure(v));
    } else if (f.contains("density")) {
      st.factors.push_back(matrix_from_json(f.at("density")));
    } else {
      throw Error("factor needs one of \"pure\", \"density\", \"named\"");
    }
  }
  st.validate();
  return st;
}

json state_to_json(const ProductState& st) {
  json j;
  j["kind"] = "product";
  json fs = json::array();
  for (const auto& f : st.factors) fs.push_back(json{{"density", matrix_to_json(f)}});
  j["factors"] = std::move(fs);
  return j;
}

json certificate_to_json(const BoundCertificate& cert) {
  json j;
  j["theorem_id"] = cert.theorem_id;
  j["digest"] = cert.digest;
  j["constants"] = {
      {"C", cert.constants.C},
      {"g", cert.constants.g},
      {"k", cert.constants.k},
      {"lambda", cert.constants.lambda},
      {"n_bar", cert.constants.n_bar},
      {"m0", cert.constants.m0},
      {"c_tilde_statement", cert.constants.c_tilde_statement},
      {"c_tilde_proof", cert.constants.c_tilde_proof},
      {"tau_max", cert.constants.tau_max},
  };
  j["grid"] = cert.grid;
  j["bound"] = cert.bound_values;
  j["exact"] = cert.exact_values;
  j["margin_min"] = cert.margin_min;
  j["verdict"] = cert.pass ? "pass" : "fail";
  if (!cert.note.empty()) j["note"] = cert.note;
  return j;
}

json layering_to_json(const Layering& lay) {
  json j;
  j["n_bar"] = lay.n_bar;
  j["chi"] = lay.chi;
  json layers = json::array();
  json per_g = json::array(), per_k = json::array(), per_blocks = json::array();
  for (const auto& l : lay.layers) {
    layers.push_back(json{{"scale", l.scale}, {"term_indices", l.term_indices}});
    per_g.push_back(l.g);
    per_k.push_back(l.k);
    per_blocks.push_back(l.block_count);
  }
  j["layers"] = std::move(layers);
  j["reconstruction_error"] = lay.reconstruction_error;
  j["per_layer_g"] = std::move(per_g);
  j["per_layer_k"] = std::move(per_k);
  j["per_layer_blocks"] = std::move(per_blocks);
  j["lemma_caps_ok"] = lay.lemma_caps_ok;
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("malformed JSON in " + path + ": " + e.what());
  }
}

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << content;
    if (!out.good()) throw Error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("cannot rename " + tmp + " to " + path);
  }
}

std::string curve_csv(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::string out = "x_or_tau,exact_value\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    out += format_g17(xs[i]) + "," + format_g17(ys[i]) + "\n";
  return out;
}

std::string curve_csv3(const std::vector<double>& xs, const std::vector<double>& bound,
                       const std::vector<double>& exact) {
  std::string out = "x,bound,exact\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out += format_g17(xs[i]) + "," + format_g17(bound[i]) + ",";
    out += std::isnan(exact[i]) ? std::string("") : format_g17(exact[i]);
    out += "\n";
  }
  return out;
}

}  // namespace fewbody
