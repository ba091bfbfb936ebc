#pragma once

#include <optional>
#include <vector>

#include "fewbody/common.hpp"

namespace fewbody {

/// Optional regular-grid geometry: dims = extent per axis, sites numbered
/// row-major.  Distances are shortest-path lengths on the grid graph
/// (Manhattan distance between coordinates).
struct Geometry {
  std::vector<int> dims;

  int dimension() const { return static_cast<int>(dims.size()); }
  std::vector<int> coordinates(int site) const;
};

struct Lattice {
  int n_sites = 0;
  int local_dim = 2;
  std::optional<Geometry> geometry;

  Lattice() = default;
  Lattice(int n, int d = 2) : n_sites(n), local_dim(d) { validate(); }
  Lattice(int n, int d, Geometry geo) : n_sites(n), local_dim(d), geometry(std::move(geo)) {
    validate();
  }

  void validate() const;

  /// Grid distance between two sites; requires geometry.
  int dist(int a, int b) const;

  /// min over pairs (i in X, j in Y) of dist(i, j).
  int dist(const std::vector<int>& X, const std::vector<int>& Y) const;

  /// max over pairs in X of dist(i, j); 0 for |X| <= 1.
  int diameter(const std::vector<int>& X) const;

  /// d^n_sites as a checked 64-bit value.
  std::int64_t hilbert_dim() const;
};

/// Convenience: 1D chain of n qubits.
Lattice chain_lattice(int n, int d = 2);

}  // namespace fewbody
