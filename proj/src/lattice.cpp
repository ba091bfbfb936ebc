#include "fewbody/lattice.hpp"

#include <cstdlib>
#include <limits>

namespace fewbody {

std::vector<int> Geometry::coordinates(int site) const {
  std::vector<int> c(dims.size(), 0);
  // row-major: last axis varies fastest
  for (int ax = static_cast<int>(dims.size()) - 1; ax >= 0; --ax) {
    c[ax] = site % dims[ax];
    site /= dims[ax];
  }
  return c;
}

void Lattice::validate() const {
  if (n_sites < 1) throw Error("lattice requires n_sites >= 1");
  if (local_dim < 2) throw Error("lattice requires local_dim >= 2");
  if (geometry) {
    std::int64_t vol = 1;
    for (int e : geometry->dims) {
      if (e < 1) throw Error("geometry extents must be positive");
      vol *= e;
    }
    if (vol != n_sites) throw Error("geometry volume does not match n_sites");
  }
}

int Lattice::dist(int a, int b) const {
  if (!geometry) throw Error("no geometry");
  auto ca = geometry->coordinates(a);
  auto cb = geometry->coordinates(b);
  int d = 0;
  for (std::size_t ax = 0; ax < ca.size(); ++ax) d += std::abs(ca[ax] - cb[ax]);
  return d;
}

int Lattice::dist(const std::vector<int>& X, const std::vector<int>& Y) const {
  if (X.empty() || Y.empty()) throw Error("dist of empty subset");
  int best = std::numeric_limits<int>::max();
  for (int i : X)
    for (int j : Y) best = std::min(best, dist(i, j));
  return best;
}

int Lattice::diameter(const std::vector<int>& X) const {
  int d = 0;
  for (std::size_t a = 0; a < X.size(); ++a)
    for (std::size_t b = a + 1; b < X.size(); ++b) d = std::max(d, dist(X[a], X[b]));
  return d;
}

std::int64_t Lattice::hilbert_dim() const {
  std::int64_t dim = 1;
  for (int i = 0; i < n_sites; ++i) {
    if (dim > std::numeric_limits<std::int64_t>::max() / local_dim)
      throw Error("Hilbert dimension overflows 64 bits");
    dim *= local_dim;
  }
  return dim;
}

Lattice chain_lattice(int n, int d) {
  Geometry g;
  g.dims = {n};
  return Lattice(n, d, g);
}

}  // namespace fewbody
