#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fewbody {

using cplx = std::complex<double>;

/// Thrown for contract violations (bad inputs, domain errors, cap overruns).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

namespace tol {
// Hermiticity of user-supplied term matrices (max elementwise |M - M^dag|).
inline constexpr double term_hermitian = 1e-12;
// Trace/positivity slack for density matrix factors.
inline constexpr double state = 1e-12;
// Eigenvalue degeneracy merge, scaled by max(1, ||A||).
inline constexpr double merge = 1e-9;
// Spectral weight below this counts as zero support.
inline constexpr double weight = 1e-12;
// Normalized soundness margin: bound - exact >= -margin * (1 + |bound|).
inline constexpr double margin = 1e-9;
// Exact-layering reconstruction, scaled by (1 + g*N).
inline constexpr double reconstruction = 1e-10;
}  // namespace tol

/// Deterministic 64-bit RNG utilities.  std::mt19937_64 with splitmix
/// seeding; the distributions below avoid std::uniform_* so streams are
/// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).  n must be positive.
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  /// Standard normal (Box-Muller).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  cplx cnormal() { return cplx(normal(), normal()); }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// FNV-1a over bytes; used for replayable instance digests.
inline std::uint64_t fnv1a(const void* data, std::size_t n,
                           std::uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  return fnv1a(s.data(), s.size(), h);
}

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fewbody
