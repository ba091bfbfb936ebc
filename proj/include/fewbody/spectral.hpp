#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fewbody/embed.hpp"
#include "fewbody/state.hpp"

namespace fewbody {

struct Eigensystem {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // columns, orthonormal
};

/// Deterministic Hermitian eigendecomposition; rejects matrices whose
/// max elementwise |M - M^dag| exceeds 1e-10 * max(1, |M|_max).
Eigensystem eigensystem(const Eigen::MatrixXcd& m);

/// Eigenvalues with state weights w = tr(rho Pi_lambda); degenerate values
/// merged within merge_tol, weights clamped at zero and summing to 1.
struct SpectralDistribution {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> weights;
  double merge_tol = 0.0;

  double min_value() const { return eigenvalues.empty() ? 0.0 : eigenvalues.front(); }
  double max_value() const { return eigenvalues.empty() ? 0.0 : eigenvalues.back(); }
};

SpectralDistribution spectral_distribution(const FewBodyOperator& op, const AnyState& state);
SpectralDistribution distribution_of_matrix(const Eigen::MatrixXcd& m, const AnyState& state,
                                            const Lattice& lat);

/// log tr(e^{tau A} rho) evaluated from the distribution with max-shift.
double mgf_exact(const SpectralDistribution& dist, double tau);

enum class TailSide { Geq, LeqNegated };

/// tr(rho Pi_{>=x}) (or tr(rho Pi_{<=-x})); the threshold is closed and
/// includes eigenvalues within the distribution's merge tolerance of x.
double tail_exact(const SpectralDistribution& dist, double x, TailSide side = TailSide::Geq);

/// Two-sided tail tr(rho (Pi_{>=x} + Pi_{<=-x})) for x > 0.
double tail_two_sided(const SpectralDistribution& dist, double x);

double moment_exact(const SpectralDistribution& dist, int m);

/// || Pi_{>=x}^H A |omega> || from the eigensystem of H.
double excitation_norm(const FewBodyOperator& H, const FewBodyOperator& A,
                       const Eigen::VectorXcd& omega, double x);

double commutator_norm_exact(const FewBodyOperator& A, const FewBodyOperator& B);

/// Factorized MGF for terms with pairwise-disjoint supports under a product
/// state: sum of per-block log tr(e^{tau a_X} rho_X).  Independent of the
/// full-embedding path; used as a cross-check oracle.
double mgf_product_blocks(const std::vector<LocalTerm>& blocks, const ProductState& state,
                          double tau);

}  // namespace fewbody
