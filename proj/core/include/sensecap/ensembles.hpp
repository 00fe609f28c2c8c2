#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sensecap/models.hpp"

namespace sensecap {

/// A sampled m x n sensing matrix with unit-norm rows, plus its provenance.
struct SensingMatrix {
  Eigen::MatrixXd entries;
  EnsembleSpec ensemble;
  std::uint64_t seed = 0;

  int rows() const { return static_cast<int>(entries.rows()); }
  int cols() const { return static_cast<int>(entries.cols()); }
};

/// Draws G from `spec` and normalizes every row to unit l2 norm.
///
/// Row i is generated from its own counter-based stream keyed by (seed, i),
/// so the result depends only on (spec, m, n, seed).
///
///  - GaussianDense / GaussianDiluted: each entry is active with probability
///    beta and standard normal when active; all-zero rows are redrawn.
///  - ZeroOneRandom: exactly l = round(beta n) ones at uniformly random positions.
///  - ZeroOneContiguous: l consecutive ones, wrapping, at a uniform start.
///  - ToeplitzFIR: a boxcar of length L; row i starts at (i * stride) mod n and wraps.
///  - CorrelatedColumns: rows ~ N(0, Sigma) with Sigma the normalized column covariance.
///  - Explicit: the supplied matrix.
///
/// Throws DomainError for infeasible specs (e.g. L > n, wrong explicit shape).
SensingMatrix sample_matrix(const EnsembleSpec& spec, int m, int n, std::uint64_t seed);

/// Positions {start, start+1, ..., start+l-1} mod n.
std::vector<int> contiguous_support(int n, int l, int start);

/// Row shift of the Toeplitz ensemble: max(1, round(1 / (1 - d))), capped at n.
int toeplitz_stride(double downsample, int n);

/// r_i = <G_i, G_{i+1}> / <G_i, G_i> for i = 0..m-2.
std::vector<double> row_cross_correlations(const Eigen::MatrixXd& g);
inline std::vector<double> row_cross_correlations(const SensingMatrix& g) {
  return row_cross_correlations(g.entries);
}

/// Rescales a covariance to unit diagonal (a correlation matrix).
Eigen::MatrixXd normalize_covariance(const Eigen::MatrixXd& covariance);

/// Smallest eigenvalue of the normalized covariance, clamped to [0, largest].
/// Throws DomainError if the input is not symmetric positive semidefinite.
double column_lambda_min(const Eigen::MatrixXd& covariance);

/// 0.5 sum_i log2(1 + lambda_i alpha SNR) over the eigenvalues of G G^T, in bits.
/// An upper bound on I(X; Y | G) for any signal with per-coordinate second
/// moment at most alpha.
double mi_logdet_gaussian(const Eigen::MatrixXd& g, double alpha, double snr);
inline double mi_logdet_gaussian(const SensingMatrix& g, double alpha, double snr) {
  return mi_logdet_gaussian(g.entries, alpha, snr);
}

/// CSV export: a `m,n,ensemble` header line, its value line, then m rows of n
/// entries printed with round-trip precision.
std::string matrix_to_csv(const SensingMatrix& g);
/// Inverse of matrix_to_csv. The ensemble kind is restored; other spec fields are not.
SensingMatrix matrix_from_csv(std::string_view csv);

}  // namespace sensecap
