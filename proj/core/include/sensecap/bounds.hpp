#pragma once

#include <optional>
#include <span>

#include "sensecap/infotheory.hpp"
#include "sensecap/models.hpp"

// Closed-form sensing-capacity bounds, error-probability bounds and
// sensor-count requirements for the fixed-SNR model Y = sqrt(SNR) G X + N.
//
// Capacity is n/m (signal dimensions per sensor). Every log is base 2; the
// capacity ratios are base-invariant. Asymptotically vanishing o(1) terms are
// dropped throughout.
namespace sensecap {

/// A capacity bound n/m = numerator / denominator.
///
/// A nonpositive denominator yields the Unbounded marker (empty `value`),
/// never an infinite or NaN float.
struct CapacityBound : BoundResult {
  double numerator_bits = 0.0;
  double denominator_bits = 0.0;
  bool regime_ok = true;
};

/// Upper bound for a Bernoulli(alpha) signal, full-diversity Gaussian
/// ensemble, Hamming distortion:  C <= 0.5 log2(1 + alpha SNR) / (h2(alpha) - h2(d0)).
/// Valid for d0 <= alpha; d0 == alpha is Unbounded.
CapacityBound ub_capacity_discrete_gaussian(double alpha, double snr, double d0);

/// Upper bound for the strict-sparse Gaussian signal under squared distortion:
///   C <= 0.5 log2(1 + alpha SNR) / (H(alpha) + alpha/2 log2(alpha / (2 d0))),
/// valid for 0 < d0 <= alpha/2. The denominator equals the mixture
/// rate-distortion function evaluated at D = 2 d0.
CapacityBound ub_capacity_continuous_gaussian(double alpha, double snr, double d0);

/// Achievable capacity for a discrete source with Hamming distortion:
///   0.5 log2(1 + SNR d0 / 2) / (H(X) - d0 log2(|X|-1) - d0 log2(1/d0)),
/// valid for 0 < d0 <= min_x P_X(x).
CapacityBound lb_capacity_discrete(const DiscreteSource& source, double snr, double d0);
/// Bernoulli / sparse-uniform convenience overload.
CapacityBound lb_capacity_discrete(double alpha, int alphabet_size, double snr, double d0);

/// Weak achievability for the strict-sparse Gaussian signal:
///   0.5 log2(1 + d0 SNR) / (R(d0) - K),
/// where R is the mixture rate-distortion function at D = d0. The guaranteed
/// distortion level is 2 d0 (recorded in `note`). R(d0) <= K gives Unbounded with valid = false.
CapacityBound lb_capacity_continuous(double alpha, double snr, double d0,
                                     double cover_bits = kDefaultCoverBits);

/// Upper bound under sensing diversity beta (Gaussian ensemble, l = round(beta n)
/// nonzeros per row), Bernoulli signal, Hamming distortion:
///   0.5 E_J[log2(1 + SNR J / l)] / (h2(alpha) - h2(d0)),
/// with J hypergeometric(n, k = round(alpha n), l).
CapacityBound ub_capacity_diversity(double alpha, double beta, double snr, double d0, int n);

/// lb_capacity_continuous with SNR scaled by the minimum eigenvalue of the
/// normalized column covariance. Throws DomainError unless 0 <= lambda_min <= 1.
CapacityBound lb_capacity_correlated(double alpha, double snr, double d0, double lambda_min,
                                     double cover_bits = kDefaultCoverBits);

enum class DeterministicMode {
  /// Sum over the m-1 consecutive-row terms exactly as the closed form is usually stated.
  AsPrinted,
  /// Per-sensor normalization implied by the chain-rule derivation:
  /// [0.5 log2(1 + a SNR) + sum_i 0.5 log2(term_i)] / (m (R - K)).
  Normalized,
};

/// Capacity upper bound for a fixed (deterministic) G with unit-norm rows,
/// driven by the consecutive-row cross-correlations r (length m - 1). With
/// a = alpha SNR the per-row conditional variance is
///   term_i = 1 + a (1 - r_i) + (r_i a / (a + 1)) (1 + a (1 - r_i)).
/// R and K follow the signal model: Hamming with K = 0 for BernoulliDiscrete,
/// squared error with the mixture rate and K = cover_bits for SparseGaussian.
CapacityBound ub_capacity_deterministic(std::span<const double> r, const SignalModel& model, double snr, double d0,
                                        DeterministicMode mode = DeterministicMode::Normalized,
                                        std::optional<double> cover_bits = std::nullopt);

/// The per-row conditional-variance term above.
double deterministic_row_term(double r, double alpha, double snr);

/// Cross-correlation of a length-L FIR filter bank downsampled by fraction d:
/// clamp(L (1 - d) / n, 0, 1).
double fir_cross_correlation(int filter_length, double downsample, int n);

/// {0,1} ensemble with l = round(beta n) ones at random positions per row:
///   C <= H(J) / (h2(alpha) - h2(d0)),  J ~ hypergeometric(n, round(alpha n), l).
/// The entropy is evaluated at the supplied finite n.
CapacityBound ub_capacity_01_random(double alpha, double beta, double d0, int n);

/// {0,1} ensemble with l consecutive ones (wrapping) at a random start:
///   C <= h2(alpha + beta) / (h2(alpha) - h2(d0)).  Requires alpha + beta <= 1.
CapacityBound ub_capacity_01_contiguous(double alpha, double beta, double d0);

/// Finite-n Fano-type lower bound on Pr(d_H(X, X^) / n >= d0):
///   (n R(d0) - I - 1) / (n log2|X| - n (h2(d0) + d0 log2(|X|-1))),
/// with R(d0) = H(X) - h2(d0) - d0 log2(|X|-1), clamped to [0, 1].
/// `mi_bits` may be any upper bound on I(X; Y | G); the result stays a lower bound.
BoundResult fano_lb_finite_n(int n, const DiscreteSource& source, double d0, double mi_bits);

/// Asymptotic bound clamp((R - K - I/n) / R, 0, 1). The o(1) term is omitted.
/// Throws DomainError for R <= 0.
BoundResult fano_lb_asymptotic(double rate_bits, double cover_bits, double mi_per_dim_bits);

/// Exact recovery: clamp((H - I/n - 1/n) / H, 0, 1). Throws DomainError for H <= 0.
BoundResult fano_lb_exact_recovery(int n, double entropy_bits, double mi_bits);

/// Union (chi-square moment generating function) upper bound on the error
/// probability of ML detection over the discrete alphabet:
///   min(1, 2^{-(m/2) log2(1 + SNR d0 / 2) + n (H - d0 log2(|X|-1) - d0 log2(1/d0))}).
/// d0 = 0 is accepted and gives the vacuous value 1.
BoundResult achievable_error_ub(int n, int m, double snr, double d0, const DiscreteSource& source);
/// The exponent (base 2) of the bound above, before clamping.
double achievable_error_exponent(int n, int m, double snr, double d0, const DiscreteSource& source);

/// Sign-pattern recovery: clamp((H(U) - I(U;Y|G) - 1) / (n log2 3), 0, 1).
BoundResult sign_pattern_error_lb(int n, double entropy_u_bits, double mi_u_bits);
/// I(U;Y|G) = I(X;Y|G) - I(X;Y|G,U) <= I(X;Y|G) - max(0, lower bound on the second term).
double sign_pattern_mi_upper(double mi_x_bits, double mi_x_given_u_lower_bits = 0.0);

struct SensorComparison {
  BoundResult ours;    // m >= 2 (log2(1/eps) + n (R - K)) / log2(1 + d0 SNR / 2)
  BoundResult theirs;  // m >= C1 C2 alpha n ln(n) / (d0 eps)
  double order_ours = 0.0;    // n h2(alpha)
  double order_theirs = 0.0;  // alpha n log2(n)
};

/// Default C2 = 50 (P + sigma)^2 ((1 + p) ln 2 + 4) with P = sigma = 1, p = 1.
double default_complexity_c2();

/// Minimum sensor counts from the achievable error exponent versus a
/// complexity-regularized estimation bound, with their scaling orders.
/// R and K follow `distortion` (Hamming: h2(a) - h2(d0), K = 0; Squared:
/// strict-sparse mixture rate at d0, K = cover_bits).
SensorComparison min_sensors_comparison(int n, double alpha, double d0, double snr, double epsilon, double c1,
                                        double c2, Distortion distortion = Distortion::Hamming,
                                        std::optional<double> cover_bits = std::nullopt);

/// Sparsity ratio where n h2(alpha) = alpha n log2 n, found by bisection on (0, 1/2).
double sensor_order_crossing(int n);

}  // namespace sensecap
