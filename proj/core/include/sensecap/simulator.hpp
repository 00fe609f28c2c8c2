#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sensecap/ensembles.hpp"
#include "sensecap/models.hpp"

// Desk-scale Monte Carlo of Y = sqrt(SNR) G X + N with exhaustive maximum
// likelihood detection over {0,1}^n. Empirical error frequencies are checked
// against the finite-n Fano lower bound and the union upper bound.
namespace sensecap {

/// Largest signal dimension the exhaustive decoder accepts (2^20 candidates).
inline constexpr int kMaxExhaustiveDim = 20;

Eigen::VectorXd sample_signal(const SignalModel& model, int n, std::uint64_t seed);

/// sqrt(SNR) G x plus i.i.d. standard normal noise.
Eigen::VectorXd observe(const Eigen::MatrixXd& g, const Eigen::VectorXd& x, double snr, std::uint64_t seed);

/// argmin over z in {0,1}^n of ||y - sqrt(SNR) G z||^2; ties go to the
/// lexicographically smallest z. Throws BudgetExceeded for n > 20.
Eigen::VectorXd ml_decode_exhaustive(const Eigen::VectorXd& y, const Eigen::MatrixXd& g, double snr);

/// Per-coordinate matched-filter threshold decoder, a cheap suboptimal baseline:
/// z_j = 1 iff <G_j, y> / (sqrt(SNR) ||G_j||^2) > 1/2.
Eigen::VectorXd threshold_decode(const Eigen::VectorXd& y, const Eigen::MatrixXd& g, double snr);

int hamming_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Number of coordinate errors that counts as a distortion event:
/// d_H / n >= d0, with d0 = 0 meaning any disagreement.
int error_threshold(int n, double d0);

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};
/// 95% Wilson score interval for `errors` successes out of `trials`.
WilsonInterval wilson_interval(long long errors, long long trials, double z = 1.959963984540054);

enum class Verdict { Consistent, FanoViolated, UnionViolated };
std::string_view to_string(Verdict v);

enum class Decoder { ExhaustiveML, Threshold };

struct SimulationOptions {
  int threads = 1;
  Decoder decoder = Decoder::ExhaustiveML;
  /// Draw G once (from `seed`) and reuse it for every trial instead of a
  /// fresh G per trial.
  bool fixed_matrix = false;
};

struct SimulationReport {
  long long trials = 0;
  long long errors = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  double mean_mi_bits = 0.0;  // average log-det MI over the sampled matrices
  double fano_lb = 0.0;
  double union_ub = 1.0;
  Verdict verdict = Verdict::Consistent;
  std::uint64_t seed = 0;
  Scenario scenario;
  SignalModel model;
  EnsembleKind ensemble = EnsembleKind::GaussianDense;
  double beta = 1.0;

  bool operator==(const SimulationReport&) const = default;
};

/// Runs `trials` independent draws of (G, X, N), decodes, and counts
/// distortion events. Trial t uses streams keyed by (seed, t), so the report
/// is bit-identical for any thread count.
///
/// Requires a BernoulliDiscrete model with Hamming distortion and n <= 20.
SimulationReport estimate_error_probability(const Scenario& scenario, const SignalModel& model,
                                            const EnsembleSpec& ensemble, long long trials, std::uint64_t seed,
                                            const SimulationOptions& options = {});

/// Verdict from the interval and the two analytic arms.
Verdict sandwich_verdict(double ci_low, double ci_high, double fano_lb, double union_ub);

struct SweepRow {
  double c = 0.0;  // target n/m
  int n = 0;
  int m = 0;
  SimulationReport report;
};

/// For every (c, n) pair runs estimate_error_probability at m = max(1, round(n / c)).
/// Validates the whole budget before simulating anything.
std::vector<SweepRow> run_capacity_sweep(const Scenario& scenario_template, const SignalModel& model,
                                         const EnsembleSpec& ensemble, std::span<const double> c_values,
                                         std::span<const int> n_values, long long trials, std::uint64_t seed,
                                         const SimulationOptions& options = {});

/// True when, along increasing n, each p_hat is either no larger than its
/// predecessor or their confidence intervals overlap.
bool nonincreasing_within_ci(std::span<const SimulationReport> reports_by_n);

}  // namespace sensecap
