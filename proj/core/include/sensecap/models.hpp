#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace sensecap {

/// Thrown when an argument lies outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a requested computation exceeds the desk-scale work budget.
class BudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

enum class SignalKind { BernoulliDiscrete, SparseGaussian };

/// Prior on the signal coordinates: i.i.d. mixture with sparsity ratio alpha.
///
/// BernoulliDiscrete draws X_i in {0,1} with P(X_i = 1) = alpha.
/// SparseGaussian draws X_i ~ N(0, sigma1_sq) with probability alpha and
/// N(0, sigma0_sq) otherwise (a point mass at zero when sigma0_sq == 0).
struct SignalModel {
  SignalKind kind = SignalKind::BernoulliDiscrete;
  double alpha = 0.5;
  double sigma1_sq = 1.0;
  double sigma0_sq = 0.0;

  static SignalModel bernoulli(double alpha) { return {SignalKind::BernoulliDiscrete, alpha, 1.0, 0.0}; }
  static SignalModel sparse_gaussian(double alpha, double sigma1_sq = 1.0, double sigma0_sq = 0.0) {
    return {SignalKind::SparseGaussian, alpha, sigma1_sq, sigma0_sq};
  }

  bool operator==(const SignalModel&) const = default;
};

enum class EnsembleKind {
  GaussianDense,
  GaussianDiluted,
  ZeroOneRandom,
  ZeroOneContiguous,
  ToeplitzFIR,
  CorrelatedColumns,
  Explicit,
};

/// Sensing-matrix ensemble. Fields that do not apply to `kind` are ignored.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::GaussianDense;
  double beta = 1.0;                  // diversity ratio, l = round(beta * n)
  int filter_length = 1;              // ToeplitzFIR
  double downsample = 0.0;            // ToeplitzFIR, fraction in [0, 1]
  Eigen::MatrixXd column_covariance;  // CorrelatedColumns, n x n
  Eigen::MatrixXd matrix;             // Explicit, m x n

  static EnsembleSpec gaussian(double beta = 1.0) {
    EnsembleSpec s;
    s.kind = beta < 1.0 ? EnsembleKind::GaussianDiluted : EnsembleKind::GaussianDense;
    s.beta = beta;
    return s;
  }
  static EnsembleSpec zero_one_random(double beta) {
    EnsembleSpec s;
    s.kind = EnsembleKind::ZeroOneRandom;
    s.beta = beta;
    return s;
  }
  static EnsembleSpec zero_one_contiguous(double beta) {
    EnsembleSpec s;
    s.kind = EnsembleKind::ZeroOneContiguous;
    s.beta = beta;
    return s;
  }
  static EnsembleSpec toeplitz_fir(int filter_length, double downsample) {
    EnsembleSpec s;
    s.kind = EnsembleKind::ToeplitzFIR;
    s.filter_length = filter_length;
    s.downsample = downsample;
    return s;
  }
  static EnsembleSpec correlated(Eigen::MatrixXd covariance) {
    EnsembleSpec s;
    s.kind = EnsembleKind::CorrelatedColumns;
    s.column_covariance = std::move(covariance);
    return s;
  }
  static EnsembleSpec explicit_matrix(Eigen::MatrixXd g) {
    EnsembleSpec s;
    s.kind = EnsembleKind::Explicit;
    s.matrix = std::move(g);
    return s;
  }

  bool operator==(const EnsembleSpec& other) const;
};

enum class Distortion { Hamming, Squared };

/// Problem size and operating point. SNR is linear.
struct Scenario {
  int n = 1;
  int m = 1;
  double snr = 1.0;
  double d0 = 0.0;
  Distortion distortion = Distortion::Hamming;

  bool operator==(const Scenario&) const = default;
};

/// k = round(alpha * n), at least 1 and at most n.
int support_size(double alpha, int n);
/// l = round(beta * n), at least 1 and at most n.
int diversity_count(double beta, int n);

enum class Unit { Bits, CapacityDimsPerSensor, Probability, SensorCount };

/// A bound value with provenance and validity metadata.
///
/// An empty `value` is the Unbounded marker (nonpositive denominator).
/// `valid == false` always carries a non-empty `reason`.
struct BoundResult {
  std::optional<double> value;
  Unit unit = Unit::Bits;
  std::string bound;  // provenance tag, e.g. "ub_discrete_gaussian"
  bool clamped = false;
  bool valid = true;
  std::string reason;
  std::string note;

  bool unbounded() const { return !value.has_value(); }
  /// Value or +infinity when unbounded; convenient for comparisons.
  double value_or_inf() const;
};

enum class Severity {
  Invalid,  // configuration breaks a type invariant
  Regime,   // a particular bound is out of its validity regime
  Warning,  // advisory only (e.g. Toeplitz coverage)
};

struct Violation {
  std::string subject;  // type name or bound tag
  std::string message;
  Severity severity = Severity::Regime;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(Severity s) const;
  bool mentions(std::string_view subject) const;
  /// True when the full-diversity upper bound for the configured model is usable.
  bool headline_regime_ok() const;
};

/// Checks every type invariant and every bound's regime precondition.
/// Never throws; an empty report means all downstream bounds are in-regime.
ValidationReport validate(const Scenario& scenario, const SignalModel& model, const EnsembleSpec& ensemble);

/// Type-level checks only; throws DomainError on the first violation.
void require_valid(const SignalModel& model);
void require_valid(const Scenario& scenario);

std::string_view to_string(SignalKind k);
std::string_view to_string(EnsembleKind k);
std::string_view to_string(Distortion d);
std::string_view to_string(Unit u);
std::string_view to_string(Severity s);

SignalKind parse_signal_kind(std::string_view s);
EnsembleKind parse_ensemble_kind(std::string_view s);
Distortion parse_distortion(std::string_view s);

}  // namespace sensecap
