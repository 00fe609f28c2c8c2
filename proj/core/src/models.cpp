#include "sensecap/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sensecap/infotheory.hpp"

namespace sensecap {

bool EnsembleSpec::operator==(const EnsembleSpec& o) const {
  auto same = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
  };
  return kind == o.kind && beta == o.beta && filter_length == o.filter_length && downsample == o.downsample &&
         same(column_covariance, o.column_covariance) && same(matrix, o.matrix);
}

int support_size(double alpha, int n) {
  return std::clamp(static_cast<int>(std::lround(alpha * n)), 1, std::max(n, 1));
}

int diversity_count(double beta, int n) {
  return std::clamp(static_cast<int>(std::lround(beta * n)), 1, std::max(n, 1));
}

double BoundResult::value_or_inf() const {
  return value ? *value : std::numeric_limits<double>::infinity();
}

bool ValidationReport::has(Severity s) const {
  return std::any_of(violations.begin(), violations.end(), [s](const Violation& v) { return v.severity == s; });
}

bool ValidationReport::mentions(std::string_view subject) const {
  return std::any_of(violations.begin(), violations.end(),
                     [subject](const Violation& v) { return v.subject == subject; });
}

bool ValidationReport::headline_regime_ok() const {
  return !has(Severity::Invalid) && !mentions("ub_discrete_gaussian") && !mentions("ub_continuous_gaussian");
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

void check_model(const SignalModel& model, std::vector<Violation>& out) {
  auto bad = [&](std::string msg) { out.push_back({"SignalModel", std::move(msg), Severity::Invalid}); };
  if (!(model.alpha > 0.0 && model.alpha <= 0.5)) bad("alpha must lie in (0, 1/2], got " + fmt(model.alpha));
  if (model.kind == SignalKind::SparseGaussian) {
    if (!(model.sigma1_sq > 0.0)) bad("sigma1_sq must be positive");
    if (!(model.sigma0_sq >= 0.0)) bad("sigma0_sq must be nonnegative");
    if (model.sigma0_sq > model.sigma1_sq) bad("sigma0_sq must not exceed sigma1_sq");
  }
}

void check_scenario(const Scenario& s, const SignalModel& model, std::vector<Violation>& out) {
  auto bad = [&](std::string msg) { out.push_back({"Scenario", std::move(msg), Severity::Invalid}); };
  if (s.n < 1) bad("n must be a positive count");
  if (s.m < 1) bad("m must be a positive count");
  if (!(s.snr >= 0.0)) bad("snr must be nonnegative");
  if (!(s.d0 >= 0.0)) bad("d0 must be nonnegative");
  if (s.distortion == Distortion::Hamming) {
    if (model.kind != SignalKind::BernoulliDiscrete) bad("Hamming distortion requires the BernoulliDiscrete model");
    if (s.d0 > 1.0) bad("Hamming d0 must lie in [0, 1]");
  } else if (model.kind != SignalKind::SparseGaussian) {
    bad("Squared distortion requires the SparseGaussian model");
  }
}

bool is_symmetric_psd(const Eigen::MatrixXd& c) {
  if (c.rows() != c.cols() || c.rows() == 0) return false;
  if (!c.isApprox(c.transpose(), 1e-12)) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, c.diagonal().cwiseAbs().maxCoeff());
  return es.info() == Eigen::Success && es.eigenvalues().minCoeff() >= -1e-10 * scale;
}

void check_ensemble(const EnsembleSpec& e, const Scenario& s, std::vector<Violation>& out) {
  auto bad = [&](std::string msg) { out.push_back({"EnsembleSpec", std::move(msg), Severity::Invalid}); };
  if (!(e.beta > 0.0 && e.beta <= 1.0)) bad("beta must lie in (0, 1], got " + fmt(e.beta));
  switch (e.kind) {
    case EnsembleKind::ToeplitzFIR: {
      if (e.filter_length < 1 || e.filter_length > s.n) bad("filter_length must lie in [1, n]");
      if (!(e.downsample >= 0.0 && e.downsample <= 1.0)) bad("downsample must lie in [0, 1]");
      if (e.filter_length >= 1 && e.filter_length <= s.n && e.downsample >= 0.0 && e.downsample < 1.0) {
        const int stride = std::max(1, static_cast<int>(std::lround(1.0 / (1.0 - e.downsample))));
        const int needed = (s.n - e.filter_length + 1 + stride - 1) / stride;
        if (s.m < needed) {
          out.push_back({"EnsembleSpec",
                         "Toeplitz rows do not cover the signal: need m >= " + std::to_string(needed),
                         Severity::Warning});
        }
      }
      break;
    }
    case EnsembleKind::CorrelatedColumns:
      if (e.column_covariance.rows() != s.n || e.column_covariance.cols() != s.n) {
        bad("column_covariance must be n x n");
      } else if (!is_symmetric_psd(e.column_covariance)) {
        bad("column_covariance must be symmetric positive semidefinite");
      } else if ((e.column_covariance.diagonal().array() <= 0.0).any()) {
        bad("column_covariance must have a positive diagonal");
      }
      break;
    case EnsembleKind::Explicit:
      if (e.matrix.rows() != s.m || e.matrix.cols() != s.n) bad("explicit matrix must be m x n");
      else if ((e.matrix.rowwise().norm().array() == 0.0).any()) bad("explicit matrix has an all-zero row");
      break;
    default:
      break;
  }
}

void check_regimes(const Scenario& s, const SignalModel& model, const EnsembleSpec& e, std::vector<Violation>& out) {
  auto regime = [&](std::string subject, std::string msg) {
    out.push_back({std::move(subject), std::move(msg), Severity::Regime});
  };
  const double a = model.alpha;
  const double d0 = s.d0;
  if (s.distortion == Distortion::Hamming) {
    if (d0 > a) {
      regime("ub_discrete_gaussian", "ub_discrete_gaussian requires d0 <= alpha");
      regime("fano_lb_finite_n", "fano_lb_finite_n requires d0 <= (|X|-1) min P_X = alpha");
    }
    if (!(d0 > 0.0 && d0 <= std::min(a, 1.0 - a))) {
      regime("lb_discrete", "lb_discrete requires 0 < d0 <= min P_X");
    }
    if (e.kind == EnsembleKind::ZeroOneRandom && !(d0 < a)) {
      regime("ub_01_random", "ub_01_random requires d0 < alpha");
    }
    if (e.kind == EnsembleKind::ZeroOneContiguous) {
      if (!(d0 < a)) regime("ub_01_contiguous", "ub_01_contiguous requires d0 < alpha");
      if (a + e.beta > 1.0) regime("ub_01_contiguous", "ub_01_contiguous requires alpha + beta <= 1");
    }
  } else {
    if (!(d0 > 0.0 && d0 <= a / 2.0)) {
      regime("ub_continuous_gaussian", "ub_continuous_gaussian requires 0 < d0 <= alpha/2");
    }
    const double d_max = (1.0 - a) * model.sigma0_sq + a * model.sigma1_sq;
    if (!(d0 > 0.0 && d0 <= d_max)) {
      regime("lb_continuous", "lb_continuous requires 0 < d0 <= (1-alpha) sigma0^2 + alpha sigma1^2");
    } else if (rd_mixture_gaussian(a, model.sigma1_sq, model.sigma0_sq, d0) <= kDefaultCoverBits) {
      regime("lb_continuous", "lb_continuous requires R(d0) > K (cover constant)");
    }
  }
}

}  // namespace

ValidationReport validate(const Scenario& scenario, const SignalModel& model, const EnsembleSpec& ensemble) {
  ValidationReport report;
  auto& v = report.violations;
  check_model(model, v);
  check_scenario(scenario, model, v);
  check_ensemble(ensemble, scenario, v);
  // Regime checks evaluate closed forms, which need well-typed inputs.
  if (!report.has(Severity::Invalid)) check_regimes(scenario, model, ensemble, v);
  return report;
}

void require_valid(const SignalModel& model) {
  std::vector<Violation> v;
  check_model(model, v);
  if (!v.empty()) throw DomainError("SignalModel: " + v.front().message);
}

void require_valid(const Scenario& scenario) {
  if (scenario.n < 1 || scenario.m < 1) throw DomainError("Scenario: n and m must be positive");
  if (!(scenario.snr >= 0.0)) throw DomainError("Scenario: snr must be nonnegative");
  if (!(scenario.d0 >= 0.0)) throw DomainError("Scenario: d0 must be nonnegative");
}

std::string_view to_string(SignalKind k) {
  switch (k) {
    case SignalKind::BernoulliDiscrete: return "BernoulliDiscrete";
    case SignalKind::SparseGaussian: return "SparseGaussian";
  }
  return "?";
}

std::string_view to_string(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::GaussianDense: return "GaussianDense";
    case EnsembleKind::GaussianDiluted: return "GaussianDiluted";
    case EnsembleKind::ZeroOneRandom: return "ZeroOneRandom";
    case EnsembleKind::ZeroOneContiguous: return "ZeroOneContiguous";
    case EnsembleKind::ToeplitzFIR: return "ToeplitzFIR";
    case EnsembleKind::CorrelatedColumns: return "CorrelatedColumns";
    case EnsembleKind::Explicit: return "Explicit";
  }
  return "?";
}

std::string_view to_string(Distortion d) { return d == Distortion::Hamming ? "Hamming" : "Squared"; }

std::string_view to_string(Unit u) {
  switch (u) {
    case Unit::Bits: return "Bits";
    case Unit::CapacityDimsPerSensor: return "CapacityDimsPerSensor";
    case Unit::Probability: return "Probability";
    case Unit::SensorCount: return "SensorCount";
  }
  return "?";
}

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Invalid: return "invalid";
    case Severity::Regime: return "regime";
    case Severity::Warning: return "warning";
  }
  return "?";
}

SignalKind parse_signal_kind(std::string_view s) {
  if (s == "BernoulliDiscrete") return SignalKind::BernoulliDiscrete;
  if (s == "SparseGaussian") return SignalKind::SparseGaussian;
  throw DomainError("unknown signal kind: " + std::string(s));
}

EnsembleKind parse_ensemble_kind(std::string_view s) {
  for (auto k : {EnsembleKind::GaussianDense, EnsembleKind::GaussianDiluted, EnsembleKind::ZeroOneRandom,
                 EnsembleKind::ZeroOneContiguous, EnsembleKind::ToeplitzFIR, EnsembleKind::CorrelatedColumns,
                 EnsembleKind::Explicit}) {
    if (to_string(k) == s) return k;
  }
  throw DomainError("unknown ensemble kind: " + std::string(s));
}

Distortion parse_distortion(std::string_view s) {
  if (s == "Hamming") return Distortion::Hamming;
  if (s == "Squared") return Distortion::Squared;
  throw DomainError("unknown distortion: " + std::string(s));
}

}  // namespace sensecap
