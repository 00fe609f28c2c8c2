#include "sensecap/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

#include "sensecap/bounds.hpp"
#include "sensecap/infotheory.hpp"
#include "sensecap/rng.hpp"

namespace sensecap {

namespace {

// Stream purposes within one trial.
enum : std::uint64_t { kMatrixStream = 1, kSignalStream = 2, kNoiseStream = 3 };

// True when candidate a precedes b lexicographically (coordinate 0 first).
bool lex_less(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t diff = a ^ b;
  if (diff == 0) return false;
  const std::uint32_t lowest = diff & (~diff + 1u);
  return (a & lowest) == 0;
}

Eigen::VectorXd unpack(std::uint32_t mask, int n) {
  Eigen::VectorXd z(n);
  for (int j = 0; j < n; ++j) z[j] = (mask >> j) & 1u ? 1.0 : 0.0;
  return z;
}

}  // namespace

Eigen::VectorXd sample_signal(const SignalModel& model, int n, std::uint64_t seed) {
  require_valid(model);
  if (n < 1) throw DomainError("sample_signal: n must be positive");
  CounterRng rng(stream_key(seed, 0, kSignalStream));
  Eigen::VectorXd x(n);
  if (model.kind == SignalKind::BernoulliDiscrete) {
    for (int i = 0; i < n; ++i) x[i] = rng.uniform01() < model.alpha ? 1.0 : 0.0;
    return x;
  }
  std::normal_distribution<double> normal;
  const double s1 = std::sqrt(model.sigma1_sq);
  const double s0 = std::sqrt(model.sigma0_sq);
  for (int i = 0; i < n; ++i) {
    const bool active = rng.uniform01() < model.alpha;
    const double sd = active ? s1 : s0;
    x[i] = sd > 0.0 ? sd * normal(rng) : 0.0;
  }
  return x;
}

Eigen::VectorXd observe(const Eigen::MatrixXd& g, const Eigen::VectorXd& x, double snr, std::uint64_t seed) {
  if (g.cols() != x.size()) throw DomainError("observe: G has " + std::to_string(g.cols()) +
                                              " columns but x has " + std::to_string(x.size()) + " entries");
  if (!(snr >= 0.0)) throw DomainError("observe: snr must be nonnegative");
  CounterRng rng(stream_key(seed, 0, kNoiseStream));
  std::normal_distribution<double> normal;
  Eigen::VectorXd y = std::sqrt(snr) * (g * x);
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += normal(rng);
  return y;
}

Eigen::VectorXd ml_decode_exhaustive(const Eigen::VectorXd& y, const Eigen::MatrixXd& g, double snr) {
  const int n = static_cast<int>(g.cols());
  if (n > kMaxExhaustiveDim) {
    throw BudgetExceeded("ml_decode_exhaustive: 2^" + std::to_string(n) + " candidates exceed the 2^20 budget");
  }
  if (n < 1) throw DomainError("ml_decode_exhaustive: empty signal");
  if (g.rows() != y.size()) throw DomainError("ml_decode_exhaustive: dimension mismatch");

  // ||y - s G z||^2 = ||y||^2 + z^T Q z - 2 b^T z  with Q = s^2 G^T G, b = s G^T y.
  // Candidates are visited in Gray-code order so each step flips one bit and
  // the objective updates in O(n).
  const double s = std::sqrt(snr);
  const Eigen::MatrixXd q = (snr * (g.transpose() * g)).eval();  // symmetric: column i == row i
  const Eigen::VectorXd b = s * (g.transpose() * y);
  const double scale = y.squaredNorm() + q.cwiseAbs().sum() + 2.0 * b.cwiseAbs().sum();
  const double tie_tol = 1e-12 * scale;

  std::vector<double> qz(static_cast<std::size_t>(n), 0.0);
  std::uint32_t mask = 0;
  std::uint32_t best = 0;
  double f = 0.0;
  double best_f = 0.0;
  const std::uint32_t count = 1u << n;
  for (std::uint32_t t = 1; t < count; ++t) {
    const int i = std::countr_zero(t);
    const std::uint32_t bit = 1u << i;
    mask ^= bit;
    const double* col = q.data() + static_cast<std::ptrdiff_t>(i) * n;
    if (mask & bit) {
      f += col[i] + 2.0 * (qz[static_cast<std::size_t>(i)] - b[i]);
      for (int j = 0; j < n; ++j) qz[static_cast<std::size_t>(j)] += col[j];
    } else {
      f += col[i] - 2.0 * (qz[static_cast<std::size_t>(i)] - b[i]);
      for (int j = 0; j < n; ++j) qz[static_cast<std::size_t>(j)] -= col[j];
    }
    if (f < best_f - tie_tol || (f <= best_f + tie_tol && lex_less(mask, best))) {
      best = mask;
      best_f = std::min(f, best_f);
    }
  }
  return unpack(best, n);
}

Eigen::VectorXd threshold_decode(const Eigen::VectorXd& y, const Eigen::MatrixXd& g, double snr) {
  if (g.rows() != y.size()) throw DomainError("threshold_decode: dimension mismatch");
  const double s = std::sqrt(snr);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(g.cols());
  if (s == 0.0) return z;
  const Eigen::VectorXd corr = g.transpose() * y;
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    const double energy = g.col(j).squaredNorm();
    if (energy > 0.0 && corr[j] / (s * energy) > 0.5) z[j] = 1.0;
  }
  return z;
}

int hamming_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw DomainError("hamming_distance: size mismatch");
  return static_cast<int>((a.array() != b.array()).count());
}

int error_threshold(int n, double d0) {
  return std::max(1, static_cast<int>(std::ceil(d0 * n - 1e-9)));
}

WilsonInterval wilson_interval(long long errors, long long trials, double z) {
  if (trials <= 0 || errors < 0 || errors > trials) throw DomainError("wilson_interval: need 0 <= errors <= trials");
  const double t = static_cast<double>(trials);
  const double p = errors / t;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / t;
  const double center = (p + z2 / (2.0 * t)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
  return {std::clamp(std::min(p, center - half), 0.0, 1.0), std::clamp(std::max(p, center + half), 0.0, 1.0)};
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "Consistent";
    case Verdict::FanoViolated: return "FanoViolated";
    case Verdict::UnionViolated: return "UnionViolated";
  }
  return "?";
}

Verdict sandwich_verdict(double ci_low, double ci_high, double fano_lb, double union_ub) {
  if (ci_high < fano_lb) return Verdict::FanoViolated;
  if (ci_low > union_ub) return Verdict::UnionViolated;
  return Verdict::Consistent;
}

SimulationReport estimate_error_probability(const Scenario& scenario, const SignalModel& model,
                                            const EnsembleSpec& ensemble, long long trials, std::uint64_t seed,
                                            const SimulationOptions& options) {
  require_valid(model);
  require_valid(scenario);
  if (model.kind != SignalKind::BernoulliDiscrete || scenario.distortion != Distortion::Hamming) {
    throw DomainError("estimate_error_probability: only the BernoulliDiscrete model with Hamming distortion is simulated");
  }
  if (scenario.n > kMaxExhaustiveDim) {
    throw BudgetExceeded("estimate_error_probability: n = " + std::to_string(scenario.n) + " exceeds 20");
  }
  if (trials < 1) throw DomainError("estimate_error_probability: trials must be positive");
  if (scenario.d0 > 1.0) throw DomainError("estimate_error_probability: Hamming d0 must lie in [0, 1]");

  const int n = scenario.n;
  const int m = scenario.m;
  const int threshold = error_threshold(n, scenario.d0);
  const auto count = static_cast<std::size_t>(trials);

  std::optional<SensingMatrix> fixed;
  if (options.fixed_matrix) fixed = sample_matrix(ensemble, m, n, seed);

  std::vector<unsigned char> error(count, 0);
  std::vector<double> mi(count, 0.0);

  auto run_trial = [&](std::size_t t) {
    const auto tt = static_cast<std::uint64_t>(t);
    const SensingMatrix g = fixed ? *fixed : sample_matrix(ensemble, m, n, stream_key(seed, tt, kMatrixStream));
    const Eigen::VectorXd x = sample_signal(model, n, stream_key(seed, tt, kSignalStream));
    const Eigen::VectorXd y = observe(g.entries, x, scenario.snr, stream_key(seed, tt, kNoiseStream));
    const Eigen::VectorXd xhat = options.decoder == Decoder::ExhaustiveML
                                     ? ml_decode_exhaustive(y, g.entries, scenario.snr)
                                     : threshold_decode(y, g.entries, scenario.snr);
    error[t] = hamming_distance(x, xhat) >= threshold ? 1 : 0;
    if (!fixed) mi[t] = mi_logdet_gaussian(g.entries, model.alpha, scenario.snr);
  };

  const int workers = std::clamp(options.threads, 1, 256);
  if (workers == 1) {
    for (std::size_t t = 0; t < count; ++t) run_trial(t);
  } else {
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(workers));
    {
      std::vector<std::jthread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t t = static_cast<std::size_t>(w); t < count; t += static_cast<std::size_t>(workers)) {
              run_trial(t);
            }
          } catch (...) {
            failures[static_cast<std::size_t>(w)] = std::current_exception();
          }
        });
      }
    }
    for (auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  // Reduction in trial order keeps the floating-point sum independent of the thread count.
  SimulationReport r;
  r.trials = trials;
  for (unsigned char e : error) r.errors += e;
  if (fixed) {
    r.mean_mi_bits = mi_logdet_gaussian(fixed->entries, model.alpha, scenario.snr);
  } else {
    double sum = 0.0;
    for (double v : mi) sum += v;
    r.mean_mi_bits = sum / static_cast<double>(trials);
  }
  r.p_hat = static_cast<double>(r.errors) / static_cast<double>(trials);
  const auto ci = wilson_interval(r.errors, trials);
  r.ci_low = ci.low;
  r.ci_high = ci.high;

  const auto source = DiscreteSource::bernoulli(model.alpha);
  const auto fano = fano_lb_finite_n(n, source, scenario.d0, r.mean_mi_bits);
  r.fano_lb = fano.valid ? *fano.value : 0.0;
  const auto uni = achievable_error_ub(n, m, scenario.snr, scenario.d0, source);
  r.union_ub = uni.valid ? *uni.value : 1.0;
  r.verdict = sandwich_verdict(r.ci_low, r.ci_high, r.fano_lb, r.union_ub);

  r.seed = seed;
  r.scenario = scenario;
  r.model = model;
  r.ensemble = ensemble.kind;
  r.beta = ensemble.beta;
  return r;
}

std::vector<SweepRow> run_capacity_sweep(const Scenario& scenario_template, const SignalModel& model,
                                         const EnsembleSpec& ensemble, std::span<const double> c_values,
                                         std::span<const int> n_values, long long trials, std::uint64_t seed,
                                         const SimulationOptions& options) {
  std::vector<SweepRow> rows;
  for (double c : c_values) {
    if (!(c > 0.0)) throw DomainError("run_capacity_sweep: capacity values must be positive");
    for (int n : n_values) {
      if (n > kMaxExhaustiveDim) throw BudgetExceeded("run_capacity_sweep: n = " + std::to_string(n) + " exceeds 20");
      if (n < 1) throw DomainError("run_capacity_sweep: n must be positive");
      SweepRow row;
      row.c = c;
      row.n = n;
      row.m = std::max(1, static_cast<int>(std::lround(n / c)));
      rows.push_back(row);
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Scenario s = scenario_template;
    s.n = rows[i].n;
    s.m = rows[i].m;
    rows[i].report = estimate_error_probability(s, model, ensemble, trials, stream_key(seed, i, 0x53574545ULL), options);
  }
  return rows;
}

bool nonincreasing_within_ci(std::span<const SimulationReport> reports) {
  for (std::size_t i = 1; i < reports.size(); ++i) {
    const auto& prev = reports[i - 1];
    const auto& cur = reports[i];
    if (cur.p_hat > prev.p_hat && cur.ci_low > prev.ci_high) return false;
  }
  return true;
}

}  // namespace sensecap
