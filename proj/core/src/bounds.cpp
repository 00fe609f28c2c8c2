#include "sensecap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sensecap {

namespace {

// 0.5 log2(1 + x), accurate for tiny x.
double half_log2_1p(double x) { return 0.5 * std::log1p(x) / std::numbers::ln2; }

// x log2(1/x) with the 0 log 0 = 0 convention.
double xlog2inv(double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }

CapacityBound ratio(std::string tag, double numerator, double denominator) {
  CapacityBound b;
  b.bound = std::move(tag);
  b.unit = Unit::CapacityDimsPerSensor;
  b.numerator_bits = numerator;
  b.denominator_bits = denominator;
  if (denominator > 0.0) b.value = numerator / denominator;
  return b;
}

void out_of_regime(BoundResult& b, std::string reason) {
  b.valid = false;
  if (b.reason.empty()) b.reason = std::move(reason);
  else b.reason += "; " + reason;
}

void out_of_regime(CapacityBound& b, std::string reason) {
  b.regime_ok = false;
  out_of_regime(static_cast<BoundResult&>(b), std::move(reason));
}

void require_alpha(double alpha, const char* fn) {
  if (!(alpha > 0.0 && alpha <= 0.5)) throw DomainError(std::string(fn) + ": alpha must lie in (0, 1/2]");
}

void require_snr(double snr, const char* fn) {
  if (!(snr >= 0.0)) throw DomainError(std::string(fn) + ": snr must be nonnegative");
}

void require_unit_interval(double x, const char* what, const char* fn) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(fn) + ": " + what + " must lie in [0, 1]");
}

BoundResult probability(std::string tag, double raw) {
  BoundResult b;
  b.bound = std::move(tag);
  b.unit = Unit::Probability;
  const double clamped = std::clamp(raw, 0.0, 1.0);
  b.clamped = clamped != raw;
  b.value = clamped;
  return b;
}

}  // namespace

CapacityBound ub_capacity_discrete_gaussian(double alpha, double snr, double d0) {
  require_alpha(alpha, "ub_capacity_discrete_gaussian");
  require_snr(snr, "ub_capacity_discrete_gaussian");
  require_unit_interval(d0, "d0", "ub_capacity_discrete_gaussian");
  const Rate rate = rd_binary_hamming(alpha, d0);
  auto b = ratio("ub_discrete_gaussian", half_log2_1p(alpha * snr), rate.bits);
  if (d0 > alpha) out_of_regime(b, "requires d0 <= alpha");
  return b;
}

CapacityBound ub_capacity_continuous_gaussian(double alpha, double snr, double d0) {
  require_alpha(alpha, "ub_capacity_continuous_gaussian");
  require_snr(snr, "ub_capacity_continuous_gaussian");
  const double numerator = half_log2_1p(alpha * snr);
  if (!(d0 > 0.0)) {
    auto b = ratio("ub_continuous_gaussian", numerator, 0.0);
    out_of_regime(b, "requires 0 < d0 <= alpha/2");
    return b;
  }
  const double denominator = binary_entropy(alpha) + 0.5 * alpha * std::log2(alpha / (2.0 * d0));
  auto b = ratio("ub_continuous_gaussian", numerator, denominator);
  if (d0 > alpha / 2.0) out_of_regime(b, "requires 0 < d0 <= alpha/2");
  return b;
}

CapacityBound lb_capacity_discrete(const DiscreteSource& source, double snr, double d0) {
  require_snr(snr, "lb_capacity_discrete");
  require_unit_interval(d0, "d0", "lb_capacity_discrete");
  const double denominator =
      source.entropy_bits - d0 * std::log2(source.alphabet_size - 1.0) - xlog2inv(d0);
  auto b = ratio("lb_discrete", half_log2_1p(snr * d0 / 2.0), denominator);
  if (!(d0 > 0.0 && d0 <= source.min_symbol_prob)) out_of_regime(b, "requires 0 < d0 <= min P_X");
  if (b.unbounded()) out_of_regime(b, "nonpositive denominator");
  return b;
}

CapacityBound lb_capacity_discrete(double alpha, int alphabet_size, double snr, double d0) {
  const auto source =
      alphabet_size == 2 ? DiscreteSource::bernoulli(alpha) : DiscreteSource::sparse_uniform(alpha, alphabet_size);
  return lb_capacity_discrete(source, snr, d0);
}

CapacityBound lb_capacity_continuous(double alpha, double snr, double d0, double cover_bits) {
  require_alpha(alpha, "lb_capacity_continuous");
  require_snr(snr, "lb_capacity_continuous");
  const double numerator = half_log2_1p(d0 * snr);
  if (!(d0 > 0.0 && d0 <= alpha)) {
    auto b = ratio("lb_continuous", numerator, 0.0);
    out_of_regime(b, "requires 0 < d0 <= alpha sigma1^2");
    return b;
  }
  const double rate = rd_mixture_gaussian(alpha, 1.0, 0.0, d0);
  auto b = ratio("lb_continuous", numerator, rate - cover_bits);
  b.note = "guarantees distortion 2*d0";
  if (b.unbounded()) out_of_regime(b, "R(d0) <= K: achievability exponent never decays");
  return b;
}

CapacityBound ub_capacity_diversity(double alpha, double beta, double snr, double d0, int n) {
  require_alpha(alpha, "ub_capacity_diversity");
  require_snr(snr, "ub_capacity_diversity");
  require_unit_interval(d0, "d0", "ub_capacity_diversity");
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("ub_capacity_diversity: beta must lie in (0, 1]");
  if (n < 1) throw DomainError("ub_capacity_diversity: n must be positive");
  const int k = support_size(alpha, n);
  const int l = diversity_count(beta, n);
  const auto pmf = overlap_pmf(n, k, l);
  double numerator = 0.0;
  for (int j = pmf.j_min; j <= pmf.j_max(); ++j) {
    numerator += pmf.probability(j) * half_log2_1p(snr * j / l);
  }
  auto b = ratio("ub_diversity", numerator, rd_binary_hamming(alpha, d0).bits);
  if (d0 > alpha) out_of_regime(b, "requires d0 <= alpha");
  return b;
}

CapacityBound lb_capacity_correlated(double alpha, double snr, double d0, double lambda_min, double cover_bits) {
  if (!(lambda_min >= 0.0 && lambda_min <= 1.0)) {
    throw DomainError("lb_capacity_correlated: lambda_min must lie in [0, 1]");
  }
  auto b = lb_capacity_continuous(alpha, snr * lambda_min, d0, cover_bits);
  b.bound = "lb_correlated";
  return b;
}

double deterministic_row_term(double r, double alpha, double snr) {
  const double a = alpha * snr;
  return 1.0 + a * (1.0 - r) + (r * a / (a + 1.0)) * (1.0 + a * (1.0 - r));
}

CapacityBound ub_capacity_deterministic(std::span<const double> r, const SignalModel& model, double snr, double d0,
                                        DeterministicMode mode, std::optional<double> cover_bits) {
  require_valid(model);
  require_snr(snr, "ub_capacity_deterministic");
  if (r.empty()) throw DomainError("ub_capacity_deterministic: need m >= 2 (at least one cross-correlation)");
  for (double ri : r) {
    if (!(ri >= -1.0 && ri <= 1.0)) throw DomainError("ub_capacity_deterministic: r_i must lie in [-1, 1]");
  }
  const double alpha = model.alpha;
  const int m = static_cast<int>(r.size()) + 1;

  double rate = 0.0;
  double cover = 0.0;
  std::string regime_reason;
  if (model.kind == SignalKind::BernoulliDiscrete) {
    const Rate rt = rd_binary_hamming(alpha, d0);
    rate = rt.bits;
    cover = cover_constant_bits(Distortion::Hamming, cover_bits);
    if (!rt.in_regime) regime_reason = rt.reason;
  } else {
    const double d_max = (1.0 - alpha) * model.sigma0_sq + alpha * model.sigma1_sq;
    if (!(d0 > 0.0 && d0 <= d_max)) throw DomainError("ub_capacity_deterministic: d0 outside the distortion range");
    rate = rd_mixture_gaussian(alpha, model.sigma1_sq, model.sigma0_sq, d0);
    cover = cover_constant_bits(Distortion::Squared, cover_bits);
  }

  double numerator = 0.0;
  if (mode == DeterministicMode::AsPrinted) {
    for (double ri : r) numerator += std::log2(deterministic_row_term(ri, alpha, snr));
  } else {
    numerator = half_log2_1p(alpha * snr);
    for (double ri : r) numerator += 0.5 * std::log2(deterministic_row_term(ri, alpha, snr));
    numerator /= m;
  }
  auto b = ratio(mode == DeterministicMode::AsPrinted ? "ub_deterministic_as_printed" : "ub_deterministic",
                 numerator, rate - cover);
  if (!regime_reason.empty()) out_of_regime(b, regime_reason);
  return b;
}

double fir_cross_correlation(int filter_length, double downsample, int n) {
  if (n < 1 || filter_length < 1 || filter_length > n) {
    throw DomainError("fir_cross_correlation: need 1 <= L <= n");
  }
  require_unit_interval(downsample, "downsample", "fir_cross_correlation");
  return std::clamp(filter_length * (1.0 - downsample) / n, 0.0, 1.0);
}

CapacityBound ub_capacity_01_random(double alpha, double beta, double d0, int n) {
  require_alpha(alpha, "ub_capacity_01_random");
  require_unit_interval(d0, "d0", "ub_capacity_01_random");
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("ub_capacity_01_random: beta must lie in (0, 1]");
  if (n < 1) throw DomainError("ub_capacity_01_random: n must be positive");
  const auto pmf = overlap_pmf(n, support_size(alpha, n), diversity_count(beta, n));
  auto b = ratio("ub_01_random", pmf.entropy_bits(), binary_entropy(alpha) - binary_entropy(d0));
  if (!(d0 < alpha)) out_of_regime(b, "requires d0 < alpha");
  return b;
}

CapacityBound ub_capacity_01_contiguous(double alpha, double beta, double d0) {
  require_alpha(alpha, "ub_capacity_01_contiguous");
  require_unit_interval(d0, "d0", "ub_capacity_01_contiguous");
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("ub_capacity_01_contiguous: beta must lie in (0, 1]");
  const double denominator = binary_entropy(alpha) - binary_entropy(d0);
  if (alpha + beta > 1.0) {
    CapacityBound b;
    b.bound = "ub_01_contiguous";
    b.unit = Unit::CapacityDimsPerSensor;
    b.denominator_bits = denominator;
    out_of_regime(b, "requires alpha + beta <= 1");
    return b;
  }
  auto b = ratio("ub_01_contiguous", binary_entropy(alpha + beta), denominator);
  if (!(d0 < alpha)) out_of_regime(b, "requires d0 < alpha");
  return b;
}

BoundResult fano_lb_finite_n(int n, const DiscreteSource& source, double d0, double mi_bits) {
  if (n < 1) throw DomainError("fano_lb_finite_n: n must be positive");
  if (!(mi_bits >= 0.0)) throw DomainError("fano_lb_finite_n: mutual information must be nonnegative");
  require_unit_interval(d0, "d0", "fano_lb_finite_n");
  const double q = source.alphabet_size;
  const double ball = binary_entropy(d0) + d0 * std::log2(q - 1.0);
  const double rate = source.entropy_bits - ball;
  const double denominator = n * std::log2(q) - n * ball;
  if (!(denominator > 0.0)) {
    auto b = probability("fano_lb_finite_n", 0.0);
    out_of_regime(b, "nonpositive denominator; only the trivial bound 0 holds");
    return b;
  }
  auto b = probability("fano_lb_finite_n", (n * rate - mi_bits - 1.0) / denominator);
  if (d0 > (q - 1.0) * source.min_symbol_prob) out_of_regime(b, "requires d0 <= (|X|-1) min P_X");
  return b;
}

BoundResult fano_lb_asymptotic(double rate_bits, double cover_bits, double mi_per_dim_bits) {
  if (!(rate_bits > 0.0)) throw DomainError("fano_lb_asymptotic: rate must be positive");
  auto b = probability("fano_lb_asymptotic", (rate_bits - cover_bits - mi_per_dim_bits) / rate_bits);
  b.note = "o(1) term omitted";
  return b;
}

BoundResult fano_lb_exact_recovery(int n, double entropy_bits, double mi_bits) {
  if (n < 1) throw DomainError("fano_lb_exact_recovery: n must be positive");
  if (!(entropy_bits > 0.0)) throw DomainError("fano_lb_exact_recovery: entropy must be positive");
  auto b = probability("fano_lb_exact_recovery", (entropy_bits - mi_bits / n - 1.0 / n) / entropy_bits);
  b.note = "o(1) terms omitted";
  return b;
}

double achievable_error_exponent(int n, int m, double snr, double d0, const DiscreteSource& source) {
  if (n < 1 || m < 1) throw DomainError("achievable_error_ub: n and m must be positive");
  require_snr(snr, "achievable_error_ub");
  require_unit_interval(d0, "d0", "achievable_error_ub");
  const double per_dim = source.entropy_bits - d0 * std::log2(source.alphabet_size - 1.0) - xlog2inv(d0);
  return -0.5 * m * std::log1p(snr * d0 / 2.0) / std::numbers::ln2 + n * per_dim;
}

BoundResult achievable_error_ub(int n, int m, double snr, double d0, const DiscreteSource& source) {
  const double exponent = achievable_error_exponent(n, m, snr, d0, source);
  BoundResult b;
  b.bound = "achievable_error_ub";
  b.unit = Unit::Probability;
  if (exponent >= 0.0) {
    b.value = 1.0;
    b.clamped = exponent > 0.0;
    b.note = "vacuous";
  } else {
    b.value = std::exp2(exponent);
  }
  if (d0 > source.min_symbol_prob) out_of_regime(b, "requires d0 <= min P_X");
  return b;
}

BoundResult sign_pattern_error_lb(int n, double entropy_u_bits, double mi_u_bits) {
  if (n < 1) throw DomainError("sign_pattern_error_lb: n must be positive");
  if (!(entropy_u_bits >= 0.0)) throw DomainError("sign_pattern_error_lb: entropy must be nonnegative");
  return probability("sign_pattern_error_lb", (entropy_u_bits - mi_u_bits - 1.0) / (n * std::log2(3.0)));
}

double sign_pattern_mi_upper(double mi_x_bits, double mi_x_given_u_lower_bits) {
  return std::max(0.0, mi_x_bits - std::max(0.0, mi_x_given_u_lower_bits));
}

double default_complexity_c2() { return 50.0 * 4.0 * (2.0 * std::numbers::ln2 + 4.0); }

SensorComparison min_sensors_comparison(int n, double alpha, double d0, double snr, double epsilon, double c1,
                                        double c2, Distortion distortion, std::optional<double> cover_bits) {
  require_alpha(alpha, "min_sensors_comparison");
  require_snr(snr, "min_sensors_comparison");
  if (n < 2) throw DomainError("min_sensors_comparison: n must be at least 2");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("min_sensors_comparison: epsilon must lie in (0, 1]");
  if (!(d0 > 0.0)) throw DomainError("min_sensors_comparison: d0 must be positive");

  double rate = 0.0;
  std::string regime_reason;
  if (distortion == Distortion::Hamming) {
    const Rate rt = rd_binary_hamming(alpha, std::min(d0, 1.0));
    rate = rt.bits;
    if (!(d0 <= std::min(alpha, 1.0 - alpha))) regime_reason = "requires 0 < d0 <= min P_X";
  } else {
    if (d0 > alpha) throw DomainError("min_sensors_comparison: d0 outside the distortion range");
    rate = rd_mixture_gaussian(alpha, 1.0, 0.0, d0);
  }
  const double cover = cover_constant_bits(distortion, cover_bits);

  SensorComparison out;
  out.ours.bound = "min_sensors_ours";
  out.ours.unit = Unit::SensorCount;
  const double numerator = 2.0 * (-std::log2(epsilon) + n * (rate - cover));
  const double denominator = std::log1p(d0 * snr / 2.0) / std::numbers::ln2;
  if (denominator > 0.0) {
    out.ours.value = std::max(0.0, numerator / denominator);
    out.ours.clamped = numerator < 0.0;
  }
  if (!regime_reason.empty()) out_of_regime(out.ours, regime_reason);

  out.theirs.bound = "min_sensors_complexity_regularized";
  out.theirs.unit = Unit::SensorCount;
  out.theirs.value = c1 * c2 * alpha * n * std::log(static_cast<double>(n)) / (d0 * epsilon);

  out.order_ours = n * binary_entropy(alpha);
  out.order_theirs = alpha * n * std::log2(static_cast<double>(n));
  return out;
}

double sensor_order_crossing(int n) {
  if (n < 5) throw DomainError("sensor_order_crossing: n must be at least 5");
  const double log2n = std::log2(static_cast<double>(n));
  auto gap = [&](double a) { return binary_entropy(a) - a * log2n; };
  // gap > 0 at 1/n and < 0 at 1/2; gap is concave with gap(0) = 0, so the root is unique.
  double lo = 1.0 / n;
  double hi = 0.5;
  for (int it = 0; it < 200 && hi / lo > 1.0 + 1e-15; ++it) {
    const double mid = std::sqrt(lo * hi);
    (gap(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

}  // namespace sensecap
