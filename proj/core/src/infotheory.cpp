#include "sensecap/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

namespace sensecap {

namespace {

// x log2(1/x) with the 0 log 0 = 0 convention.
double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("binary_entropy: p must lie in [0, 1], got " + std::to_string(p));
  }
  if (p == 0.0 || p == 1.0) return 0.0;
  // Symmetric evaluation so h2(p) == h2(1 - p) bit-for-bit.
  const double q = std::min(p, 1.0 - p);
  // log1p keeps accuracy for tiny q.
  return -q * std::log2(q) - (1.0 - q) * std::log1p(-q) / std::numbers::ln2;
}

double entropy_pmf(std::span<const double> pmf) {
  double total = 0.0;
  for (double p : pmf) {
    if (!(p >= 0.0)) throw DomainError("entropy_pmf: negative or NaN probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw DomainError("entropy_pmf: probabilities sum to " + std::to_string(total) + ", not 1");
  }
  double h = 0.0;
  for (double p : pmf) h += plogp(p);
  return h;
}

double log2_binomial(int n, int r) {
  if (n < 0 || r < 0 || r > n) throw DomainError("log2_binomial: need 0 <= r <= n");
  return (std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0)) / std::numbers::ln2;
}

double OverlapDistribution::probability(int j) const {
  if (j < j_min || j > j_max()) return 0.0;
  return pmf[static_cast<std::size_t>(j - j_min)];
}

double OverlapDistribution::mean() const {
  double mu = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) mu += pmf[i] * (j_min + static_cast<double>(i));
  return mu;
}

namespace {

constexpr int kExactOverlapMaxN = 50;

// Exact for n <= 62.
std::uint64_t binomial_u64(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t c = 1;
  for (int i = 1; i <= r; ++i) c = c * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return c;
}

}  // namespace

OverlapDistribution overlap_pmf(int n, int k, int l) {
  if (n < 1 || k < 1 || l < 1 || k > n || l > n) {
    throw DomainError("overlap_pmf: need 1 <= k, l <= n");
  }
  OverlapDistribution d;
  d.n = n;
  d.k = k;
  d.l = l;
  d.j_min = std::max(0, k + l - n);
  const int j_max = std::min(k, l);

  if (n <= kExactOverlapMaxN) {
    // Exact integer counts: C(k,j) C(n-k,l-j) / C(n,l), each below 2^53.
    const double total = static_cast<double>(binomial_u64(n, l));
    for (int j = d.j_min; j <= j_max; ++j) {
      d.pmf.push_back(static_cast<double>(binomial_u64(k, j) * binomial_u64(n - k, l - j)) / total);
    }
    return d;
  }

  // log C(k,j) + log C(n-k, l-j); the common log C(n,l) cancels in the normalization.
  auto lg = [](double x) { return std::lgamma(x + 1.0); };
  std::vector<double> logw;
  logw.reserve(static_cast<std::size_t>(j_max - d.j_min + 1));
  for (int j = d.j_min; j <= j_max; ++j) {
    logw.push_back(lg(k) - lg(j) - lg(k - j) + lg(n - k) - lg(l - j) - lg(n - k - l + j));
  }
  const double peak = *std::max_element(logw.begin(), logw.end());
  d.pmf.resize(logw.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logw.size(); ++i) {
    d.pmf[i] = std::exp(logw[i] - peak);
    total += d.pmf[i];
  }
  for (double& p : d.pmf) p /= total;
  return d;
}

Rate rd_binary_hamming(double alpha, double d0) {
  if (!(alpha > 0.0 && alpha <= 0.5)) throw DomainError("rd_binary_hamming: alpha must lie in (0, 1/2]");
  if (!(d0 >= 0.0 && d0 <= 1.0)) throw DomainError("rd_binary_hamming: d0 must lie in [0, 1]");
  Rate r;
  if (d0 >= alpha) {
    // h2(alpha) - h2(d0) is only the rate-distortion function up to d0 = alpha,
    // where it reaches zero.
    r.bits = 0.0;
    if (d0 > alpha) {
      r.in_regime = false;
      r.reason = "Hamming rate-distortion closed form requires d0 <= alpha";
    }
    return r;
  }
  r.bits = binary_entropy(alpha) - binary_entropy(d0);
  return r;
}

double rd_mixture_gaussian(double alpha, double sigma1_sq, double sigma0_sq, double distortion) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("rd_mixture_gaussian: alpha must lie in (0, 1]");
  if (!(sigma1_sq > 0.0) || !(sigma0_sq >= 0.0)) throw DomainError("rd_mixture_gaussian: bad variances");
  const double d_max = (1.0 - alpha) * sigma0_sq + alpha * sigma1_sq;
  if (!(distortion > 0.0 && distortion <= d_max)) {
    throw DomainError("rd_mixture_gaussian: need 0 < D <= (1-alpha) sigma0^2 + alpha sigma1^2");
  }
  const double h = binary_entropy(alpha);
  if (sigma0_sq == 0.0) return h + 0.5 * alpha * std::log2(alpha * sigma1_sq / distortion);
  if (distortion < sigma0_sq) {
    return h + 0.5 * (1.0 - alpha) * std::log2(sigma0_sq / distortion) +
           0.5 * alpha * std::log2(sigma1_sq / distortion);
  }
  return h + 0.5 * alpha * std::log2(alpha * sigma1_sq / (distortion - (1.0 - alpha) * sigma0_sq));
}

double cover_constant_bits(Distortion distortion, std::optional<double> override_bits) {
  if (override_bits) return *override_bits;
  return distortion == Distortion::Squared ? kDefaultCoverBits : 0.0;
}

HammingBallSize hamming_ball_log_size(int n, double d0, int alphabet_size) {
  if (n < 1) throw DomainError("hamming_ball_log_size: n must be positive");
  if (!(d0 >= 0.0 && d0 <= 1.0)) throw DomainError("hamming_ball_log_size: d0 must lie in [0, 1]");
  if (alphabet_size < 2) throw DomainError("hamming_ball_log_size: alphabet size must be >= 2");
  const int radius = static_cast<int>(std::floor(d0 * n + 1e-9));
  const double per_symbol = std::log2(static_cast<double>(alphabet_size - 1));
  HammingBallSize out;
  out.exact_bits = log2_binomial(n, radius) + radius * per_symbol;
  out.entropy_bound_bits = n * (binary_entropy(d0) + d0 * per_symbol);
  return out;
}

DiscreteSource DiscreteSource::bernoulli(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("DiscreteSource::bernoulli: alpha must lie in (0, 1)");
  return {binary_entropy(alpha), 2, std::min(alpha, 1.0 - alpha)};
}

DiscreteSource DiscreteSource::sparse_uniform(double alpha, int alphabet_size) {
  if (alphabet_size < 2) throw DomainError("DiscreteSource::sparse_uniform: alphabet size must be >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("DiscreteSource::sparse_uniform: alpha must lie in (0, 1)");
  const double q1 = alphabet_size - 1.0;
  return {binary_entropy(alpha) + alpha * std::log2(q1), alphabet_size, std::min(1.0 - alpha, alpha / q1)};
}

}  // namespace sensecap
