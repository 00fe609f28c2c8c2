#pragma once

#include <span>
#include <string>
#include <vector>

#include "sensecap/models.hpp"

// Entropies, closed-form rate-distortion functions and combinatorial
// distributions. Everything is in bits.
namespace sensecap {

/// h2(p) = -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0. Throws DomainError outside [0, 1].
double binary_entropy(double p);

/// Shannon entropy of a probability vector in bits. Entries must be
/// nonnegative and sum to 1 within 1e-9.
double entropy_pmf(std::span<const double> pmf);

/// Hypergeometric distribution of the overlap J between a k-subset and an
/// independent uniformly random l-subset of n positions.
struct OverlapDistribution {
  int n = 0;
  int k = 0;
  int l = 0;
  int j_min = 0;            // max(0, k + l - n)
  std::vector<double> pmf;  // pmf[i] = Pr(J = j_min + i)

  int j_max() const { return j_min + static_cast<int>(pmf.size()) - 1; }
  double probability(int j) const;
  double mean() const;
  double entropy_bits() const { return entropy_pmf(pmf); }
};

/// Pr(j) = C(k,j) C(n-k,l-j) / C(n,l). Up to n = 50 the counts are exact
/// integers and each entry is one correctly rounded division; beyond that the
/// weights go through log-gamma and are normalized to sum to one.
/// Requires 1 <= k, l <= n.
OverlapDistribution overlap_pmf(int n, int k, int l);

/// log2 C(n, r) via log-gamma.
double log2_binomial(int n, int r);

/// A rate in bits together with a regime flag.
struct Rate {
  double bits = 0.0;
  bool in_regime = true;
  std::string reason;
};

/// R(d0) = h2(alpha) - h2(d0) for a Bernoulli(alpha) source under Hamming
/// distortion. Exact for 0 <= d0 <= alpha <= 1/2; flagged out of regime otherwise.
Rate rd_binary_hamming(double alpha, double d0);

/// Rate-distortion function of a two-component zero-mean Gaussian mixture
/// (weight alpha on variance sigma1_sq, 1 - alpha on sigma0_sq) under squared
/// error, evaluated in closed form:
///
///   D <  s0:  H(a) + (1-a)/2 log(s0/D) + a/2 log(s1/D)
///   D >= s0:  H(a) + a/2 log(a s1 / (D - (1-a) s0))
///   s0 == 0:  H(a) + a/2 log(a s1 / D)
///
/// Note the value at the maximal distortion is H(a), not zero.
/// Requires 0 < alpha <= 1 and 0 < D <= (1-a) s0 + a s1.
double rd_mixture_gaussian(double alpha, double sigma1_sq, double sigma0_sq, double distortion);

/// Per-coordinate log of the neighbor count of a rate-distortion cover point.
/// One bit for squared distortion, zero for the finite-n Hamming bounds.
/// A caller-provided override wins when set.
double cover_constant_bits(Distortion distortion, std::optional<double> override_bits = std::nullopt);

inline constexpr double kDefaultCoverBits = 1.0;

struct HammingBallSize {
  double exact_bits = 0.0;           // log2( C(n, r) (q-1)^r ),  r = floor(d0 n)
  double entropy_bound_bits = 0.0;   // n (h2(d0) + d0 log2(q-1))
};

/// Log-size of the Hamming sphere of radius d0 n over an alphabet of size q,
/// and its entropy upper bound.
HammingBallSize hamming_ball_log_size(int n, double d0, int alphabet_size);

/// Finite-alphabet source summary used by the discrete bounds.
struct DiscreteSource {
  double entropy_bits = 1.0;
  int alphabet_size = 2;
  double min_symbol_prob = 0.5;

  /// Bernoulli(alpha) on {0, 1}.
  static DiscreteSource bernoulli(double alpha);
  /// Zero with probability 1 - alpha, otherwise uniform over q - 1 nonzero symbols.
  static DiscreteSource sparse_uniform(double alpha, int alphabet_size);
};

}  // namespace sensecap
