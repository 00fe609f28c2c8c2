#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sensecap/bounds.hpp"

using namespace sensecap;
using doctest::Approx;

namespace {

// Natural-log evaluations, independent of the library's base-2 code.
double ln_h2(double p) { return (p <= 0.0 || p >= 1.0) ? 0.0 : -p * std::log(p) - (1 - p) * std::log(1 - p); }

}  // namespace

TEST_CASE("ub_capacity_discrete_gaussian") {
  const auto b = ub_capacity_discrete_gaussian(0.5, 10.0, 0.0);
  REQUIRE(b.value);
  CHECK(*b.value == Approx(oracle::kHalfLog2Six).epsilon(1e-14));
  CHECK(b.bound == "ub_discrete_gaussian");
  CHECK(b.unit == Unit::CapacityDimsPerSensor);
  CHECK(b.valid);
  CHECK(*ub_capacity_discrete_gaussian(0.3, 0.0, 0.1).value == 0.0);

  const auto out = ub_capacity_discrete_gaussian(0.1, 10.0, 0.2);
  CHECK_FALSE(out.valid);
  CHECK_FALSE(out.reason.empty());
  CHECK(ub_capacity_discrete_gaussian(0.1, 10.0, 0.1).unbounded());
}

TEST_CASE("ub_capacity_discrete_gaussian vanishes with sparsity at the predicted rate") {
  const double snr = 100.0;
  const auto b = ub_capacity_discrete_gaussian(1e-12, snr, 0.0);
  const double ratio = *b.value * std::log2(1e12) / (snr / (2.0 * std::log(2.0)));
  CHECK(std::abs(ratio - 1.0) <= 0.05);
  double prev = INFINITY;
  for (double a = 1e-2; a >= 1e-12; a /= 10.0) {
    const double v = *ub_capacity_discrete_gaussian(a, snr, 0.0).value;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("ub_capacity_continuous_gaussian") {
  CHECK(*ub_capacity_continuous_gaussian(0.5, 10.0, 0.25).value == Approx(oracle::kHalfLog2Six).epsilon(1e-14));
  const auto b = ub_capacity_continuous_gaussian(0.5, 10.0, 0.125);
  CHECK(b.denominator_bits == Approx(1.25).epsilon(1e-15));
  CHECK(*b.value == Approx(oracle::kUbContinuous_05_10_0125).epsilon(1e-14));
  // The denominator is the strict-sparse rate-distortion function at 2 d0.
  CHECK(b.denominator_bits == Approx(rd_mixture_gaussian(0.5, 1.0, 0.0, 0.25)).epsilon(1e-15));
  CHECK(*ub_capacity_continuous_gaussian(0.2, 0.0, 0.05).value == 0.0);
  CHECK_FALSE(ub_capacity_continuous_gaussian(0.2, 10.0, 0.15).valid);
}

TEST_CASE("lb_capacity_discrete") {
  CHECK(*lb_capacity_discrete(0.5, 2, 10.0, 0.1).value == Approx(oracle::kLbDiscrete_05_10_01).epsilon(1e-13));
  CHECK(*lb_capacity_discrete(0.3, 2, 0.0, 0.1).value == 0.0);
  CHECK_FALSE(lb_capacity_discrete(0.1, 2, 10.0, 0.2).valid);
  CHECK_FALSE(lb_capacity_discrete(0.1, 2, 10.0, 0.0).valid);
  // Ternary sparse-uniform source: H = h2(a) + a, |X| - 1 = 2.
  const double a = 0.4;
  const double d0 = 0.1;
  const double expected = 0.5 * std::log2(1 + 10 * d0 / 2) / (oracle::h2(a) + a - d0 - d0 * std::log2(1 / d0));
  CHECK(*lb_capacity_discrete(a, 3, 10.0, d0).value == Approx(expected).epsilon(1e-13));
}

TEST_CASE("lb_capacity_continuous") {
  const auto b = lb_capacity_continuous(0.5, 10.0, 0.125);
  CHECK(*b.value == Approx(oracle::kLbContinuous_05_10_0125).epsilon(1e-14));
  CHECK(b.note.find("2*d0") != std::string::npos);
  CHECK(*lb_capacity_continuous(0.5, 0.0, 0.125).value == 0.0);
  const auto dead = lb_capacity_continuous(0.1, 10.0, 0.05);  // R(d0) <= K
  CHECK(dead.unbounded());
  CHECK_FALSE(dead.valid);
}

TEST_CASE("lb_capacity_correlated") {
  CHECK(*lb_capacity_correlated(0.5, 10.0, 0.125, 0.5).value == Approx(oracle::kLbCorrelatedHalf).epsilon(1e-13));
  CHECK(*lb_capacity_correlated(0.5, 10.0, 0.125, 0.0).value == 0.0);
  CHECK_THROWS_AS(lb_capacity_correlated(0.5, 10.0, 0.125, 1.5), DomainError);
  CHECK_THROWS_AS(lb_capacity_correlated(0.5, 10.0, 0.125, -0.1), DomainError);
}

TEST_CASE("ub_capacity_diversity") {
  const double a = 0.1;
  const double snr = 10.0;
  const int n = 200;
  const auto single = ub_capacity_diversity(a, 1.0 / n, snr, 0.0, n);
  CHECK(single.numerator_bits == Approx(0.5 * a * std::log2(1 + snr)).epsilon(1e-12));
  const auto full = ub_capacity_diversity(a, 1.0, snr, 0.0, n);
  CHECK(full.numerator_bits == Approx(0.5 * std::log2(1 + a * snr)).epsilon(1e-14));
}

TEST_CASE("deterministic-matrix bound") {
  CHECK(deterministic_row_term(0.25, 0.5, 10.0) == Approx(oracle::kDeterministicTerm).epsilon(1e-14));
  CHECK(deterministic_row_term(0.0, 0.5, 10.0) == Approx(6.0).epsilon(1e-15));
  CHECK(fir_cross_correlation(64, 0.0, 256) == 0.25);
  CHECK(fir_cross_correlation(64, 1.0, 256) == 0.0);
  CHECK(fir_cross_correlation(256, 0.0, 256) == 1.0);
  CHECK_THROWS_AS(fir_cross_correlation(300, 0.0, 256), DomainError);

  const std::vector<double> r(7, 0.25);
  const auto model = SignalModel::bernoulli(0.5);
  const auto norm = ub_capacity_deterministic(r, model, 10.0, 0.0, DeterministicMode::Normalized);
  const double expected = (0.5 * std::log2(6.0) + 7 * 0.5 * std::log2(oracle::kDeterministicTerm)) / 8.0;
  CHECK(*norm.value == Approx(expected).epsilon(1e-13));
  const auto printed = ub_capacity_deterministic(r, model, 10.0, 0.0, DeterministicMode::AsPrinted);
  CHECK(printed.bound == "ub_deterministic_as_printed");
  CHECK(*printed.value == Approx(7 * std::log2(oracle::kDeterministicTerm)).epsilon(1e-13));
  // Correlated rows carry less information than independent ones.
  CHECK(*norm.value < *ub_capacity_discrete_gaussian(0.5, 10.0, 0.0).value);
  CHECK_THROWS_AS(ub_capacity_deterministic(std::vector<double>{}, model, 10.0, 0.0), DomainError);
}

TEST_CASE("zero-one ensemble bounds") {
  CHECK(*ub_capacity_01_random(0.5, 0.5, 0.25, 4).value == Approx(oracle::kUb01Random_n4).epsilon(1e-13));
  CHECK(*ub_capacity_01_random(0.1, 1.0, 0.01, 200).value == 0.0);
  CHECK(*ub_capacity_01_contiguous(0.1, 0.2, 0.01).value == Approx(oracle::kUb01Contiguous).epsilon(1e-13));
  CHECK(*ub_capacity_01_contiguous(0.3, 0.7, 0.01).value == 0.0);
  const auto over = ub_capacity_01_contiguous(0.4, 0.7, 0.01);
  CHECK_FALSE(over.valid);
  CHECK(over.unbounded());
}

TEST_CASE("Fano-type probability bounds") {
  const auto bern = DiscreteSource::bernoulli(0.5);
  CHECK(*fano_lb_finite_n(10, bern, 0.0, 0.0).value == Approx(0.9).epsilon(1e-15));
  CHECK(*fano_lb_finite_n(10, bern, 0.1, 2.0).value == Approx(oracle::kFano_10_05_01_2).epsilon(1e-13));
  const auto sat = fano_lb_finite_n(10, bern, 0.1, 100.0);
  CHECK(*sat.value == 0.0);
  CHECK(sat.clamped);

  CHECK(*fano_lb_asymptotic(1.0, 0.0, 0.0).value == 1.0);
  CHECK(*fano_lb_asymptotic(1.5, 1.0, 0.25).value == Approx(1.0 / 6).epsilon(1e-15));
  CHECK(*fano_lb_asymptotic(1.5, 1.0, 0.6).value == 0.0);
  CHECK_THROWS_AS(fano_lb_asymptotic(0.0, 0.0, 0.0), DomainError);

  CHECK(*fano_lb_exact_recovery(10, 1.0, 5.0).value == Approx(0.4).epsilon(1e-15));
  CHECK(*fano_lb_exact_recovery(1000000, 1.0, 0.0).value == Approx(1.0).epsilon(1e-5));
  CHECK(*fano_lb_exact_recovery(10, 1.0, 9.0).value == 0.0);
  CHECK_THROWS_AS(fano_lb_exact_recovery(10, 0.0, 1.0), DomainError);
}

TEST_CASE("achievable error bound") {
  const auto src = DiscreteSource::bernoulli(0.5);
  CHECK(achievable_error_exponent(16, 64, 10.0, 1.0 / 16, src) == Approx(oracle::kAchievableExponent).epsilon(1e-13));
  CHECK(*achievable_error_ub(16, 64, 10.0, 1.0 / 16, src).value == Approx(oracle::kAchievableUb).epsilon(1e-13));
  CHECK(*achievable_error_ub(16, 128, 10.0, 1.0 / 16, src).value < *achievable_error_ub(16, 64, 10.0, 1.0 / 16, src).value);
  const auto vac = achievable_error_ub(16, 2, 10.0, 1.0 / 16, src);
  CHECK(*vac.value == 1.0);
  CHECK(vac.clamped);
  CHECK(*achievable_error_ub(16, 64, 10.0, 0.0, src).value == 1.0);
}

TEST_CASE("sign-pattern bound") {
  const double h = 10 * std::log2(3.0);
  CHECK(*sign_pattern_error_lb(10, h, 0.0).value == Approx((h - 1) / h).epsilon(1e-15));
  CHECK(*sign_pattern_error_lb(10, h, 5.0).value == Approx(oracle::kSignPattern_10_5).epsilon(1e-13));
  CHECK(*sign_pattern_error_lb(10, 3.0, 2.5).value == 0.0);
  CHECK(sign_pattern_mi_upper(5.0) == 5.0);
  CHECK(sign_pattern_mi_upper(5.0, 2.0) == 3.0);
  CHECK(sign_pattern_mi_upper(5.0, -1.0) == 5.0);
}

TEST_CASE("sensor-count comparison") {
  const auto c = min_sensors_comparison(10000, 0.01, 0.001, 10.0, 0.01, 1.0, default_complexity_c2());
  CHECK(c.order_ours == Approx(oracle::kOrderOurs_1e4_001).epsilon(1e-12));
  CHECK(c.order_theirs == Approx(oracle::kOrderTheirs_1e4_001).epsilon(1e-12));
  CHECK(c.order_ours < c.order_theirs);
  CHECK(default_complexity_c2() == Approx(50.0 * 4.0 * (2.0 * std::log(2.0) + 4.0)));

  const auto e1 = min_sensors_comparison(1000, 0.1, 0.05, 10.0, 1.0, 1.0, 1.0);
  const double rate = oracle::h2(0.1) - oracle::h2(0.05);
  CHECK(*e1.ours.value == Approx(2 * 1000 * rate / std::log2(1 + 0.05 * 10 / 2)).epsilon(1e-12));

  double prev = INFINITY;
  for (double snr : {1.0, 3.0, 10.0, 30.0, 100.0}) {
    const double v = *min_sensors_comparison(1000, 0.1, 0.05, snr, 0.1, 1.0, 1.0).ours.value;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("sensor-order crossing") {
  const double x = sensor_order_crossing(10000);
  CHECK(x == Approx(oracle::kOrderCrossing_1e4).epsilon(1e-9));
  CHECK(10000 * oracle::h2(x * 1.001) < x * 1.001 * 10000 * std::log2(10000.0));
  CHECK(10000 * oracle::h2(x * 0.999) > x * 0.999 * 10000 * std::log2(10000.0));
}

// ---------------------------------------------------------------- properties

TEST_CASE("capacity bounds are base invariant") {
  oracle::Gen gen(31);
  for (int t = 0; t < 2000; ++t) {
    const double a = gen.uniform(1e-4, 0.5);
    const double snr = gen.log_uniform(1e-2, 1e3);
    const double d0 = gen.uniform(0.0, a * 0.99);
    const double ln_value = 0.5 * std::log1p(a * snr) / (ln_h2(a) - ln_h2(d0));
    CHECK(*ub_capacity_discrete_gaussian(a, snr, d0).value == Approx(ln_value).epsilon(1e-12));

    const double dc = gen.uniform(1e-4, a / 2);
    const double ln_cont = 0.5 * std::log1p(a * snr) / (ln_h2(a) + a / 2 * std::log(a / (2 * dc)));
    CHECK(*ub_capacity_continuous_gaussian(a, snr, dc).value == Approx(ln_cont).epsilon(1e-12));

    const double dl = gen.uniform(1e-4, a);
    const double ln_lb = 0.5 * std::log1p(snr * dl / 2) / (ln_h2(a) + dl * std::log(dl));
    const auto lb = lb_capacity_discrete(a, 2, snr, dl);
    if (lb.value) CHECK(*lb.value == Approx(ln_lb).epsilon(1e-12));
  }
}

TEST_CASE("diversity numerator obeys Jensen") {
  oracle::Gen gen(32);
  for (int t = 0; t < 1500; ++t) {
    const int n = gen.integer(2, 2000);
    const double a = gen.uniform(0.5 / n, 0.5);
    const double beta = gen.uniform(0.5 / n, 1.0);
    const double snr = gen.log_uniform(1e-2, 1e4);
    const auto b = ub_capacity_diversity(a, beta, snr, 0.0, n);
    const double k_over_n = static_cast<double>(support_size(a, n)) / n;
    REQUIRE(b.numerator_bits <= 0.5 * std::log2(1 + k_over_n * snr) + 1e-12);
  }
}

TEST_CASE("probability outputs stay in [0, 1]") {
  oracle::Gen gen(33);
  for (int t = 0; t < 10000; ++t) {
    const int n = gen.integer(1, 5000);
    const int m = gen.integer(1, 5000);
    const double a = gen.uniform(1e-6, 0.5);
    const double d0 = gen.uniform(0.0, a);
    const double snr = gen.log_uniform(1e-4, 1e6);
    const double mi = gen.uniform(0.0, 2.0 * n);
    const auto src = gen.integer(0, 1) ? DiscreteSource::bernoulli(a) : DiscreteSource::sparse_uniform(a, gen.integer(2, 8));
    for (const BoundResult& b : {fano_lb_finite_n(n, src, d0, mi), achievable_error_ub(n, m, snr, d0, src),
                                 fano_lb_asymptotic(gen.uniform(1e-3, 2.0), gen.uniform(0.0, 1.0), gen.uniform(0.0, 3.0)),
                                 fano_lb_exact_recovery(n, gen.uniform(1e-3, 3.0), mi),
                                 sign_pattern_error_lb(n, gen.uniform(0.0, 2.0 * n), mi)}) {
      REQUIRE(b.value);
      REQUIRE(*b.value >= 0.0);
      REQUIRE(*b.value <= 1.0);
      CHECK(b.unit == Unit::Probability);
    }
  }
}

TEST_CASE("d0 = alpha makes every Hamming-denominator bound Unbounded") {
  oracle::Gen gen(34);
  for (int t = 0; t < 500; ++t) {
    const double a = gen.uniform(1e-3, 0.5);
    const double snr = gen.log_uniform(1e-2, 1e3);
    const int n = gen.integer(10, 400);
    const double beta = gen.uniform(0.01, 1.0 - a);
    for (const CapacityBound& b :
         {ub_capacity_discrete_gaussian(a, snr, a), ub_capacity_diversity(a, beta, snr, a, n),
          ub_capacity_01_random(a, beta, a, n), ub_capacity_01_contiguous(a, beta, a)}) {
      CHECK(b.unbounded());
      CHECK_FALSE(std::isnan(b.denominator_bits));
    }
  }
}

TEST_CASE("consistency identities") {
  oracle::Gen gen(35);
  for (int t = 0; t < 1000; ++t) {
    // The overlap pmf needs an integral support k = alpha n.
    const int n = gen.integer(2, 3000);
    const int k = gen.integer(1, n / 2);
    const double a = static_cast<double>(k) / n;
    const double snr = gen.log_uniform(1e-2, 1e3);
    const double d0 = gen.uniform(0.0, a * 0.99);
    const double full = *ub_capacity_discrete_gaussian(a, snr, d0).value;
    CHECK(std::abs(*ub_capacity_diversity(a, 1.0, snr, d0, n).value - full) <= 1e-12 * std::max(1.0, full));

    const double dc = gen.uniform(1e-4, a * 0.3);
    const auto lb = lb_capacity_continuous(a, snr, dc);
    const auto corr = lb_capacity_correlated(a, snr, dc, 1.0);
    CHECK(lb.value == corr.value);

    const std::vector<double> zeros(static_cast<std::size_t>(gen.integer(1, 50)), 0.0);
    const auto det = ub_capacity_deterministic(zeros, SignalModel::bernoulli(a), snr, d0);
    CHECK(std::abs(*det.value - full) <= 1e-12 * std::max(1.0, full));
    CHECK(*ub_capacity_01_random(a, 1.0, d0, n).value == 0.0);
  }
}

TEST_CASE("full diversity with a rounded support uses k / n") {
  oracle::Gen gen(36);
  for (int t = 0; t < 1000; ++t) {
    const double a = gen.uniform(1e-3, 0.5);
    const double snr = gen.log_uniform(1e-2, 1e3);
    const double d0 = gen.uniform(0.0, a * 0.99);
    const int n = gen.integer(1, 3000);
    const double k = std::max(1.0, std::round(a * n));
    const double want = 0.5 * oracle::log2_(1.0 + snr * k / n) / (oracle::h2(a) - oracle::h2(d0));
    CHECK(*ub_capacity_diversity(a, 1.0, snr, d0, n).value == Approx(want).epsilon(1e-11));
  }
}

TEST_CASE("discrete SNR gap: achievable <= upper bound on the sweep grid") {
  for (double a : {0.1, 0.5}) {
    for (double snr : {1.0, 10.0, 100.0}) {
      const double hi = std::min(a, 1.0 - a);
      for (int i = 1; i <= 200; ++i) {
        const double d0 = hi * i / 201.0;
        const auto lb = lb_capacity_discrete(a, 2, snr, d0);
        const auto ub = ub_capacity_discrete_gaussian(a, snr, d0);
        REQUIRE(lb.valid);
        CHECK(lb.value_or_inf() <= ub.value_or_inf());
      }
    }
  }
}

TEST_CASE("continuous SNR gap at matched distortion") {
  // lb at d0 guarantees distortion 2 d0, so it is compared with ub at 2 d0.
  int violations = 0;
  for (double a : {0.1, 0.5}) {
    for (double snr : {1.0, 10.0, 100.0}) {
      for (int i = 1; i <= 200; ++i) {
        const double target = (a / 2) * i / 200.0;
        const auto ub = ub_capacity_continuous_gaussian(a, snr, target);
        const auto lb = lb_capacity_continuous(a, snr, target / 2);
        if (!lb.valid) continue;
        const bool holds = *lb.value <= ub.value_or_inf();
        if (a == 0.5 && snr == 100.0) {
          violations += !holds;
        } else {
          CHECK(holds);
        }
      }
    }
  }
  // With K = 1 bit the achievable numerator log2(1 + d0 SNR) overtakes the
  // upper bound near alpha/2 at alpha = 0.5, SNR = 100.
  CHECK(violations > 0);
}
