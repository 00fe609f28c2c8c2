#include <doctest.h>

#include <cmath>
#include <cstring>

#include "oracles.hpp"
#include "sensecap/bounds.hpp"
#include "sensecap/simulator.hpp"

using namespace sensecap;
using doctest::Approx;

TEST_CASE("sample_signal") {
  const auto x = sample_signal(SignalModel::bernoulli(0.5), 100000, 1);
  CHECK(std::abs(x.mean() - 0.5) <= 0.01);
  CHECK(((x.array() == 0.0) || (x.array() == 1.0)).all());
  const auto s = sample_signal(SignalModel::sparse_gaussian(0.1), 100000, 2);
  CHECK(std::abs((s.array() != 0.0).cast<double>().mean() - 0.1) <= 0.01);
  CHECK(sample_signal(SignalModel::bernoulli(0.3), 50, 3) == sample_signal(SignalModel::bernoulli(0.3), 50, 3));
  CHECK_THROWS_AS(sample_signal(SignalModel::bernoulli(0.0), 5, 1), DomainError);
}

TEST_CASE("observe") {
  const Eigen::MatrixXd g = Eigen::MatrixXd::Identity(100000, 1);
  const Eigen::VectorXd x = Eigen::VectorXd::Ones(1);
  const auto y = observe(g, x, 0.0, 4);
  const double mean = y.mean();
  const double var = (y.array() - mean).square().sum() / (y.size() - 1);
  CHECK(std::abs(var - 1.0) <= 0.02);
  CHECK(observe(g, x, 2.0, 5) == observe(g, x, 2.0, 5));
  CHECK_THROWS_AS(observe(Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Ones(2), 1.0, 0), DomainError);
}

TEST_CASE("observe is unbiased") {
  oracle::Gen gen(51);
  Eigen::MatrixXd g = gen.gaussian(4, 6);
  g.rowwise().normalize();
  const Eigen::VectorXd x = sample_signal(SignalModel::bernoulli(0.5), 6, 9);
  const double snr = 7.0;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(4);
  const int draws = 10000;
  for (int t = 0; t < draws; ++t) sum += observe(g, x, snr, static_cast<std::uint64_t>(t));
  const Eigen::VectorXd expected = std::sqrt(snr) * g * x;
  for (int i = 0; i < 4; ++i) CHECK(std::abs(sum[i] / draws - expected[i]) <= 3.0 / std::sqrt(double(draws)));
}

TEST_CASE("exhaustive ML decoding") {
  SUBCASE("identity sensing at high SNR recovers the signal") {
    const auto x = sample_signal(SignalModel::bernoulli(0.5), 10, 6);
    const Eigen::MatrixXd g = Eigen::MatrixXd::Identity(10, 10);
    CHECK(ml_decode_exhaustive(observe(g, x, 1e6, 7), g, 1e6) == x);
  }
  SUBCASE("noise-free observation returns the generating candidate") {
    oracle::Gen gen(52);
    for (int t = 0; t < 50; ++t) {
      Eigen::MatrixXd g = gen.gaussian(8, 10);
      g.rowwise().normalize();
      const auto z = sample_signal(SignalModel::bernoulli(0.4), 10, static_cast<std::uint64_t>(t));
      CHECK(ml_decode_exhaustive(std::sqrt(3.0) * g * z, g, 3.0) == z);
    }
  }
  SUBCASE("matches a brute-force search") {
    oracle::Gen gen(53);
    for (int t = 0; t < 100; ++t) {
      const int m = gen.integer(1, 6);
      Eigen::MatrixXd g = gen.gaussian(m, 4);
      g.rowwise().normalize();
      const double snr = gen.log_uniform(0.1, 100.0);
      const auto x = sample_signal(SignalModel::bernoulli(0.5), 4, static_cast<std::uint64_t>(t));
      const auto y = observe(g, x, snr, static_cast<std::uint64_t>(1000 + t));
      REQUIRE(ml_decode_exhaustive(y, g, snr) == oracle::brute_force_ml(y, g, snr));
    }
    for (int t = 0; t < 20; ++t) {
      Eigen::MatrixXd g = gen.gaussian(12, 10);
      g.rowwise().normalize();
      const auto x = sample_signal(SignalModel::bernoulli(0.3), 10, static_cast<std::uint64_t>(t));
      const auto y = observe(g, x, 5.0, static_cast<std::uint64_t>(2000 + t));
      REQUIRE(ml_decode_exhaustive(y, g, 5.0) == oracle::brute_force_ml(y, g, 5.0));
    }
  }
  SUBCASE("ties go to the lexicographically smallest candidate") {
    Eigen::MatrixXd g(1, 2);
    g << M_SQRT1_2, M_SQRT1_2;
    const double snr = 4.0;
    Eigen::VectorXd y(1);
    y << std::sqrt(snr) * M_SQRT1_2;
    Eigen::VectorXd expected(2);
    expected << 0.0, 1.0;
    CHECK(ml_decode_exhaustive(y, g, snr) == expected);
    CHECK(oracle::brute_force_ml(y, g, snr) == expected);
    CHECK(ml_decode_exhaustive(y, g, 0.0) == Eigen::VectorXd::Zero(2));
  }
  CHECK_THROWS_AS(ml_decode_exhaustive(Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Zero(2, 21), 1.0), BudgetExceeded);
}

TEST_CASE("threshold decoder") {
  const Eigen::MatrixXd g = Eigen::MatrixXd::Identity(5, 5);
  Eigen::VectorXd x(5);
  x << 1, 0, 1, 1, 0;
  CHECK(threshold_decode(std::sqrt(100.0) * x, g, 100.0) == x);
  CHECK(threshold_decode(x, g, 0.0) == Eigen::VectorXd::Zero(5));
}

TEST_CASE("error threshold and Hamming distance") {
  CHECK(error_threshold(8, 0.0) == 1);
  CHECK(error_threshold(12, 1.0 / 12) == 1);
  CHECK(error_threshold(16, 0.25) == 4);
  CHECK(error_threshold(10, 0.15) == 2);
  Eigen::VectorXd a(4), b(4);
  a << 1, 0, 1, 0;
  b << 1, 1, 0, 0;
  CHECK(hamming_distance(a, b) == 2);
}

TEST_CASE("Wilson interval") {
  const auto zero = wilson_interval(0, 10);
  const double z2 = 1.959963984540054 * 1.959963984540054;
  CHECK(zero.low == 0.0);
  CHECK(zero.high == Approx(z2 / (10 + z2)).epsilon(1e-14));
  const auto all = wilson_interval(10, 10);
  CHECK(all.high == 1.0);
  CHECK(all.low == Approx(10 / (10 + z2)).epsilon(1e-14));
  const auto half = wilson_interval(50, 100);
  CHECK(half.low == Approx(0.4038).epsilon(1e-3));
  CHECK(half.high == Approx(0.5962).epsilon(1e-3));
  oracle::Gen gen(54);
  for (int t = 0; t < 5000; ++t) {
    const long long n = gen.integer(1, 100000);
    const long long e = gen.integer(0, static_cast<int>(n));
    const auto ci = wilson_interval(e, n);
    const double p = static_cast<double>(e) / n;
    REQUIRE(0.0 <= ci.low);
    REQUIRE(ci.low <= p);
    REQUIRE(p <= ci.high);
    REQUIRE(ci.high <= 1.0);
  }
  CHECK_THROWS_AS(wilson_interval(3, 2), DomainError);
}

TEST_CASE("sandwich verdict") {
  CHECK(sandwich_verdict(0.1, 0.2, 0.15, 0.5) == Verdict::Consistent);
  CHECK(sandwich_verdict(0.1, 0.2, 0.3, 0.5) == Verdict::FanoViolated);
  CHECK(sandwich_verdict(0.6, 0.7, 0.3, 0.5) == Verdict::UnionViolated);
  CHECK(to_string(Verdict::FanoViolated) == "FanoViolated");
}

TEST_CASE("no information: SNR = 0 forces errors") {
  const Scenario s{8, 4, 0.0, 0.0, Distortion::Hamming};
  const auto r = estimate_error_probability(s, SignalModel::bernoulli(0.5), EnsembleSpec::gaussian(), 2000, 1);
  CHECK(r.p_hat > 0.98);
  CHECK(r.mean_mi_bits == 0.0);
  CHECK(r.fano_lb == Approx(1.0 - 1.0 / 8));
  CHECK(r.ci_high >= r.fano_lb);
  CHECK(r.verdict == Verdict::Consistent);
}

TEST_CASE("report invariants and determinism") {
  const Scenario s{10, 20, 4.0, 0.1, Distortion::Hamming};
  const auto model = SignalModel::bernoulli(0.3);
  const auto r = estimate_error_probability(s, model, EnsembleSpec::gaussian(), 500, 77);
  CHECK(r.trials == 500);
  CHECK(0.0 <= r.ci_low);
  CHECK(r.ci_low <= r.p_hat);
  CHECK(r.p_hat <= r.ci_high);
  CHECK(r.ci_high <= 1.0);
  CHECK((r.verdict == Verdict::Consistent) == (r.ci_high >= r.fano_lb && r.ci_low <= r.union_ub));
  CHECK(r.scenario == s);
  CHECK(r.model == model);
  CHECK(r.seed == 77);
  CHECK(estimate_error_probability(s, model, EnsembleSpec::gaussian(), 500, 77) == r);
  CHECK_FALSE(estimate_error_probability(s, model, EnsembleSpec::gaussian(), 500, 78) == r);
}

TEST_CASE("reports do not depend on the thread count") {
  const Scenario s{10, 6, 10.0, 0.1, Distortion::Hamming};
  const auto model = SignalModel::bernoulli(0.5);
  SimulationOptions opt;
  const auto one = estimate_error_probability(s, model, EnsembleSpec::gaussian(), 999, 5, opt);
  for (int threads : {2, 3, 8}) {
    opt.threads = threads;
    const auto many = estimate_error_probability(s, model, EnsembleSpec::gaussian(), 999, 5, opt);
    CHECK(many == one);
    CHECK(std::memcmp(&many.mean_mi_bits, &one.mean_mi_bits, sizeof(double)) == 0);
  }
}

TEST_CASE("simulation preconditions") {
  const auto model = SignalModel::bernoulli(0.5);
  CHECK_THROWS_AS(estimate_error_probability(Scenario{21, 4, 1.0, 0.0, Distortion::Hamming}, model,
                                             EnsembleSpec::gaussian(), 1, 1),
                  BudgetExceeded);
  CHECK_THROWS_AS(estimate_error_probability(Scenario{8, 4, 1.0, 0.01, Distortion::Squared},
                                             SignalModel::sparse_gaussian(0.1), EnsembleSpec::gaussian(), 1, 1),
                  DomainError);
  CHECK_THROWS_AS(estimate_error_probability(Scenario{8, 4, 1.0, 0.0, Distortion::Hamming}, model,
                                             EnsembleSpec::gaussian(), 0, 1),
                  DomainError);
}

TEST_CASE("fixed-matrix mode reuses one matrix") {
  const Scenario s{8, 5, 10.0, 0.0, Distortion::Hamming};
  SimulationOptions opt;
  opt.fixed_matrix = true;
  const auto r = estimate_error_probability(s, SignalModel::bernoulli(0.5), EnsembleSpec::toeplitz_fir(3, 0.5), 300, 3, opt);
  const auto g = sample_matrix(EnsembleSpec::toeplitz_fir(3, 0.5), 5, 8, 3);
  CHECK(r.mean_mi_bits == Approx(mi_logdet_gaussian(g, 0.5, 10.0)).epsilon(1e-12));
}

TEST_CASE("exhaustive ML is never worse than thresholding") {
  for (int n : {6, 10}) {
    for (double snr : {1.0, 10.0}) {
      for (int m : {n / 2, 2 * n}) {
        const Scenario s{n, m, snr, 1.0 / n, Distortion::Hamming};
        SimulationOptions ml;
        SimulationOptions th;
        th.decoder = Decoder::Threshold;
        const auto a = estimate_error_probability(s, SignalModel::bernoulli(0.5), EnsembleSpec::gaussian(), 1500, 9, ml);
        const auto b = estimate_error_probability(s, SignalModel::bernoulli(0.5), EnsembleSpec::gaussian(), 1500, 9, th);
        CHECK(a.ci_low <= b.ci_high);
      }
    }
  }
}

TEST_CASE("capacity sweep") {
  const Scenario tmpl{1, 1, 10.0, 0.125, Distortion::Hamming};
  const auto model = SignalModel::bernoulli(0.5);
  CHECK(run_capacity_sweep(tmpl, model, EnsembleSpec::gaussian(), {}, std::vector<int>{8}, 10, 1).empty());
  const std::vector<int> too_big{8, 24};
  const std::vector<double> c{1.0};
  CHECK_THROWS_AS(run_capacity_sweep(tmpl, model, EnsembleSpec::gaussian(), c, too_big, 10, 1), BudgetExceeded);

  // Far above the upper bound the error rate stays high at every n.
  const double ub = *ub_capacity_discrete_gaussian(0.5, 10.0, 0.125).value;
  const std::vector<double> high{8.0 * ub};
  const std::vector<int> ns{8, 12, 16};
  const auto rows = run_capacity_sweep(tmpl, model, EnsembleSpec::gaussian(), high, ns, 300, 2);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK(row.m == std::max(1, static_cast<int>(std::lround(row.n / row.c))));
    CHECK(row.report.p_hat > 0.5);
  }
}

TEST_CASE("nonincreasing_within_ci") {
  SimulationReport a, b;
  a.p_hat = 0.3;
  a.ci_low = 0.25;
  a.ci_high = 0.35;
  b.p_hat = 0.32;
  b.ci_low = 0.3;
  b.ci_high = 0.34;
  const std::vector<SimulationReport> overlap{a, b};
  CHECK(nonincreasing_within_ci(overlap));
  b.p_hat = 0.5;
  b.ci_low = 0.45;
  b.ci_high = 0.55;
  const std::vector<SimulationReport> rising{a, b};
  CHECK_FALSE(nonincreasing_within_ci(rising));
}
