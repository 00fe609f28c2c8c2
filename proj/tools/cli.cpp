#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sensecap/bounds.hpp"
#include "sensecap/ensembles.hpp"
#include "sensecap/figures.hpp"
#include "sensecap/models.hpp"
#include "sensecap/rng.hpp"
#include "sensecap/serialization.hpp"
#include "sensecap/simulator.hpp"

namespace sensecap::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Problem {
  Scenario scenario;
  SignalModel model;
  EnsembleSpec ensemble;
  bool m_given = false;
  int alphabet_size = 2;
  long long trials = 10000;
  std::uint64_t seed = 1;
  int threads = 1;
  Decoder decoder = Decoder::ExhaustiveML;
};

struct ProblemFlags {
  std::optional<std::string> config;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<std::string> model;
  std::optional<double> alpha;
  std::optional<double> sigma1_sq;
  std::optional<double> sigma0_sq;
  std::optional<double> snr;
  std::optional<std::string> snr_db;
  std::optional<double> d0;
  std::optional<std::string> distortion;
  std::optional<std::string> ensemble;
  std::optional<double> beta;
  std::optional<int> filter_length;
  std::optional<double> downsample;
  std::optional<int> alphabet;
  // simulate / validate
  std::optional<long long> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> decoder;
};

void add_problem_options(CLI::App* app, ProblemFlags& f) {
  app->add_option("--config", f.config, "JSON file with scenario/model/ensemble objects (flags take precedence)");
  app->add_option("--n", f.n, "Signal dimension");
  app->add_option("--m", f.m, "Number of sensors");
  app->add_option("--model", f.model, "bernoulli | sparse-gaussian");
  app->add_option("--alpha", f.alpha, "Sparsity ratio in (0, 1/2]");
  app->add_option("--sigma1-sq", f.sigma1_sq, "Active-component variance (sparse-gaussian)");
  app->add_option("--sigma0-sq", f.sigma0_sq, "Inactive-component variance (sparse-gaussian)");
  auto* snr = app->add_option("--snr", f.snr, "Linear SNR");
  auto* snr_db = app->add_option("--snr-db", f.snr_db, "SNR in dB (-inf allowed)");
  snr->excludes(snr_db);
  app->add_option("--d0", f.d0, "Distortion level");
  app->add_option("--distortion", f.distortion, "hamming | squared (default follows the model)");
  app->add_option("--ensemble", f.ensemble,
                  "gaussian | zero-one-random | zero-one-contiguous | toeplitz-fir | correlated | explicit");
  app->add_option("--beta", f.beta, "Diversity ratio in (0, 1]");
  app->add_option("--filter-length", f.filter_length, "Toeplitz filter length L");
  app->add_option("--downsample", f.downsample, "Toeplitz downsampling fraction d in [0, 1]");
  app->add_option("--alphabet", f.alphabet, "Alphabet size for the discrete achievable bound");
}

void add_simulation_options(CLI::App* app, ProblemFlags& f) {
  app->add_option("--trials", f.trials, "Monte Carlo trials per cell");
  app->add_option("--seed", f.seed, "RNG seed");
  app->add_option("--threads", f.threads, "Worker threads (results do not depend on this)");
  app->add_option("--decoder", f.decoder, "ml | threshold");
}

SignalKind model_kind(std::string_view s) {
  if (s == "bernoulli" || s == "BernoulliDiscrete") return SignalKind::BernoulliDiscrete;
  if (s == "sparse-gaussian" || s == "SparseGaussian") return SignalKind::SparseGaussian;
  throw UsageError("unknown model: " + std::string(s));
}

Distortion distortion_kind(std::string_view s) {
  if (s == "hamming" || s == "Hamming") return Distortion::Hamming;
  if (s == "squared" || s == "Squared") return Distortion::Squared;
  throw UsageError("unknown distortion: " + std::string(s));
}

EnsembleKind ensemble_kind(std::string_view s) {
  if (s == "gaussian") return EnsembleKind::GaussianDense;
  if (s == "zero-one-random") return EnsembleKind::ZeroOneRandom;
  if (s == "zero-one-contiguous") return EnsembleKind::ZeroOneContiguous;
  if (s == "toeplitz-fir") return EnsembleKind::ToeplitzFIR;
  if (s == "correlated") return EnsembleKind::CorrelatedColumns;
  if (s == "explicit") return EnsembleKind::Explicit;
  try {
    return parse_ensemble_kind(s);
  } catch (const DomainError&) {
    throw UsageError("unknown ensemble: " + std::string(s));
  }
}

Decoder decoder_kind(std::string_view s) {
  if (s == "ml" || s == "ExhaustiveML") return Decoder::ExhaustiveML;
  if (s == "threshold" || s == "Threshold") return Decoder::Threshold;
  throw UsageError("unknown decoder: " + std::string(s));
}

double parse_snr_db(const std::string& text) {
  double db = 0.0;
  try {
    std::size_t used = 0;
    db = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw UsageError("--snr-db: not a number: " + text);
  }
  if (std::isnan(db) || db == std::numeric_limits<double>::infinity()) throw UsageError("--snr-db must be finite or -inf");
  return std::pow(10.0, db / 10.0);
}

json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config " + path + ": expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "scenario" && key != "model" && key != "ensemble" && key != "simulation") {
      throw UsageError("config " + path + ": unknown key '" + key + "'");
    }
  }
  return j;
}

void apply_simulation_config(const json& sim, Problem& p) {
  if (!sim.is_object()) throw UsageError("config: simulation must be an object");
  for (const auto& [key, value] : sim.items()) {
    try {
      if (key == "trials") p.trials = value.get<long long>();
      else if (key == "seed") p.seed = value.get<std::uint64_t>();
      else if (key == "threads") p.threads = value.get<int>();
      else if (key == "decoder") p.decoder = decoder_kind(value.get<std::string>());
      else throw UsageError("config: unknown simulation key '" + key + "'");
    } catch (const json::exception&) {
      throw UsageError("config: bad value for simulation." + key);
    }
  }
}

/// Defaults from `base`, then the config file, then explicit flags.
Problem resolve(const ProblemFlags& f, Problem p) {
  bool distortion_set = false;
  if (f.config) {
    const json cfg = read_config(*f.config);
    if (cfg.contains("model")) p.model = signal_model_from_json(cfg["model"].dump(), p.model);
    if (cfg.contains("scenario")) {
      p.scenario = scenario_from_json(cfg["scenario"].dump(), p.scenario);
      p.m_given = p.m_given || cfg["scenario"].contains("m");
      distortion_set = cfg["scenario"].contains("distortion");
    }
    if (cfg.contains("ensemble")) p.ensemble = ensemble_from_json(cfg["ensemble"].dump(), p.ensemble);
    if (cfg.contains("simulation")) apply_simulation_config(cfg["simulation"], p);
  }
  if (f.model) p.model.kind = model_kind(*f.model);
  if (f.alpha) p.model.alpha = *f.alpha;
  if (f.sigma1_sq) p.model.sigma1_sq = *f.sigma1_sq;
  if (f.sigma0_sq) p.model.sigma0_sq = *f.sigma0_sq;
  if (f.n) p.scenario.n = *f.n;
  if (f.m) {
    p.scenario.m = *f.m;
    p.m_given = true;
  }
  if (f.snr) p.scenario.snr = *f.snr;
  if (f.snr_db) p.scenario.snr = parse_snr_db(*f.snr_db);
  if (f.d0) p.scenario.d0 = *f.d0;
  if (f.distortion) {
    p.scenario.distortion = distortion_kind(*f.distortion);
    distortion_set = true;
  }
  if (!distortion_set) {
    p.scenario.distortion =
        p.model.kind == SignalKind::BernoulliDiscrete ? Distortion::Hamming : Distortion::Squared;
  }
  if (f.ensemble) p.ensemble.kind = ensemble_kind(*f.ensemble);
  if (f.beta) p.ensemble.beta = *f.beta;
  if (f.filter_length) p.ensemble.filter_length = *f.filter_length;
  if (f.downsample) p.ensemble.downsample = *f.downsample;
  if (p.ensemble.kind == EnsembleKind::GaussianDense && p.ensemble.beta < 1.0) {
    p.ensemble.kind = EnsembleKind::GaussianDiluted;
  } else if (p.ensemble.kind == EnsembleKind::GaussianDiluted && p.ensemble.beta >= 1.0) {
    p.ensemble.kind = EnsembleKind::GaussianDense;
  }
  if (f.alphabet) p.alphabet_size = *f.alphabet;
  if (f.trials) p.trials = *f.trials;
  if (f.seed) p.seed = *f.seed;
  if (f.threads) p.threads = *f.threads;
  if (f.decoder) p.decoder = decoder_kind(*f.decoder);
  if (p.alphabet_size < 2) throw UsageError("--alphabet must be at least 2");
  if (p.threads < 1) throw UsageError("--threads must be positive");
  if (p.trials < 1) throw UsageError("--trials must be positive");
  return p;
}

void print_violations(const ValidationReport& report, std::ostream& err) {
  for (const auto& v : report.violations) {
    err << to_string(v.severity) << ": " << v.subject << ": " << v.message << '\n';
  }
}

/// Throws UsageError listing type-level violations.
void require_well_typed(const ValidationReport& report, std::ostream& err) {
  if (!report.has(Severity::Invalid)) return;
  print_violations(report, err);
  throw UsageError("invalid configuration");
}

class Output {
 public:
  Output(const std::optional<std::string>& path, std::ostream& fallback) {
    if (path && *path != "-") {
      file_.open(*path);
      if (!file_) throw UsageError("cannot write " + *path);
    }
    stream_ = file_.is_open() ? static_cast<std::ostream*>(&file_) : &fallback;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

// ---------------------------------------------------------------- bounds

struct BoundsFlags {
  ProblemFlags problem;
  std::optional<double> lambda_min;
  std::optional<double> epsilon;
  double c1 = 1.0;
  double c2 = default_complexity_c2();
  std::optional<double> cover;
  std::string format = "csv";
  bool force = false;
};

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string join_notes(const BoundResult& b) {
  if (b.reason.empty()) return b.note;
  if (b.note.empty()) return b.reason;
  return b.reason + "; " + b.note;
}

int cmd_bounds(const BoundsFlags& f, std::ostream& out, std::ostream& err) {
  Problem base;
  base.scenario.n = 200;
  Problem p = resolve(f.problem, base);
  if (!p.m_given) p.scenario.m = p.scenario.n;
  const auto& s = p.scenario;
  const auto& model = p.model;
  const auto& e = p.ensemble;

  const ValidationReport report = validate(s, model, e);
  require_well_typed(report, err);
  if (!report.headline_regime_ok() && !f.force) {
    print_violations(report, err);
    err << "error: request is outside the regime of the headline bound (use --force to print anyway)\n";
    return kRegimeError;
  }
  for (const auto& v : report.violations) {
    if (v.severity == Severity::Warning) err << "warning: " << v.subject << ": " << v.message << '\n';
  }

  std::vector<BoundResult> rows;
  auto add = [&](auto&& compute) {
    try {
      rows.push_back(compute());
    } catch (const DomainError& ex) {
      if (f.force) {
        BoundResult b;
        b.valid = false;
        b.reason = ex.what();
        rows.push_back(std::move(b));
      }
    }
  };
  const double a = model.alpha;
  const int n = s.n;
  const int m = s.m;

  if (model.kind == SignalKind::BernoulliDiscrete) {
    const auto source = p.alphabet_size == 2 ? DiscreteSource::bernoulli(a)
                                             : DiscreteSource::sparse_uniform(a, p.alphabet_size);
    add([&] { return BoundResult(ub_capacity_discrete_gaussian(a, s.snr, s.d0)); });
    if (e.beta < 1.0) add([&] { return BoundResult(ub_capacity_diversity(a, e.beta, s.snr, s.d0, n)); });
    add([&] { return BoundResult(lb_capacity_discrete(source, s.snr, s.d0)); });
    if (e.kind == EnsembleKind::ZeroOneRandom) add([&] { return BoundResult(ub_capacity_01_random(a, e.beta, s.d0, n)); });
    if (e.kind == EnsembleKind::ZeroOneContiguous) {
      add([&] { return BoundResult(ub_capacity_01_contiguous(a, e.beta, s.d0)); });
    }
    if (p.m_given) {
      const double mi = m * 0.5 * std::log2(1.0 + a * s.snr);
      add([&] {
        auto b = fano_lb_finite_n(n, source, s.d0, mi);
        b.note = "I(X;Y|G) <= (m/2) log2(1 + alpha snr)";
        return b;
      });
      add([&] { return achievable_error_ub(n, m, s.snr, s.d0, source); });
    }
  } else {
    add([&] { return BoundResult(ub_capacity_continuous_gaussian(a, s.snr, s.d0)); });
    add([&] { return BoundResult(lb_capacity_continuous(a, s.snr, s.d0, f.cover.value_or(kDefaultCoverBits))); });
    std::optional<double> lambda = f.lambda_min;
    if (!lambda && e.kind == EnsembleKind::CorrelatedColumns && e.column_covariance.size() > 0) {
      lambda = column_lambda_min(e.column_covariance);
    }
    if (lambda) {
      add([&] { return BoundResult(lb_capacity_correlated(a, s.snr, s.d0, *lambda, f.cover.value_or(kDefaultCoverBits))); });
    }
  }
  if (e.kind == EnsembleKind::ToeplitzFIR && p.m_given && m >= 2) {
    const double r = fir_cross_correlation(e.filter_length, e.downsample, n);
    const std::vector<double> rs(static_cast<std::size_t>(m - 1), r);
    for (auto mode : {DeterministicMode::Normalized, DeterministicMode::AsPrinted}) {
      add([&] { return BoundResult(ub_capacity_deterministic(rs, model, s.snr, s.d0, mode, f.cover)); });
    }
  }
  if (f.epsilon && s.d0 > 0.0) {
    add([&] {
      auto c = min_sensors_comparison(n, a, s.d0, s.snr, *f.epsilon, f.c1, f.c2, s.distortion, f.cover);
      rows.push_back(c.ours);
      return c.theirs;
    });
  }

  std::vector<BoundResult> shown;
  for (auto& b : rows) {
    if (b.valid || f.force) shown.push_back(std::move(b));
  }

  if (f.format == "json") {
    json arr = json::array();
    for (const auto& b : shown) {
      arr.push_back({{"bound", b.bound},
                     {"value", b.value ? json(*b.value) : json("unbounded")},
                     {"unit", to_string(b.unit)},
                     {"valid", b.valid},
                     {"clamped", b.clamped},
                     {"reason", b.reason},
                     {"note", b.note}});
    }
    out << arr.dump(2) << '\n';
  } else {
    std::ostringstream os;
    os.precision(12);
    os << "bound,value,unit,valid,clamped,note\n";
    for (const auto& b : shown) {
      os << b.bound << ',';
      if (b.value) os << *b.value;
      else os << "unbounded";
      os << ',' << to_string(b.unit) << ',' << (b.valid ? "true" : "false") << ','
         << (b.clamped ? "true" : "false") << ',' << csv_field(join_notes(b)) << '\n';
    }
    out << os.str();
  }
  return kOk;
}

// ---------------------------------------------------------------- figure

struct FigureFlags {
  std::string id;
  std::optional<std::string> out;
  FigureGrid grid;
  std::optional<int> n;
  std::optional<double> d0_fixed;
  std::optional<double> d0_fraction;
};

int cmd_figure(FigureFlags f, std::ostream& out) {
  FigureSpec spec;
  try {
    spec.id = parse_figure_id(f.id);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  spec.grid = f.grid;
  spec.grid.n = f.n;
  spec.grid.d0_fixed = f.d0_fixed;
  spec.grid.d0_fraction = f.d0_fraction;
  const Table t = figure_data(spec);
  Output o(f.out, out);
  write_csv(t, o.get());
  if (!o.get()) throw UsageError("write failed");
  return kOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateFlags {
  ProblemFlags problem;
  std::optional<std::string> out;
  std::string format = "json";
  bool fixed_matrix = false;
};

Problem simulation_defaults() {
  Problem p;
  p.scenario.n = 12;
  p.scenario.m = 48;
  p.scenario.snr = 10.0;
  p.scenario.d0 = 1.0 / 12.0;
  return p;
}

void require_simulable(const Problem& p) {
  if (p.scenario.n > kMaxExhaustiveDim) {
    throw UsageError("n = " + std::to_string(p.scenario.n) + " exceeds the exhaustive-decoding budget (n <= 20)");
  }
  if (p.model.kind != SignalKind::BernoulliDiscrete) throw UsageError("simulation supports the bernoulli model only");
}

int cmd_simulate(const SimulateFlags& f, std::ostream& out, std::ostream& err) {
  const Problem p = resolve(f.problem, simulation_defaults());
  require_well_typed(validate(p.scenario, p.model, p.ensemble), err);
  require_simulable(p);
  SimulationOptions opt;
  opt.threads = p.threads;
  opt.decoder = p.decoder;
  opt.fixed_matrix = f.fixed_matrix;
  const auto report = estimate_error_probability(p.scenario, p.model, p.ensemble, p.trials, p.seed, opt);
  Output o(f.out, out);
  if (f.format == "csv") o.get() << reports_to_csv(std::span(&report, 1));
  else o.get() << to_json(report) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- validate

struct ValidateFlags {
  std::vector<int> n_values{8, 12, 16};
  std::vector<double> alphas{0.25, 0.5};
  std::vector<double> snrs{1.0, 10.0};
  std::vector<double> m_factors{0.5, 4.0};
  long long trials = 10000;
  std::uint64_t seed = 1;
  int threads = 1;
  std::optional<std::string> out;
};

int cmd_validate(const ValidateFlags& f, std::ostream& out, std::ostream& err) {
  if (f.trials < 1) throw UsageError("--trials must be positive");
  if (f.threads < 1) throw UsageError("--threads must be positive");
  for (int n : f.n_values) {
    if (n < 1 || n > kMaxExhaustiveDim) throw UsageError("grid n values must lie in [1, 20]");
  }
  std::vector<SimulationReport> reports;
  SimulationOptions opt;
  opt.threads = f.threads;
  std::uint64_t cell = 0;
  for (int n : f.n_values) {
    for (double alpha : f.alphas) {
      for (double snr : f.snrs) {
        for (double d0 : {0.0, 1.0 / n}) {
          for (double factor : f.m_factors) {
            Scenario s;
            s.n = n;
            s.m = std::max(1, static_cast<int>(std::lround(factor * n)));
            s.snr = snr;
            s.d0 = d0;
            const auto model = SignalModel::bernoulli(alpha);
            require_well_typed(validate(s, model, EnsembleSpec::gaussian()), err);
            reports.push_back(estimate_error_probability(s, model, EnsembleSpec::gaussian(), f.trials,
                                                         stream_key(f.seed, cell++, 0), opt));
          }
        }
      }
    }
  }
  Output o(f.out, out);
  o.get() << reports_to_csv(reports);
  long long bad = 0;
  for (const auto& r : reports) bad += r.verdict != Verdict::Consistent;
  err << "validate: " << (reports.size() - static_cast<std::size_t>(bad)) << "/" << reports.size()
      << " cells consistent\n";
  return bad == 0 ? kOk : kValidationFailure;
}

// ---------------------------------------------------------------- check

int cmd_check(const ProblemFlags& f, std::ostream& out) {
  Problem base;
  base.scenario.n = 200;
  base.scenario.m = 200;
  const Problem p = resolve(f, base);
  const auto report = validate(p.scenario, p.model, p.ensemble);
  out << "severity,subject,message\n";
  for (const auto& v : report.violations) {
    out << to_string(v.severity) << ',' << v.subject << ',' << csv_field(v.message) << '\n';
  }
  const bool failed = report.has(Severity::Invalid) || report.has(Severity::Regime);
  return failed ? kValidationFailure : kOk;
}

// ---------------------------------------------------------------- sample-matrix

struct SampleFlags {
  ProblemFlags problem;
  std::optional<std::string> out;
};

int cmd_sample_matrix(const SampleFlags& f, std::ostream& out, std::ostream& err) {
  Problem base;
  base.scenario.n = 32;
  base.scenario.m = 8;
  const Problem p = resolve(f.problem, base);
  const auto report = validate(p.scenario, p.model, p.ensemble);
  require_well_typed(report, err);
  for (const auto& v : report.violations) {
    if (v.severity == Severity::Warning) err << "warning: " << v.subject << ": " << v.message << '\n';
  }
  const auto g = sample_matrix(p.ensemble, p.scenario.m, p.scenario.n, p.seed);
  Output o(f.out, out);
  o.get() << matrix_to_csv(g);
  return kOk;
}

// Joins `--snr-db <negative>` into one token so the value is not taken for a flag.
std::vector<std::string> join_negative_values(const std::vector<std::string>& args) {
  std::vector<std::string> joined;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if ((args[i] == "--snr-db" || args[i] == "--snr") && i + 1 < args.size() && args[i + 1].starts_with('-')) {
      joined.push_back(args[i] + "=" + args[i + 1]);
      ++i;
    } else {
      joined.push_back(args[i]);
    }
  }
  return joined;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sensing-capacity bounds, figure data and Monte Carlo validation", "sensecap"};
  app.require_subcommand(1);

  BoundsFlags bounds;
  auto* b = app.add_subcommand("bounds", "Evaluate every applicable capacity and error-probability bound");
  add_problem_options(b, bounds.problem);
  b->add_option("--lambda-min", bounds.lambda_min, "Minimum eigenvalue of the normalized column covariance");
  b->add_option("--epsilon", bounds.epsilon, "Target error probability for the sensor-count comparison");
  b->add_option("--c1", bounds.c1, "Constant C1 of the complexity-regularized sensor count");
  b->add_option("--c2", bounds.c2, "Constant C2 of the complexity-regularized sensor count");
  b->add_option("--cover-bits", bounds.cover, "Override the cover constant K (bits)");
  b->add_option("--format", bounds.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  b->add_flag("--force", bounds.force, "Print out-of-regime bounds instead of failing");

  FigureFlags figure;
  auto* fg = app.add_subcommand("figure", "Write the data behind a standard capacity plot as CSV");
  fg->add_option("id", figure.id, "fig2 | fig3a | fig3b | fig4 | fig5 | fig6")->required();
  fg->add_option("--out", figure.out, "Output path (default stdout)");
  fg->add_option("--alpha", figure.grid.alpha, "Sparsity grid or value")->delimiter(',');
  fg->add_option("--snr", figure.grid.snr, "SNR grid or value (linear)")->delimiter(',');
  fg->add_option("--d0", figure.grid.d0, "Distortion grid")->delimiter(',');
  fg->add_option("--beta", figure.grid.beta, "Diversity grid")->delimiter(',');
  fg->add_option("--n", figure.n, "Signal dimension");
  fg->add_option("--d0-fixed", figure.d0_fixed, "Fixed distortion (fig5)");
  fg->add_option("--d0-fraction", figure.d0_fraction, "d0 as a fraction of alpha (fig6)");

  SimulateFlags simulate;
  auto* sm = app.add_subcommand("simulate", "Monte Carlo error probability with exhaustive ML decoding");
  add_problem_options(sm, simulate.problem);
  add_simulation_options(sm, simulate.problem);
  sm->add_option("--out", simulate.out, "Output path (default stdout)");
  sm->add_option("--format", simulate.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  sm->add_flag("--fixed-matrix", simulate.fixed_matrix, "Reuse one sensing matrix for every trial");

  ValidateFlags vflags;
  auto* vd = app.add_subcommand("validate", "Run the Fano/union sandwich grid; exit 1 on any violation");
  vd->add_option("--n", vflags.n_values, "Signal dimensions")->delimiter(',');
  vd->add_option("--alpha", vflags.alphas, "Sparsity ratios")->delimiter(',');
  vd->add_option("--snr", vflags.snrs, "Linear SNR values")->delimiter(',');
  vd->add_option("--m-factor", vflags.m_factors, "Sensor counts as multiples of n")->delimiter(',');
  vd->add_option("--trials", vflags.trials, "Trials per cell");
  vd->add_option("--seed", vflags.seed, "RNG seed");
  vd->add_option("--threads", vflags.threads, "Worker threads");
  vd->add_option("--out", vflags.out, "CSV output path (default stdout)");

  ProblemFlags check;
  auto* ck = app.add_subcommand("check", "Report type and regime violations of a configuration");
  add_problem_options(ck, check);

  SampleFlags sample;
  auto* sp = app.add_subcommand("sample-matrix", "Draw a sensing matrix and write it as CSV");
  add_problem_options(sp, sample.problem);
  sp->add_option("--seed", sample.problem.seed, "RNG seed");
  sp->add_option("--out", sample.out, "Output path (default stdout)");

  std::vector<std::string> args = join_negative_values(raw_args);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (b->parsed()) return cmd_bounds(bounds, out, err);
    if (fg->parsed()) return cmd_figure(figure, out);
    if (sm->parsed()) return cmd_simulate(simulate, out, err);
    if (vd->parsed()) return cmd_validate(vflags, out, err);
    if (ck->parsed()) return cmd_check(check, out);
    if (sp->parsed()) return cmd_sample_matrix(sample, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace sensecap::cli
