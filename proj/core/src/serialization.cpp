#include "sensecap/serialization.hpp"

#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace sensecap {

namespace {

using nlohmann::json;

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("invalid JSON: ") + e.what());
  }
}

void check_keys(const json& j, std::string_view what, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw DomainError(std::string(what) + ": expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw DomainError(std::string(what) + ": unknown key '" + key + "'");
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw DomainError(std::string("bad value for '") + key + "'");
  }
}

std::string read_string(const json& j, const char* key, std::string_view fallback) {
  std::string s(fallback);
  read(j, key, s);
  return s;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from(const json& j, const char* key) {
  if (!j.is_array()) throw DomainError(std::string(key) + ": expected an array of rows");
  if (j.empty()) return {};
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw DomainError(std::string(key) + ": rows must have equal length");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      if (!row[static_cast<std::size_t>(k)].is_number()) throw DomainError(std::string(key) + ": entries must be numbers");
      m(i, k) = row[static_cast<std::size_t>(k)].get<double>();
    }
  }
  return m;
}

json scenario_json(const Scenario& s) {
  return {{"n", s.n}, {"m", s.m}, {"snr", s.snr}, {"d0", s.d0}, {"distortion", to_string(s.distortion)}};
}

json model_json(const SignalModel& m) {
  return {{"kind", to_string(m.kind)}, {"alpha", m.alpha}, {"sigma1_sq", m.sigma1_sq}, {"sigma0_sq", m.sigma0_sq}};
}

json ensemble_json(const EnsembleSpec& e) {
  json j = {{"kind", to_string(e.kind)},
            {"beta", e.beta},
            {"filter_length", e.filter_length},
            {"downsample", e.downsample}};
  if (e.column_covariance.size() > 0) j["column_covariance"] = matrix_json(e.column_covariance);
  if (e.matrix.size() > 0) j["matrix"] = matrix_json(e.matrix);
  return j;
}

Scenario scenario_from(const json& j, Scenario s) {
  check_keys(j, "scenario", {"n", "m", "snr", "d0", "distortion"});
  read(j, "n", s.n);
  read(j, "m", s.m);
  read(j, "snr", s.snr);
  read(j, "d0", s.d0);
  s.distortion = parse_distortion(read_string(j, "distortion", to_string(s.distortion)));
  return s;
}

SignalModel model_from(const json& j, SignalModel m) {
  check_keys(j, "model", {"kind", "alpha", "sigma1_sq", "sigma0_sq"});
  m.kind = parse_signal_kind(read_string(j, "kind", to_string(m.kind)));
  read(j, "alpha", m.alpha);
  read(j, "sigma1_sq", m.sigma1_sq);
  read(j, "sigma0_sq", m.sigma0_sq);
  return m;
}

EnsembleSpec ensemble_from(const json& j, EnsembleSpec e) {
  check_keys(j, "ensemble", {"kind", "beta", "filter_length", "downsample", "column_covariance", "matrix"});
  e.kind = parse_ensemble_kind(read_string(j, "kind", to_string(e.kind)));
  read(j, "beta", e.beta);
  read(j, "filter_length", e.filter_length);
  read(j, "downsample", e.downsample);
  if (j.contains("column_covariance")) e.column_covariance = matrix_from(j["column_covariance"], "column_covariance");
  if (j.contains("matrix")) e.matrix = matrix_from(j["matrix"], "matrix");
  return e;
}

}  // namespace

std::string to_json(const Scenario& s) { return scenario_json(s).dump(); }
std::string to_json(const SignalModel& m) { return model_json(m).dump(); }
std::string to_json(const EnsembleSpec& e) { return ensemble_json(e).dump(); }

std::string to_json(const SimulationReport& r) {
  const json j = {{"trials", r.trials},
                  {"errors", r.errors},
                  {"p_hat", r.p_hat},
                  {"ci_low", r.ci_low},
                  {"ci_high", r.ci_high},
                  {"mean_mi_bits", r.mean_mi_bits},
                  {"fano_lb", r.fano_lb},
                  {"union_ub", r.union_ub},
                  {"verdict", to_string(r.verdict)},
                  {"seed", r.seed},
                  {"scenario", scenario_json(r.scenario)},
                  {"model", model_json(r.model)},
                  {"ensemble", to_string(r.ensemble)},
                  {"beta", r.beta}};
  return j.dump(2);
}

Scenario scenario_from_json(std::string_view text, const Scenario& base) { return scenario_from(parse(text), base); }
SignalModel signal_model_from_json(std::string_view text, const SignalModel& base) {
  return model_from(parse(text), base);
}
EnsembleSpec ensemble_from_json(std::string_view text, const EnsembleSpec& base) {
  return ensemble_from(parse(text), base);
}

SimulationReport report_from_json(std::string_view text) {
  const json j = parse(text);
  check_keys(j, "report", {"trials", "errors", "p_hat", "ci_low", "ci_high", "mean_mi_bits", "fano_lb", "union_ub",
                           "verdict", "seed", "scenario", "model", "ensemble", "beta"});
  SimulationReport r;
  read(j, "trials", r.trials);
  read(j, "errors", r.errors);
  read(j, "p_hat", r.p_hat);
  read(j, "ci_low", r.ci_low);
  read(j, "ci_high", r.ci_high);
  read(j, "mean_mi_bits", r.mean_mi_bits);
  read(j, "fano_lb", r.fano_lb);
  read(j, "union_ub", r.union_ub);
  r.verdict = parse_verdict(read_string(j, "verdict", to_string(r.verdict)));
  read(j, "seed", r.seed);
  if (j.contains("scenario")) r.scenario = scenario_from(j["scenario"], {});
  if (j.contains("model")) r.model = model_from(j["model"], {});
  r.ensemble = parse_ensemble_kind(read_string(j, "ensemble", to_string(r.ensemble)));
  read(j, "beta", r.beta);
  return r;
}

Verdict parse_verdict(std::string_view s) {
  for (auto v : {Verdict::Consistent, Verdict::FanoViolated, Verdict::UnionViolated}) {
    if (to_string(v) == s) return v;
  }
  throw DomainError("unknown verdict: " + std::string(s));
}

std::string report_csv_header() {
  return "n,m,snr,d0,distortion,model,alpha,sigma1_sq,sigma0_sq,ensemble,beta,trials,errors,p_hat,ci_low,ci_high,"
         "mean_mi_bits,fano_lb,union_ub,verdict,seed";
}

std::string reports_to_csv(std::span<const SimulationReport> reports) {
  std::ostringstream os;
  os.precision(17);
  os << report_csv_header() << '\n';
  for (const auto& r : reports) {
    const auto& s = r.scenario;
    os << s.n << ',' << s.m << ',' << s.snr << ',' << s.d0 << ',' << to_string(s.distortion) << ','
       << to_string(r.model.kind) << ',' << r.model.alpha << ',' << r.model.sigma1_sq << ',' << r.model.sigma0_sq
       << ',' << to_string(r.ensemble) << ',' << r.beta << ',' << r.trials << ',' << r.errors << ',' << r.p_hat << ','
       << r.ci_low << ',' << r.ci_high << ',' << r.mean_mi_bits << ',' << r.fano_lb << ',' << r.union_ub << ','
       << to_string(r.verdict) << ',' << r.seed << '\n';
  }
  return os.str();
}

}  // namespace sensecap
