#pragma once

#include <span>
#include <string>
#include <string_view>

#include "sensecap/models.hpp"
#include "sensecap/simulator.hpp"

// JSON and CSV encodings of the domain types. Field names and enum strings
// match the C++ identifiers. Doubles round-trip exactly.
namespace sensecap {

std::string to_json(const Scenario& s);
std::string to_json(const SignalModel& m);
std::string to_json(const EnsembleSpec& e);
std::string to_json(const SimulationReport& r);

/// Keys absent from `json` keep their value from `base`; unknown keys and bad
/// values throw DomainError.
Scenario scenario_from_json(std::string_view json, const Scenario& base = {});
SignalModel signal_model_from_json(std::string_view json, const SignalModel& base = {});
EnsembleSpec ensemble_from_json(std::string_view json, const EnsembleSpec& base = {});
SimulationReport report_from_json(std::string_view json);

Verdict parse_verdict(std::string_view s);

/// Column names of reports_to_csv.
std::string report_csv_header();
/// Header plus one row per report.
std::string reports_to_csv(std::span<const SimulationReport> reports);

}  // namespace sensecap
