#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gframes/instances.hpp"
#include "gframes/serialize.hpp"

namespace gframes {

inline constexpr int kScenarioSchema = 1;

struct Scenario {
  std::string name;
  TheoremId theorem = TheoremId::Classify;
  Tolerance tol;
  std::size_t repetitions = 1;
  std::uint64_t seed = 0;
  std::uint64_t seed_stride = 1;
  std::size_t samples = 500;
  /// Generated per repetition, or one fixed inline instance.
  std::variant<InstanceParams, Instance> instance;
};

/// Accepts one scenario object or {"schema": 1, "scenarios": [...]}.
/// Throws ValidationError on schema violations.
std::vector<Scenario> parse_scenarios(const Json& doc);

/// Reads and parses a scenario file. Malformed JSON raises ValidationError
/// carrying "path:line:column".
std::vector<Scenario> load_scenarios(const std::string& path);

struct Repetition {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  AnyReport report;
};

struct Aggregate {
  std::size_t holds = 0;
  std::size_t hypothesis_fails = 0;
  std::size_t conclusion_fails = 0;
};

struct RunReport {
  std::string scenario;
  TheoremId theorem = TheoremId::Classify;
  std::vector<Repetition> repetitions;
  Aggregate aggregate;
  double wall_seconds = 0.0;
};

/// Repetition i uses seed + stride * i (or the override as the base).
RunReport run_scenario(const Scenario& s, std::optional<std::uint64_t> seed_override = std::nullopt);

struct ReportOptions {
  bool timestamp = true;
  std::string generated_at;
};

Json report_json(const std::vector<RunReport>& runs, const ReportOptions& opts);

/// One row per repetition: scenario, rep, verdict, achieved and predicted bounds.
std::string report_csv(const std::vector<RunReport>& runs);

/// 0 if no repetition reached ConclusionFails, 1 otherwise.
int exit_code(const std::vector<RunReport>& runs);

}  // namespace gframes
