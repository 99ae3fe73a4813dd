#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gframes/family.hpp"

namespace gframes {

enum class TheoremId {
  PerturbLambda,
  T3Equiv,
  T3Corollary,
  T7Scalar,
  T11Positive,
  TightSum,
  IsometrySum,
  LambdaLower,
  TightMN,
  PropMixed,
  ThmDifference,
  T12Operator,
  FinalCorollary,
  Classify,
};

/// Registry names, e.g. "PERTURB_LAMBDA".
std::string_view to_string(TheoremId id);
std::optional<TheoremId> parse_theorem_id(std::string_view name);
const std::vector<TheoremId>& all_theorem_ids();
/// One-line description for --list-theorems.
std::string_view describe(TheoremId id);

enum class Verdict { ConclusionHolds, HypothesisFails, ConclusionFails };

std::string_view to_string(Verdict v);

/// A named boolean with the value it was decided on. `limit` is the
/// threshold the measured value was compared with, NaN if not applicable.
struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double limit = 0.0;
};

Verdict decide(const std::vector<Check>& hypotheses, const std::vector<Check>& conclusions);

struct TheoremReport {
  TheoremId theorem_id = TheoremId::Classify;
  std::vector<Check> hypothesis_checks;
  std::vector<Check> conclusion_checks;
  std::optional<double> predicted_lower;
  std::optional<double> predicted_upper;
  FrameBounds achieved;
  Verdict verdict = Verdict::HypothesisFails;
  /// Only set for CLASSIFY runs.
  std::optional<FrameKind> classification;
  std::string note;
};

struct PerturbationReport {
  TheoremId theorem_id = TheoremId::PropMixed;
  std::optional<std::pair<double, double>> alphas;
  double measured_lhs = 0.0;
  double allowed_rhs = 0.0;
  /// Bounds as stated by the theorem being checked; recorded, never asserted.
  std::optional<std::pair<double, double>> claimed_bounds;
  FrameBounds achieved;
  Verdict verdict = Verdict::HypothesisFails;
  std::vector<Check> hypothesis_checks;
  std::vector<Check> conclusion_checks;
  std::string bound_discrepancy_note;
};

/// Options shared by every checker that samples module vectors.
struct CheckOptions {
  Tolerance tol;
  std::uint64_t seed = 0;
  std::size_t samples = 500;
};

/// Relative slack for predicted-vs-achieved bound comparisons.
inline constexpr double kBoundSlack = 1e-8;

inline double bound_slack(double scale) { return kBoundSlack * std::max(1.0, scale); }

}  // namespace gframes
