#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "gframes/gen.hpp"
#include "gframes/report.hpp"

namespace gframes {

/// Inputs for one checker call. Which fields are needed depends on the theorem.
struct Instance {
  TheoremId theorem = TheoremId::Classify;
  GFrameFamily f;
  std::optional<GFrameFamily> g;
  std::optional<AdjointableOp> m;
  std::optional<AdjointableOp> n;
  std::optional<AdjointableOp> lambda_op;
  std::optional<double> lambda;  // LAMBDA_LOWER
  std::optional<double> alpha;   // FINAL_COROLLARY
  std::optional<std::pair<double, double>> alphas;
  std::optional<ScalarWeights> weights;
  std::vector<AdjointableOp> deltas;  // T12_OPERATOR, operator form
  std::optional<FrameKind> expect;    // CLASSIFY
};

/// Knobs for the hypothesis-satisfying builders.
struct InstanceParams {
  GenSpec spec{0, 2, 2, {2, 2, 2}, target::Bounds{0.5, 2.0}};
  double weight_lower = 0.9;
  double weight_upper = 1.1;
  std::pair<double, double> alphas{0.5, 0.5};
  std::pair<double, double> tight_alphas{1.0, 1.0};
  /// Size of random perturbations in the stability builders.
  double perturbation = 0.05;
};

/// Builds an instance whose hypotheses hold by construction (T3_EQUIV and
/// CLASSIFY have no hypotheses beyond shape). Deterministic in `seed`.
Instance make_instance(TheoremId id, const InstanceParams& params, std::uint64_t seed);

/// CLASSIFY: kind and bounds, the synthesis/frame-operator agreement, and the
/// expected kind when one is given.
TheoremReport classify_check(const GFrameFamily& f, std::optional<FrameKind> expect, const CheckOptions& opts);

using AnyReport = std::variant<TheoremReport, PerturbationReport>;

/// Runs the checker named by inst.theorem. Throws ValidationError when a
/// required input is missing.
AnyReport run_instance(const Instance& inst, const CheckOptions& opts);

Verdict verdict_of(const AnyReport& r);

/// Expected classification for a generator target, if it pins one.
std::optional<FrameKind> expected_kind(const GenTarget& t);

}  // namespace gframes
