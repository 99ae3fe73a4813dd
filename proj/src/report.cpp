#include "gframes/report.hpp"

#include <algorithm>
#include <array>

namespace gframes {

namespace {

struct Entry {
  TheoremId id;
  std::string_view name;
  std::string_view description;
};

constexpr std::array<Entry, 14> kRegistry{{
    {TheoremId::PerturbLambda, "PERTURB_LAMBDA", "{Psi_k (I + L)} is a g-frame when (I+L)^* S (I+L) >= S"},
    {TheoremId::T3Equiv, "T3_EQUIV", "{Psi_k M + Delta_k N}: frame <=> combined synthesis surjective <=> S > 0"},
    {TheoremId::T3Corollary, "T3_COROLLARY", "{Psi_k + Delta_k} is a g-frame when T_Psi T_Delta^* is positive"},
    {TheoremId::T7Scalar, "T7_SCALAR", "{theta_k Psi_k + delta_k Delta_k} is a g-frame when B D_Delta < A D"},
    {TheoremId::T11Positive, "T11_POSITIVE", "weighted sum of two g-frames with positive cross term, lower bound A(alpha+beta)"},
    {TheoremId::TightSum, "TIGHT_SUM", "orthogonal alpha1- and alpha2-tight frames sum to an (alpha1+alpha2)-tight frame"},
    {TheoremId::IsometrySum, "ISOMETRY_SUM", "{(Psi_k + Delta_k) L} is a g-frame for an isometry L and positive cross term"},
    {TheoremId::LambdaLower, "LAMBDA_LOWER", "{Psi_k M + Delta_k N} with ||Nx|| > lambda ||x|| and D_Delta < D"},
    {TheoremId::TightMN, "TIGHT_MN", "orthogonal tight pair: {Psi_k M + Delta_k N} alpha-tight <=> a1 M^*M + a2 N^*N = alpha I"},
    {TheoremId::PropMixed, "PROP_MIXED", "norm-difference perturbation condition implies {Delta_k} is a g-frame"},
    {TheoremId::ThmDifference, "THM_DIFFERENCE", "weighted difference perturbation condition implies {Delta_k} is a g-frame"},
    {TheoremId::T12Operator, "T12_OPERATOR", "frame-operator perturbation ||sum_J (Psi^*Psi - Delta)|| <= C/D keeps a g-frame"},
    {TheoremId::FinalCorollary, "FINAL_COROLLARY", "||S_Psi - S_Delta|| <= alpha < C implies {Delta_k} is a g-frame"},
    {TheoremId::Classify, "CLASSIFY", "classify a family as Bessel-only, frame, tight or Parseval"},
}};

}  // namespace

std::string_view to_string(TheoremId id) {
  for (const auto& e : kRegistry)
    if (e.id == id) return e.name;
  return "?";
}

std::string_view describe(TheoremId id) {
  for (const auto& e : kRegistry)
    if (e.id == id) return e.description;
  return "";
}

std::optional<TheoremId> parse_theorem_id(std::string_view name) {
  for (const auto& e : kRegistry)
    if (e.name == name) return e.id;
  return std::nullopt;
}

const std::vector<TheoremId>& all_theorem_ids() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> out;
    for (const auto& e : kRegistry) out.push_back(e.id);
    return out;
  }();
  return ids;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::ConclusionHolds: return "ConclusionHolds";
    case Verdict::HypothesisFails: return "HypothesisFails";
    case Verdict::ConclusionFails: return "ConclusionFails";
  }
  return "?";
}

Verdict decide(const std::vector<Check>& hypotheses, const std::vector<Check>& conclusions) {
  auto ok = [](const Check& c) { return c.passed; };
  if (!std::all_of(hypotheses.begin(), hypotheses.end(), ok)) return Verdict::HypothesisFails;
  if (!std::all_of(conclusions.begin(), conclusions.end(), ok)) return Verdict::ConclusionFails;
  return Verdict::ConclusionHolds;
}

}  // namespace gframes
