#pragma once

#include <vector>

#include "gframes/family.hpp"
#include "gframes/report.hpp"
#include "gframes/weights.hpp"

namespace gframes {

/// Norm-difference perturbation condition on the weighted families, checked
/// on samples plus rank-one witnesses. Throws AlphaOutOfRange unless
/// 0 < alpha1, alpha2 < 1.
PerturbationReport prop_mixed_check(const GFrameFamily& f, const GFrameFamily& g, const ScalarWeights& w,
                                    double alpha1, double alpha2, const CheckOptions& opts = {});

/// sum <(theta Psi - delta Delta) x, .> <= alpha1 sum <theta Psi x, .> + alpha2 sum <delta Delta x, .>,
/// checked spectrally and on samples.
PerturbationReport difference_check(const GFrameFamily& f, const GFrameFamily& g, const ScalarWeights& w,
                                    double alpha1, double alpha2, const CheckOptions& opts = {});

/// Delta_k are positive operators on H; K = sum Delta_k replaces S.
PerturbationReport t12_check(const GFrameFamily& f, const std::vector<AdjointableOp>& deltas,
                             const CheckOptions& opts = {});

/// Same with Delta_k = G_k^* G_k lifted from a family.
PerturbationReport t12_check(const GFrameFamily& f, const GFrameFamily& g, const CheckOptions& opts = {});

/// ||S_F - S_G|| <= alpha < C. Throws AlphaOutOfRange if alpha <= 0, or if F
/// is a g-frame with lower bound C <= alpha.
PerturbationReport final_corollary_check(const GFrameFamily& f, const GFrameFamily& g, double alpha,
                                         const CheckOptions& opts = {});

/// Largest ||sum_{k in J} E_k|| over non-empty subsets J (Gray-code walk).
/// The terms must be Hermitian.
double max_subset_norm(const std::vector<CMatrix>& terms);

/// Subset enumeration is exhaustive up to this many members.
inline constexpr std::size_t kMaxSubsetMembers = 12;

}  // namespace gframes
