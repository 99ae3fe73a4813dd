#pragma once

#include <string>
#include <vector>

#include "gframes/family.hpp"

namespace gframes {

/// Algebra-valued weights {theta_k}, {delta_k} with the spectral bracket
/// A < |theta_k|^2, |delta_k|^2 < B read on the eigenvalues of a^* a.
struct ScalarWeights {
  std::vector<AlgebraElement> thetas;
  std::vector<AlgebraElement> deltas;
  double lower = 0.0;  // A
  double upper = 0.0;  // B
};

/// Empty string if every weight satisfies the strict spectral bracket,
/// otherwise a description of the first violation.
std::string weights_violation(const ScalarWeights& w);

/// {theta_k . Psi_k}: each member followed by the block-diagonal action of
/// theta_k on its target module, so members stay adjointable.
GFrameFamily weight_family(const GFrameFamily& f, const std::vector<AlgebraElement>& weights);

}  // namespace gframes
