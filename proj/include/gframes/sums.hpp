#pragma once

#include <utility>

#include "gframes/family.hpp"
#include "gframes/report.hpp"
#include "gframes/weights.hpp"

namespace gframes {

/// {Psi_k o (I + L)}. Hypothesis (I+L)^* S (I+L) >= S.
std::pair<GFrameFamily, TheoremReport> perturb_lambda(const GFrameFamily& f, const AdjointableOp& lambda,
                                                      const CheckOptions& opts = {});

/// {Psi_k o M + Delta_k o N}; evaluates the three equivalent frame conditions.
std::pair<GFrameFamily, TheoremReport> op_weighted_sum(const GFrameFamily& f, const GFrameFamily& g,
                                                       const AdjointableOp& m, const AdjointableOp& n,
                                                       const CheckOptions& opts = {});

TheoremReport t3_corollary_check(const GFrameFamily& f, const GFrameFamily& g, const CheckOptions& opts = {});

/// {theta_k Psi_k + delta_k Delta_k} under B D_Delta < A D.
std::pair<GFrameFamily, TheoremReport> scalar_weighted_sum(const GFrameFamily& f, const GFrameFamily& g,
                                                           const ScalarWeights& w, const CheckOptions& opts = {});

TheoremReport t11_check(const GFrameFamily& f, const GFrameFamily& g, const ScalarWeights& w,
                        const CheckOptions& opts = {});

/// Throws NotTight unless both inputs are tight.
TheoremReport tight_sum_check(const GFrameFamily& f, const GFrameFamily& g, const CheckOptions& opts = {});

TheoremReport isometry_sum_check(const GFrameFamily& f, const GFrameFamily& g, const AdjointableOp& lambda,
                                 const CheckOptions& opts = {});

TheoremReport lambda_lower_check(const GFrameFamily& f, const GFrameFamily& g, const AdjointableOp& m,
                                 const AdjointableOp& n, double lambda, const CheckOptions& opts = {});

/// Throws NotTight unless both inputs are tight.
TheoremReport tight_mn_check(const GFrameFamily& f, const GFrameFamily& g, const AdjointableOp& m,
                             const AdjointableOp& n, const CheckOptions& opts = {});

/// Draws `count` module vectors of A^d with complex Gaussian entries.
std::vector<ModuleVector> sample_vectors(std::uint64_t seed, std::size_t algebra_dim, std::size_t module_len,
                                         std::size_t count);

}  // namespace gframes
