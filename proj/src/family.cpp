#include "gframes/family.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gframes/error.hpp"
#include "gframes/rng.hpp"

namespace gframes {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t v) { return static_cast<Index>(v); }

void require_compatible(const GFrameFamily& f, const GFrameFamily& g, const char* what) {
  if (f.algebra_dim() != g.algebra_dim() || f.source_len() != g.source_len() || f.size() != g.size()) {
    throw DimensionMismatch(std::string(what) + ": families differ in algebra dimension, module length or size");
  }
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f.member(k).target_len() != g.member(k).target_len()) {
      throw DimensionMismatch(std::string(what) + ": member " + std::to_string(k) + " target lengths differ");
    }
  }
}

}  // namespace

GFrameFamily::GFrameFamily(std::vector<AdjointableOp> members) : members_(std::move(members)) {
  if (members_.empty()) throw DimensionMismatch("a family needs at least one member");
  const auto n = members_.front().algebra_dim();
  const auto d = members_.front().source_len();
  for (const auto& m : members_) {
    if (m.algebra_dim() != n || m.source_len() != d) {
      throw DimensionMismatch("family members must share algebra dimension and source module");
    }
  }
}

std::vector<std::size_t> GFrameFamily::member_dims() const {
  std::vector<std::size_t> dims;
  dims.reserve(members_.size());
  for (const auto& m : members_) dims.push_back(m.target_len());
  return dims;
}

GFrameFamily GFrameFamily::precompose(const AdjointableOp& t) const {
  std::vector<AdjointableOp> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(compose(m, t));
  return GFrameFamily(std::move(out));
}

GFrameFamily GFrameFamily::scaled(Complex c) const {
  std::vector<AdjointableOp> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(c * m);
  return GFrameFamily(std::move(out));
}

GFrameFamily GFrameFamily::zero_like() const { return scaled(0.0); }

GFrameFamily operator+(const GFrameFamily& f, const GFrameFamily& g) {
  require_compatible(f, g, "family sum");
  std::vector<AdjointableOp> out;
  out.reserve(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out.push_back(f.member(k) + g.member(k));
  return GFrameFamily(std::move(out));
}

std::string_view to_string(FrameKind kind) {
  switch (kind) {
    case FrameKind::BesselOnly: return "BesselOnly";
    case FrameKind::Frame: return "Frame";
    case FrameKind::TightFrame: return "TightFrame";
    case FrameKind::ParsevalFrame: return "ParsevalFrame";
  }
  return "?";
}

std::vector<ModuleVector> analysis(const GFrameFamily& f, const ModuleVector& x) {
  std::vector<ModuleVector> out;
  out.reserve(f.size());
  for (const auto& m : f.members()) out.push_back(apply(m, x));
  return out;
}

ModuleVector synthesis(const GFrameFamily& f, const std::vector<ModuleVector>& ys) {
  if (ys.size() != f.size()) {
    throw DimensionMismatch("synthesis expects " + std::to_string(f.size()) + " components, got " +
                            std::to_string(ys.size()));
  }
  ModuleVector acc = ModuleVector::zero(f.algebra_dim(), f.source_len());
  for (std::size_t k = 0; k < f.size(); ++k) acc = acc + apply(adjoint_op(f.member(k)), ys[k]);
  return acc;
}

AdjointableOp analysis_op(const GFrameFamily& f) {
  const std::size_t n = f.algebra_dim();
  const auto offsets = block_offsets(f.member_dims());
  CMatrix flat(idx(n * f.source_len()), idx(n * offsets.back()));
  for (std::size_t k = 0; k < f.size(); ++k) {
    const CMatrix& m = f.member(k).flat();
    flat.middleCols(idx(n * offsets[k]), m.cols()) = m;
  }
  return AdjointableOp(n, std::move(flat));
}

AdjointableOp synthesis_op(const GFrameFamily& f) { return adjoint_op(analysis_op(f)); }

AdjointableOp frame_operator(const GFrameFamily& f) {
  const auto k = idx(f.algebra_dim() * f.source_len());
  CMatrix s = CMatrix::Zero(k, k);
  for (const auto& m : f.members()) s += m.flat() * m.flat().adjoint();
  return AdjointableOp(f.algebra_dim(), std::move(s));
}

AdjointableOp cross_operator(const GFrameFamily& f, const GFrameFamily& g) {
  require_compatible(f, g, "cross operator");
  const auto k = idx(f.algebra_dim() * f.source_len());
  CMatrix c = CMatrix::Zero(k, k);
  // Psi_k^* o Delta_k flattens to flat(Delta_k) flat(Psi_k)^*.
  for (std::size_t z = 0; z < f.size(); ++z) c += g.member(z).flat() * f.member(z).flat().adjoint();
  return AdjointableOp(f.algebra_dim(), std::move(c));
}

FrameBounds bounds_from_operator(const AdjointableOp& s) {
  const RVector ev = linalg::hermitian_eigenvalues(s.flat());
  FrameBounds b;
  b.upper = std::max(ev.maxCoeff(), 0.0);
  b.lower = std::clamp(ev.minCoeff(), 0.0, b.upper);
  b.tight = b.lower > 0.0 && (b.upper - b.lower) <= kTightMargin * b.upper;
  b.parseval = b.tight && std::abs(b.lower - 1.0) <= kTightMargin * std::max(1.0, b.upper) &&
               std::abs(b.upper - 1.0) <= kTightMargin * std::max(1.0, b.upper);
  return b;
}

FrameBounds optimal_bounds(const GFrameFamily& f) { return bounds_from_operator(frame_operator(f)); }

double frame_threshold(double upper, const Tolerance& tol) { return tol.slack(upper); }

Classification classify_bounds(const FrameBounds& b, const Tolerance& tol) {
  Classification c;
  c.bounds = b;
  if (b.lower <= frame_threshold(b.upper, tol)) {
    c.kind = FrameKind::BesselOnly;
    c.bounds.tight = false;
    c.bounds.parseval = false;
  } else if (b.parseval) {
    c.kind = FrameKind::ParsevalFrame;
  } else if (b.tight) {
    c.kind = FrameKind::TightFrame;
  } else {
    c.kind = FrameKind::Frame;
  }
  return c;
}

Classification classify(const GFrameFamily& f, const Tolerance& tol) {
  return classify_bounds(optimal_bounds(f), tol);
}

bool verify_frame_inequality(const GFrameFamily& f, double lower, double upper, std::size_t samples,
                             const Tolerance& tol, std::uint64_t seed) {
  const AdjointableOp s = frame_operator(f);
  const RVector ev = linalg::hermitian_eigenvalues(s.flat());
  const double slack = tol.slack(std::max({std::abs(ev.maxCoeff()), std::abs(lower), std::abs(upper)}));
  const bool spectral_lower = lower <= ev.minCoeff() + slack;
  const bool spectral_upper = ev.maxCoeff() <= upper + slack;

  SplitMix64 rng(seed);
  const std::size_t n = f.algebra_dim();
  bool sampled_lower = true;
  bool sampled_upper = true;
  for (std::size_t i = 0; i < samples; ++i) {
    const ModuleVector x(n, random_complex_matrix(rng, idx(n), idx(n * f.source_len())));
    const AlgebraElement xx = inner_product(x, x);
    const AlgebraElement sxx = inner_product(apply(s, x), x);
    sampled_lower = sampled_lower && psd_order_leq(Complex(lower) * xx, sxx, tol);
    sampled_upper = sampled_upper && psd_order_leq(sxx, Complex(upper) * xx, tol);
  }
  // The spectral form is the exact "for all x" statement; samples can only
  // miss violations, never find ones the spectrum rules out.
  const bool strict_lower = lower <= ev.minCoeff();
  const bool strict_upper = ev.maxCoeff() <= upper;
  if ((strict_lower && !sampled_lower) || (strict_upper && !sampled_upper)) {
    throw InternalConsistencyError("frame inequality: sampled vectors violate bounds accepted spectrally");
  }
  return spectral_lower && spectral_upper && sampled_lower && sampled_upper;
}

bool lemma33_check(const GFrameFamily& f, const Tolerance& tol) {
  const bool surjective = is_surjective(synthesis_op(f), tol);
  const FrameBounds b = optimal_bounds(f);
  const bool positive = b.lower > frame_threshold(b.upper, tol);
  return surjective == positive;
}

}  // namespace gframes
