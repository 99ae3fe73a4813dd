#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "gframes/hmodule.hpp"

namespace gframes {

/// Finite family {Psi_k : H -> H_k} sharing the source module H = A^d.
class GFrameFamily {
 public:
  GFrameFamily() = default;
  /// Throws DimensionMismatch if members is empty or shapes disagree.
  explicit GFrameFamily(std::vector<AdjointableOp> members);

  [[nodiscard]] std::size_t algebra_dim() const { return members_.front().algebra_dim(); }
  [[nodiscard]] std::size_t source_len() const { return members_.front().source_len(); }
  [[nodiscard]] std::size_t size() const { return members_.size(); }
  [[nodiscard]] const AdjointableOp& member(std::size_t k) const { return members_.at(k); }
  [[nodiscard]] const std::vector<AdjointableOp>& members() const { return members_; }
  [[nodiscard]] std::vector<std::size_t> member_dims() const;

  /// {Psi_k o T}: each member precomposed with T : H -> H.
  [[nodiscard]] GFrameFamily precompose(const AdjointableOp& t) const;
  /// {c Psi_k}
  [[nodiscard]] GFrameFamily scaled(Complex c) const;

  /// Zero family with the same shape.
  [[nodiscard]] GFrameFamily zero_like() const;

 private:
  std::vector<AdjointableOp> members_;
};

/// Member-wise sum {Psi_k + Delta_k}; both families must match shape by index.
GFrameFamily operator+(const GFrameFamily& f, const GFrameFamily& g);

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool tight = false;
  bool parseval = false;
};

enum class FrameKind { BesselOnly, Frame, TightFrame, ParsevalFrame };

std::string_view to_string(FrameKind kind);

struct Classification {
  FrameKind kind = FrameKind::BesselOnly;
  FrameBounds bounds;

  [[nodiscard]] bool is_frame() const { return kind != FrameKind::BesselOnly; }
};

/// Relative margin used to decide tightness and Parseval-ness.
inline constexpr double kTightMargin = 1e-8;

std::vector<ModuleVector> analysis(const GFrameFamily& f, const ModuleVector& x);

ModuleVector synthesis(const GFrameFamily& f, const std::vector<ModuleVector>& ys);

/// Analysis operator T^* : H -> (+)_k H_k as one operator.
AdjointableOp analysis_op(const GFrameFamily& f);

/// Synthesis operator T : (+)_k H_k -> H as one operator.
AdjointableOp synthesis_op(const GFrameFamily& f);

/// S = sum_k Psi_k^* Psi_k
AdjointableOp frame_operator(const GFrameFamily& f);

/// T_Psi T_Delta^* = sum_k Psi_k^* Delta_k
AdjointableOp cross_operator(const GFrameFamily& f, const GFrameFamily& g);

/// Bounds read from the spectrum of a positive operator on H.
FrameBounds bounds_from_operator(const AdjointableOp& s);

/// lower = lambda_min(S), upper = lambda_max(S).
FrameBounds optimal_bounds(const GFrameFamily& f);

/// Threshold that lambda_min(S) must exceed for S > 0.
double frame_threshold(double upper, const Tolerance& tol);

Classification classify_bounds(const FrameBounds& b, const Tolerance& tol = {});
Classification classify(const GFrameFamily& f, const Tolerance& tol = {});

/// Checks A <x,x> <= sum <Psi_k x, Psi_k x> <= B <x,x> on `samples` seeded
/// random vectors and spectrally; returns true only if both pass. Throws
/// InternalConsistencyError if samples refute a bound the spectrum accepts.
bool verify_frame_inequality(const GFrameFamily& f, double lower, double upper, std::size_t samples,
                             const Tolerance& tol = {}, std::uint64_t seed = 0);

/// Agreement of "synthesis operator surjective" with "S > 0".
bool lemma33_check(const GFrameFamily& f, const Tolerance& tol = {});

}  // namespace gframes
