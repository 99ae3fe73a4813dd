#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "gframes/family.hpp"
#include "gframes/weights.hpp"

namespace gframes {

namespace target {
struct Random {};
struct Parseval {};
struct Tight {
  double nu = 1.0;
};
struct Bounds {
  double lower = 1.0;
  double upper = 1.0;
};
}  // namespace target

using GenTarget = std::variant<target::Random, target::Parseval, target::Tight, target::Bounds>;

struct GenSpec {
  std::uint64_t seed = 0;
  std::size_t algebra_dim = 1;
  std::size_t module_len = 1;
  std::vector<std::size_t> member_dims{1};
  GenTarget target = target::Random{};
};

/// Throws DegenerateSpec for empty shapes or invalid targets.
void validate(const GenSpec& spec);

/// Deterministic in spec. Parseval: random family post-composed with S^{-1/2}.
/// Tight(nu): Parseval scaled by sqrt(nu). Bounds(A, B): Parseval post-composed
/// with V diag(sqrt(mu)) V^* where mu spans [A, B]. Random: raw Gaussian
/// blocks, which may be under-complete.
GFrameFamily gen_family(const GenSpec& spec);

/// (F, G) with disjoint component supports in every target module, so
/// T_F T_G^* = 0 exactly. Each family is conditioned to spec.target.
std::pair<GFrameFamily, GFrameFamily> gen_orthogonal_pair(const GenSpec& spec);
std::pair<GFrameFamily, GFrameFamily> gen_orthogonal_pair(const GenSpec& spec, const GenTarget& first,
                                                          const GenTarget& second);

/// Random unitary operator on A^d.
AdjointableOp gen_isometry(std::uint64_t seed, std::size_t algebra_dim, std::size_t module_len);

/// Weights U diag(s) U^* with s^2 strictly inside (lower, upper).
/// Throws BadRange unless 0 < lower < upper.
ScalarWeights gen_weights(std::uint64_t seed, std::size_t algebra_dim, std::size_t count, double lower,
                          double upper);

}  // namespace gframes
