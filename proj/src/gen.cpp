#include "gframes/gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gframes/error.hpp"
#include "gframes/rng.hpp"

namespace gframes {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t v) { return static_cast<Index>(v); }

constexpr int kMaxDraws = 8;
constexpr double kParsevalCheck = 1e-9;
constexpr double kBoundsCheck = 1e-8;

void validate_target(const GenTarget& target, std::size_t flat_dim) {
  if (const auto* t = std::get_if<target::Tight>(&target); t && !(t->nu > 0.0)) {
    throw DegenerateSpec("tight target needs nu > 0");
  }
  if (const auto* b = std::get_if<target::Bounds>(&target)) {
    if (!(b->lower > 0.0) || !(b->upper >= b->lower)) throw DegenerateSpec("bounds target needs 0 < A <= B");
    if (flat_dim == 1 && b->lower != b->upper) {
      throw DegenerateSpec("bounds target with A < B needs n*d >= 2 to place two distinct eigenvalues");
    }
  }
}

bool is_random(const GenTarget& t) { return std::holds_alternative<target::Random>(t); }

// Conditions `raw` so that its frame operator hits `target`. Returns false if
// `raw` does not span H.
bool condition_family(const GFrameFamily& raw, const GenTarget& target, SplitMix64& rng, GFrameFamily& out) {
  if (is_random(target)) {
    out = raw;
    return true;
  }
  const std::size_t n = raw.algebra_dim();
  const CMatrix s = frame_operator(raw).flat();
  const RVector ev = linalg::hermitian_eigenvalues(s);
  if (!(ev.minCoeff() > 1e-10 * ev.maxCoeff())) return false;

  GFrameFamily parseval = raw.precompose(AdjointableOp(n, linalg::inv_sqrt_pd(s)));
  if (std::holds_alternative<target::Parseval>(target)) {
    out = std::move(parseval);
  } else if (const auto* t = std::get_if<target::Tight>(&target)) {
    out = parseval.scaled(std::sqrt(t->nu));
  } else {
    const auto& b = std::get<target::Bounds>(target);
    const Index k = s.rows();
    RVector mu(k);
    mu(0) = b.lower;
    mu(k - 1) = b.upper;
    for (Index i = 1; i + 1 < k; ++i) mu(i) = rng.uniform(b.lower, b.upper);
    const CMatrix v = random_unitary(rng, k);
    const CMatrix g = v * mu.cwiseSqrt().cast<Complex>().asDiagonal() * v.adjoint();
    out = parseval.precompose(AdjointableOp(n, g));
  }
  return true;
}

void verify_target(const GFrameFamily& f, const GenTarget& target) {
  if (is_random(target)) return;
  const FrameBounds b = optimal_bounds(f);
  double want_lo = 1.0;
  double want_hi = 1.0;
  double tol = kParsevalCheck;
  if (const auto* t = std::get_if<target::Tight>(&target)) {
    want_lo = want_hi = t->nu;
    tol = kParsevalCheck * std::max(1.0, t->nu);
  } else if (const auto* bb = std::get_if<target::Bounds>(&target)) {
    want_lo = bb->lower;
    want_hi = bb->upper;
    tol = kBoundsCheck * std::max(1.0, bb->upper);
  }
  if (std::abs(b.lower - want_lo) > tol || std::abs(b.upper - want_hi) > tol) {
    throw InternalConsistencyError("generator postcondition failed: bounds (" + std::to_string(b.lower) + ", " +
                                   std::to_string(b.upper) + ")");
  }
}

AdjointableOp random_member(SplitMix64& rng, std::size_t n, std::size_t d, std::size_t target_len) {
  return AdjointableOp(n, random_complex_matrix(rng, idx(n * d), idx(n * target_len)));
}

}  // namespace

void validate(const GenSpec& spec) {
  if (spec.algebra_dim == 0 || spec.module_len == 0) throw DegenerateSpec("algebra_dim and module_len must be >= 1");
  if (spec.member_dims.empty()) throw DegenerateSpec("member_dims must not be empty");
  if (std::any_of(spec.member_dims.begin(), spec.member_dims.end(), [](std::size_t m) { return m == 0; })) {
    throw DegenerateSpec("every member dimension must be >= 1");
  }
  validate_target(spec.target, spec.algebra_dim * spec.module_len);
  const std::size_t total = std::accumulate(spec.member_dims.begin(), spec.member_dims.end(), std::size_t{0});
  if (!is_random(spec.target) && total < spec.module_len) {
    throw DegenerateSpec("sum of member dimensions " + std::to_string(total) + " < module length " +
                         std::to_string(spec.module_len) + ": the family cannot span H");
  }
}

GFrameFamily gen_family(const GenSpec& spec) {
  validate(spec);
  SplitMix64 rng(spec.seed);
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    std::vector<AdjointableOp> members;
    members.reserve(spec.member_dims.size());
    for (std::size_t dz : spec.member_dims) {
      members.push_back(random_member(rng, spec.algebra_dim, spec.module_len, dz));
    }
    GFrameFamily out;
    if (condition_family(GFrameFamily(std::move(members)), spec.target, rng, out)) {
      verify_target(out, spec.target);
      return out;
    }
  }
  throw DegenerateSpec("could not draw a spanning family");
}

std::pair<GFrameFamily, GFrameFamily> gen_orthogonal_pair(const GenSpec& spec) {
  return gen_orthogonal_pair(spec, spec.target, spec.target);
}

std::pair<GFrameFamily, GFrameFamily> gen_orthogonal_pair(const GenSpec& spec, const GenTarget& first,
                                                          const GenTarget& second) {
  GenSpec check = spec;
  check.target = target::Random{};
  validate(check);
  validate_target(first, spec.algebra_dim * spec.module_len);
  validate_target(second, spec.algebra_dim * spec.module_len);

  std::size_t first_total = 0;
  std::size_t second_total = 0;
  for (std::size_t dz : spec.member_dims) {
    if (dz < 2) throw DegenerateSpec("orthogonal pairs need every member dimension >= 2");
    first_total += dz / 2;
    second_total += dz - dz / 2;
  }
  if (first_total < spec.module_len || second_total < spec.module_len) {
    throw DegenerateSpec("split target modules cannot span H for both families");
  }

  const std::size_t n = spec.algebra_dim;
  const std::size_t d = spec.module_len;
  SplitMix64 rng(spec.seed);
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    std::vector<AdjointableOp> fm;
    std::vector<AdjointableOp> gm;
    for (std::size_t dz : spec.member_dims) {
      const std::size_t half = dz / 2;
      CMatrix a = CMatrix::Zero(idx(n * d), idx(n * dz));
      CMatrix b = CMatrix::Zero(idx(n * d), idx(n * dz));
      a.leftCols(idx(n * half)) = random_complex_matrix(rng, idx(n * d), idx(n * half));
      b.rightCols(idx(n * (dz - half))) = random_complex_matrix(rng, idx(n * d), idx(n * (dz - half)));
      fm.emplace_back(n, std::move(a));
      gm.emplace_back(n, std::move(b));
    }
    GFrameFamily f;
    GFrameFamily g;
    if (condition_family(GFrameFamily(std::move(fm)), first, rng, f) &&
        condition_family(GFrameFamily(std::move(gm)), second, rng, g)) {
      verify_target(f, first);
      verify_target(g, second);
      if (op_norm(cross_operator(f, g)) > 1e-12) {
        throw InternalConsistencyError("orthogonal pair has a nonzero cross term");
      }
      return {std::move(f), std::move(g)};
    }
  }
  throw DegenerateSpec("could not draw a spanning orthogonal pair");
}

AdjointableOp gen_isometry(std::uint64_t seed, std::size_t algebra_dim, std::size_t module_len) {
  SplitMix64 rng(seed);
  AdjointableOp u(algebra_dim, random_unitary(rng, idx(algebra_dim * module_len)));
  if (!is_isometry(u, Tolerance{0.0, 1e-10})) throw InternalConsistencyError("generated operator is not an isometry");
  return u;
}

ScalarWeights gen_weights(std::uint64_t seed, std::size_t algebra_dim, std::size_t count, double lower,
                          double upper) {
  if (!(lower > 0.0) || !(upper > lower) || !std::isfinite(upper)) {
    throw BadRange("weights need 0 < A < B < inf");
  }
  SplitMix64 rng(seed);
  const auto n = idx(algebra_dim);
  auto draw = [&] {
    RVector s(n);
    for (Index i = 0; i < n; ++i) s(i) = std::sqrt(lower + (upper - lower) * (0.05 + 0.9 * rng.uniform()));
    const CMatrix u = random_unitary(rng, n);
    return AlgebraElement(u * s.cast<Complex>().asDiagonal() * u.adjoint());
  };
  ScalarWeights w;
  w.lower = lower;
  w.upper = upper;
  for (std::size_t k = 0; k < count; ++k) {
    w.thetas.push_back(draw());
    w.deltas.push_back(draw());
  }
  if (auto v = weights_violation(w); !v.empty()) throw InternalConsistencyError("generated weights: " + v);
  return w;
}

}  // namespace gframes
