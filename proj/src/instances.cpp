#include "gframes/instances.hpp"

#include <cmath>
#include <string>

#include "gframes/error.hpp"
#include "gframes/rng.hpp"
#include "gframes/stability.hpp"
#include "gframes/sums.hpp"

namespace gframes {

namespace {

using Index = Eigen::Index;

enum Salt : std::uint64_t { kFamily = 1, kSecond, kOps, kWeights, kPerturb, kIso };

GenSpec with_seed(GenSpec spec, std::uint64_t seed, std::uint64_t salt) {
  spec.seed = mix_seed(seed, salt);
  return spec;
}

Index dim_of(const GFrameFamily& f) { return static_cast<Index>(f.algebra_dim() * f.source_len()); }

AdjointableOp op_from(const GFrameFamily& f, CMatrix flat) { return AdjointableOp(f.algebra_dim(), std::move(flat)); }

CMatrix random_psd(SplitMix64& rng, Index k, Index rank) {
  const CMatrix a = random_complex_matrix(rng, k, rank);
  return a * a.adjoint();
}

/// Unitary U diag(s) V^* with singular values uniform in [lo, hi].
CMatrix random_with_singular_values(SplitMix64& rng, Index k, double lo, double hi) {
  const CMatrix u = random_unitary(rng, k);
  const CMatrix v = random_unitary(rng, k);
  RVector s(k);
  for (Index i = 0; i < k; ++i) s(i) = rng.uniform(lo, hi);
  return u * s.cast<Complex>().asDiagonal() * v.adjoint();
}

CMatrix inverse_pd(const CMatrix& m) {
  const CMatrix r = linalg::inv_sqrt_pd(m);
  return r * r;
}

/// G = F o (R S^{-1}) so that T_F T_G^* = R.
GFrameFamily with_cross(const GFrameFamily& f, const CMatrix& r) {
  const CMatrix s = frame_operator(f).flat();
  return f.precompose(op_from(f, r * inverse_pd(s)));
}

/// Family F + E with member perturbations of relative size eps.
GFrameFamily perturbed(const GFrameFamily& f, double eps, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<AdjointableOp> out;
  for (const auto& m : f.members()) {
    const CMatrix e = random_complex_matrix(rng, m.flat().rows(), m.flat().cols());
    const double scale = std::max(linalg::spectral_norm(m.flat()), 1e-3) / std::max(linalg::spectral_norm(e), 1e-300);
    out.emplace_back(f.algebra_dim(), m.flat() + eps * scale * e);
  }
  return GFrameFamily(std::move(out));
}

GFrameFamily scaled_to_upper(const GFrameFamily& g, double upper) {
  const double cur = optimal_bounds(g).upper;
  if (cur <= 0.0) return g;
  return g.scaled(std::sqrt(upper / cur));
}

GenTarget tight_target(double a) { return a == 1.0 ? GenTarget{target::Parseval{}} : GenTarget{target::Tight{a}}; }

const GFrameFamily& need_g(const Instance& inst) {
  if (!inst.g) throw ValidationError(std::string(to_string(inst.theorem)) + " needs a second family G");
  return *inst.g;
}

template <typename T>
const T& need(const std::optional<T>& v, const char* what, const Instance& inst) {
  if (!v) throw ValidationError(std::string(to_string(inst.theorem)) + " needs " + what);
  return *v;
}

}  // namespace

std::optional<FrameKind> expected_kind(const GenTarget& t) {
  if (std::holds_alternative<target::Parseval>(t)) return FrameKind::ParsevalFrame;
  if (const auto* tt = std::get_if<target::Tight>(&t)) {
    return std::abs(tt->nu - 1.0) <= kTightMargin ? FrameKind::ParsevalFrame : FrameKind::TightFrame;
  }
  if (const auto* b = std::get_if<target::Bounds>(&t)) {
    if (b->upper - b->lower > kTightMargin * b->upper) return FrameKind::Frame;
    return std::abs(b->lower - 1.0) <= kTightMargin ? FrameKind::ParsevalFrame : FrameKind::TightFrame;
  }
  return std::nullopt;
}

TheoremReport classify_check(const GFrameFamily& f, std::optional<FrameKind> expect, const CheckOptions& opts) {
  TheoremReport r;
  r.theorem_id = TheoremId::Classify;
  const Classification c = classify(f, opts.tol);
  r.achieved = c.bounds;
  r.classification = c.kind;
  r.conclusion_checks.push_back({"synthesis surjective <=> S > 0", lemma33_check(f, opts.tol), c.bounds.lower,
                                 frame_threshold(c.bounds.upper, opts.tol)});
  if (expect) {
    r.conclusion_checks.push_back({std::string("classification is ") + std::string(to_string(*expect)),
                                   c.kind == *expect, c.bounds.lower, c.bounds.upper});
  }
  r.note = std::string(to_string(c.kind));
  r.verdict = decide(r.hypothesis_checks, r.conclusion_checks);
  return r;
}

Instance make_instance(TheoremId id, const InstanceParams& p, std::uint64_t seed) {
  Instance inst;
  inst.theorem = id;
  const GenSpec& base = p.spec;
  SplitMix64 rng(mix_seed(seed, kOps));

  auto family = [&] { return gen_family(with_seed(base, seed, kFamily)); };
  auto weights = [&] {
    return gen_weights(mix_seed(seed, kWeights), base.algebra_dim, base.member_dims.size(), p.weight_lower,
                       p.weight_upper);
  };

  switch (id) {
    case TheoremId::Classify: {
      inst.f = family();
      inst.expect = expected_kind(base.target);
      break;
    }
    case TheoremId::PerturbLambda: {
      inst.f = family();
      const Index k = dim_of(inst.f);
      const CMatrix s = frame_operator(inst.f).flat();
      const CMatrix u = random_unitary(rng, k);
      const CMatrix v = random_unitary(rng, k);
      RVector q(k);
      for (Index i = 0; i < k; ++i) q(i) = 1.0 + rng.uniform(0.0, 0.5);
      const CMatrix qm = u * q.cast<Complex>().asDiagonal() * v.adjoint();
      const CMatrix ipl = linalg::sqrt_psd(s) * qm * linalg::inv_sqrt_pd(s);
      inst.lambda_op = op_from(inst.f, ipl - CMatrix::Identity(k, k));
      break;
    }
    case TheoremId::T3Equiv: {
      GenSpec spec = base;
      spec.target = target::Random{};
      inst.f = gen_family(with_seed(spec, seed, kFamily));
      inst.g = gen_family(with_seed(spec, seed, kSecond));
      const Index k = dim_of(inst.f);
      CMatrix m = random_complex_matrix(rng, k, k);
      CMatrix n = random_complex_matrix(rng, k, k);
      if (seed % 3 == 0) {
        // Shared kernel: both M and N annihilate one direction.
        Eigen::VectorXcd v = random_complex_matrix(rng, k, 1);
        v.normalize();
        const CMatrix proj = CMatrix::Identity(k, k) - v * v.adjoint();
        m = proj * m;
        n = proj * n;
      }
      inst.m = op_from(inst.f, m);
      inst.n = op_from(inst.f, n);
      break;
    }
    case TheoremId::T3Corollary: {
      inst.f = family();
      const Index k = dim_of(inst.f);
      if (seed % 4 == 0) {
        inst.g = inst.f.scaled(rng.uniform(0.2, 2.0));
      } else {
        const Index rank = 1 + static_cast<Index>(rng.next() % static_cast<std::uint64_t>(k));
        inst.g = with_cross(inst.f, random_psd(rng, k, rank) / static_cast<double>(k));
      }
      break;
    }
    case TheoremId::T7Scalar: {
      inst.f = family();
      inst.weights = weights();
      GenSpec spec = base;
      spec.target = target::Random{};
      const double d = optimal_bounds(inst.f).lower;
      const double ratio = rng.uniform(0.05, 0.8);
      inst.g = scaled_to_upper(gen_family(with_seed(spec, seed, kSecond)),
                               ratio * p.weight_lower * d / p.weight_upper);
      break;
    }
    case TheoremId::T11Positive: {
      inst.f = family();
      const Index k = dim_of(inst.f);
      inst.g = with_cross(inst.f, random_psd(rng, k, k) / static_cast<double>(k) +
                                      0.1 * CMatrix::Identity(k, k));
      ScalarWeights w = weights();
      w.deltas = w.thetas;
      inst.weights = w;
      break;
    }
    case TheoremId::TightSum: {
      auto [f, g] = gen_orthogonal_pair(with_seed(base, seed, kFamily), tight_target(p.tight_alphas.first),
                                        tight_target(p.tight_alphas.second));
      inst.f = std::move(f);
      inst.g = std::move(g);
      break;
    }
    case TheoremId::IsometrySum: {
      inst.f = family();
      const Index k = dim_of(inst.f);
      if (seed % 4 == 0) {
        inst.g = inst.f.zero_like();
      } else {
        const Index rank = 1 + static_cast<Index>(rng.next() % static_cast<std::uint64_t>(k));
        inst.g = with_cross(inst.f, random_psd(rng, k, rank) / static_cast<double>(k));
      }
      inst.lambda_op = gen_isometry(mix_seed(seed, kIso), base.algebra_dim, base.module_len);
      break;
    }
    case TheoremId::LambdaLower: {
      inst.f = family();
      const Index k = dim_of(inst.f);
      GenSpec spec = base;
      spec.target = target::Random{};
      const double d = optimal_bounds(inst.f).lower;
      inst.g = scaled_to_upper(gen_family(with_seed(spec, seed, kSecond)), rng.uniform(0.05, 0.5) * d);
      const CMatrix n = random_with_singular_values(rng, k, 0.5, 1.5);
      const double smin = linalg::bounded_below_constant(n);
      const CMatrix extra = random_psd(rng, k, k) * (rng.uniform(0.0, 1.0) / static_cast<double>(k));
      inst.m = op_from(inst.f, linalg::sqrt_psd(n * n.adjoint() + extra));
      inst.n = op_from(inst.f, n);
      inst.lambda = 0.9 * smin;
      break;
    }
    case TheoremId::TightMN: {
      auto [f, g] = gen_orthogonal_pair(with_seed(base, seed, kFamily), tight_target(p.tight_alphas.first),
                                        tight_target(p.tight_alphas.second));
      inst.f = std::move(f);
      inst.g = std::move(g);
      const Index k = dim_of(inst.f);
      const auto [a1, a2] = p.tight_alphas;
      CMatrix m = random_complex_matrix(rng, k, k);
      if (seed % 2 == 0) {
        const double alpha = rng.uniform(0.5, 2.0);
        m *= std::sqrt(0.5 * alpha / a1) / linalg::spectral_norm(m);
        const CMatrix rest = (alpha * CMatrix::Identity(k, k) - a1 * m * m.adjoint()) / a2;
        inst.m = op_from(inst.f, m);
        inst.n = op_from(inst.f, linalg::sqrt_psd(rest));
      } else {
        inst.m = op_from(inst.f, m);
        inst.n = op_from(inst.f, random_complex_matrix(rng, k, k));
      }
      break;
    }
    case TheoremId::PropMixed:
    case TheoremId::ThmDifference: {
      inst.f = family();
      inst.weights = weights();
      inst.alphas = p.alphas;
      double eps = p.perturbation;
      const CheckOptions probe{};
      for (int attempt = 0; attempt < 40; ++attempt, eps *= 0.5) {
        inst.g = perturbed(inst.f, eps, mix_seed(seed, kPerturb + static_cast<std::uint64_t>(attempt)));
        const auto r = id == TheoremId::PropMixed
                           ? prop_mixed_check(inst.f, *inst.g, *inst.weights, p.alphas.first, p.alphas.second,
                                              {probe.tol, seed, probe.samples})
                           : difference_check(inst.f, *inst.g, *inst.weights, p.alphas.first, p.alphas.second,
                                              {probe.tol, seed, probe.samples});
        if (r.verdict != Verdict::HypothesisFails) break;
      }
      break;
    }
    case TheoremId::T12Operator: {
      inst.f = family();
      const Index k = dim_of(inst.f);
      const FrameBounds b = optimal_bounds(inst.f);
      const double budget = 0.9 * (b.lower / b.upper) / static_cast<double>(inst.f.size());
      for (const auto& mem : inst.f.members()) {
        const CMatrix psi = mem.flat() * mem.flat().adjoint();
        const double share = budget * rng.uniform(0.0, 1.0);
        CMatrix e;
        if (rng.uniform() < 0.5) {
          e = random_psd(rng, k, 1 + static_cast<Index>(rng.next() % static_cast<std::uint64_t>(k)));
          e *= share / std::max(linalg::spectral_norm(e), 1e-300);
        } else {
          const double pn = linalg::spectral_norm(psi);
          e = -std::min(1.0, pn > 0.0 ? share / pn : 0.0) * psi;
        }
        inst.deltas.push_back(op_from(inst.f, psi + e));
      }
      break;
    }
    case TheoremId::FinalCorollary: {
      inst.f = family();
      const CMatrix sf = frame_operator(inst.f).flat();
      const double c = optimal_bounds(inst.f).lower;
      double eps = p.perturbation;
      double gap = 0.0;
      for (int attempt = 0; attempt < 40; ++attempt, eps *= 0.5) {
        inst.g = perturbed(inst.f, eps, mix_seed(seed, kPerturb + static_cast<std::uint64_t>(attempt)));
        gap = linalg::spectral_norm(sf - frame_operator(*inst.g).flat());
        if (gap < 0.5 * c) break;
      }
      inst.alpha = gap + 0.5 * (c - gap);
      break;
    }
  }
  return inst;
}

AnyReport run_instance(const Instance& inst, const CheckOptions& opts) {
  switch (inst.theorem) {
    case TheoremId::Classify:
      return classify_check(inst.f, inst.expect, opts);
    case TheoremId::PerturbLambda:
      return perturb_lambda(inst.f, need(inst.lambda_op, "Lambda", inst), opts).second;
    case TheoremId::T3Equiv:
      return op_weighted_sum(inst.f, need_g(inst), need(inst.m, "M", inst), need(inst.n, "N", inst), opts).second;
    case TheoremId::T3Corollary:
      return t3_corollary_check(inst.f, need_g(inst), opts);
    case TheoremId::T7Scalar:
      return scalar_weighted_sum(inst.f, need_g(inst), need(inst.weights, "weights", inst), opts).second;
    case TheoremId::T11Positive:
      return t11_check(inst.f, need_g(inst), need(inst.weights, "weights", inst), opts);
    case TheoremId::TightSum:
      return tight_sum_check(inst.f, need_g(inst), opts);
    case TheoremId::IsometrySum:
      return isometry_sum_check(inst.f, need_g(inst), need(inst.lambda_op, "Lambda", inst), opts);
    case TheoremId::LambdaLower:
      return lambda_lower_check(inst.f, need_g(inst), need(inst.m, "M", inst), need(inst.n, "N", inst),
                                need(inst.lambda, "lambda", inst), opts);
    case TheoremId::TightMN:
      return tight_mn_check(inst.f, need_g(inst), need(inst.m, "M", inst), need(inst.n, "N", inst), opts);
    case TheoremId::PropMixed: {
      const auto& a = need(inst.alphas, "alphas", inst);
      return prop_mixed_check(inst.f, need_g(inst), need(inst.weights, "weights", inst), a.first, a.second, opts);
    }
    case TheoremId::ThmDifference: {
      const auto& a = need(inst.alphas, "alphas", inst);
      return difference_check(inst.f, need_g(inst), need(inst.weights, "weights", inst), a.first, a.second, opts);
    }
    case TheoremId::T12Operator:
      if (!inst.deltas.empty()) return t12_check(inst.f, inst.deltas, opts);
      return t12_check(inst.f, need_g(inst), opts);
    case TheoremId::FinalCorollary:
      return final_corollary_check(inst.f, need_g(inst), need(inst.alpha, "alpha", inst), opts);
  }
  throw ValidationError("unknown theorem");
}

Verdict verdict_of(const AnyReport& r) {
  return std::visit([](const auto& rep) { return rep.verdict; }, r);
}

}  // namespace gframes
