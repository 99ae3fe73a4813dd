#include "gframes/sums.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gframes/error.hpp"
#include "gframes/rng.hpp"

namespace gframes {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_square_on(const AdjointableOp& t, const GFrameFamily& f, const char* what) {
  if (t.algebra_dim() != f.algebra_dim() || t.source_len() != f.source_len() ||
      t.target_len() != f.source_len()) {
    throw DimensionMismatch(std::string(what) + " must be a square operator on the source module");
  }
}

void require_compatible(const GFrameFamily& f, const GFrameFamily& g) {
  if (f.algebra_dim() != g.algebra_dim() || f.source_len() != g.source_len() || f.size() != g.size() ||
      f.member_dims() != g.member_dims()) {
    throw DimensionMismatch("families must share the source module, size and member targets");
  }
}

void require_weights_shape(const GFrameFamily& f, const ScalarWeights& w) {
  if (w.thetas.size() != f.size() || w.deltas.size() != f.size()) {
    throw DimensionMismatch("one theta and one delta weight per family member expected");
  }
  for (const auto* list : {&w.thetas, &w.deltas}) {
    for (const auto& a : *list) {
      if (a.dim() != f.algebra_dim()) throw DimensionMismatch("weight algebra dimension differs from family");
    }
  }
}

/// PSD test recorded as a check: measured = lambda_min of the Hermitian
/// part, limit = -slack. Non-Hermitian input fails.
Check psd_check(std::string name, const CMatrix& m, double scale, const Tolerance& tol) {
  const double eps = tol.slack(scale);
  const double asym = linalg::spectral_norm(m - m.adjoint());
  const double low = linalg::hermitian_eigenvalues(m).minCoeff();
  return {std::move(name), asym <= eps && low >= -eps, low, -eps};
}

Check frame_check(std::string name, const FrameBounds& b, const Tolerance& tol) {
  const double thr = frame_threshold(b.upper, tol);
  return {std::move(name), b.lower > thr, b.lower, thr};
}

Check lower_bound_check(const FrameBounds& achieved, double predicted) {
  const double lim = predicted - bound_slack(predicted);
  return {"achieved lower >= predicted lower", achieved.lower >= lim, achieved.lower, lim};
}

Check upper_bound_check(const FrameBounds& achieved, double predicted) {
  const double lim = predicted + bound_slack(predicted);
  return {"achieved upper <= predicted upper", achieved.upper <= lim, achieved.upper, lim};
}

/// Relative agreement of a closed-form frame operator with the direct one.
Check formula_check(const CMatrix& closed, const CMatrix& direct) {
  const double scale = std::max(1.0, linalg::spectral_norm(direct));
  const double diff = linalg::spectral_norm(closed - direct);
  return {"frame operator formula matches direct computation", diff <= 1e-10 * scale, diff, 1e-10 * scale};
}

CMatrix eye(const GFrameFamily& f) {
  const auto k = static_cast<Eigen::Index>(f.algebra_dim() * f.source_len());
  return CMatrix::Identity(k, k);
}

void finish(TheoremReport& r) { r.verdict = decide(r.hypothesis_checks, r.conclusion_checks); }

/// Tight constant of a family, NotTight if it is not tight.
double tight_constant(const GFrameFamily& f, const Tolerance& tol, const char* which) {
  const Classification c = classify(f, tol);
  if (c.kind != FrameKind::TightFrame && c.kind != FrameKind::ParsevalFrame) {
    throw NotTight(std::string(which) + " is not a tight g-frame (bounds " + std::to_string(c.bounds.lower) +
                   ", " + std::to_string(c.bounds.upper) + ")");
  }
  return 0.5 * (c.bounds.lower + c.bounds.upper);
}

Check orthogonality_check(const GFrameFamily& f, const GFrameFamily& g, double scale, const Tolerance& tol) {
  const double norm = op_norm(cross_operator(f, g));
  const double lim = tol.slack(scale);
  return {"||T_Psi T_Delta^*|| <= tol", norm <= lim, norm, lim};
}

}  // namespace

std::vector<ModuleVector> sample_vectors(std::uint64_t seed, std::size_t algebra_dim, std::size_t module_len,
                                         std::size_t count) {
  SplitMix64 rng(seed);
  std::vector<ModuleVector> out;
  out.reserve(count);
  const auto n = static_cast<Eigen::Index>(algebra_dim);
  for (std::size_t i = 0; i < count; ++i) {
    out.emplace_back(algebra_dim, random_complex_matrix(rng, n, n * static_cast<Eigen::Index>(module_len)));
  }
  return out;
}

std::pair<GFrameFamily, TheoremReport> perturb_lambda(const GFrameFamily& f, const AdjointableOp& lambda,
                                                      const CheckOptions& opts) {
  require_square_on(lambda, f, "Lambda");
  const AdjointableOp ipl = AdjointableOp::identity(f.algebra_dim(), f.source_len()) + lambda;
  GFrameFamily result = f.precompose(ipl);

  const AdjointableOp s = frame_operator(f);
  const CMatrix p = compose(adjoint_op(ipl), compose(s, ipl)).flat();
  const FrameBounds fb = bounds_from_operator(s);

  TheoremReport r;
  r.theorem_id = TheoremId::PerturbLambda;
  r.hypothesis_checks.push_back(frame_check("F is a g-frame", fb, opts.tol));
  r.hypothesis_checks.push_back(psd_check("(I+L)^* S (I+L) - S >= 0", p - s.flat(),
                                          std::max(linalg::spectral_norm(p), fb.upper), opts.tol));

  const double ln = op_norm(lambda);
  r.predicted_lower = fb.lower;
  r.predicted_upper = 2.0 * fb.upper * (1.0 + ln * ln);
  const AdjointableOp s_new = frame_operator(result);
  r.achieved = bounds_from_operator(s_new);

  r.conclusion_checks.push_back(frame_check("perturbed family is a g-frame", r.achieved, opts.tol));
  r.conclusion_checks.push_back(formula_check(p, s_new.flat()));
  r.conclusion_checks.push_back(lower_bound_check(r.achieved, *r.predicted_lower));
  r.conclusion_checks.push_back(upper_bound_check(r.achieved, *r.predicted_upper));
  finish(r);
  return {std::move(result), std::move(r)};
}

std::pair<GFrameFamily, TheoremReport> op_weighted_sum(const GFrameFamily& f, const GFrameFamily& g,
                                                       const AdjointableOp& m, const AdjointableOp& n,
                                                       const CheckOptions& opts) {
  require_compatible(f, g);
  require_square_on(m, f, "M");
  require_square_on(n, f, "N");
  GFrameFamily result = f.precompose(m) + g.precompose(n);

  const AdjointableOp md = adjoint_op(m);
  const AdjointableOp nd = adjoint_op(n);
  const AdjointableOp combined = compose(md, synthesis_op(f)) + compose(nd, synthesis_op(g));
  const AdjointableOp c = cross_operator(f, g);
  const AdjointableOp closed = compose(md, compose(frame_operator(f), m)) + compose(md, compose(c, n)) +
                               compose(nd, compose(adjoint_op(c), m)) +
                               compose(nd, compose(frame_operator(g), n));

  const FrameBounds fb = optimal_bounds(f);
  const FrameBounds gb = optimal_bounds(g);

  TheoremReport r;
  r.theorem_id = TheoremId::T3Equiv;
  r.hypothesis_checks.push_back({"F and G are g-Bessel", std::isfinite(fb.upper) && std::isfinite(gb.upper),
                                 std::max(fb.upper, gb.upper), kNaN});

  const AdjointableOp s_new = frame_operator(result);
  r.achieved = bounds_from_operator(s_new);
  const double mn = op_norm(m);
  const double nn = op_norm(n);
  r.predicted_upper = 2.0 * (fb.upper * mn * mn + gb.upper * nn * nn);

  const bool c1 = classify_bounds(r.achieved, opts.tol).is_frame();
  const bool c2 = is_surjective(combined, opts.tol);
  const FrameBounds cb = bounds_from_operator(closed);
  const bool c3 = cb.lower > frame_threshold(cb.upper, opts.tol);
  const double sigma = linalg::bounded_below_constant(combined.flat().adjoint());

  r.conclusion_checks.push_back({"(1) family is a g-frame <=> (2) combined synthesis surjective", c1 == c2,
                                 r.achieved.lower, sigma});
  r.conclusion_checks.push_back({"(2) combined synthesis surjective <=> (3) closed-form S > 0", c2 == c3, sigma,
                                 cb.lower});
  r.conclusion_checks.push_back({"(1) family is a g-frame <=> (3) closed-form S > 0", c1 == c3,
                                 r.achieved.lower, cb.lower});
  r.conclusion_checks.push_back(formula_check(closed.flat(), s_new.flat()));
  r.conclusion_checks.push_back(upper_bound_check(r.achieved, *r.predicted_upper));
  r.note = std::string("conditions: frame=") + (c1 ? "true" : "false") + " surjective=" + (c2 ? "true" : "false") +
           " positive=" + (c3 ? "true" : "false");
  finish(r);
  return {std::move(result), std::move(r)};
}

TheoremReport t3_corollary_check(const GFrameFamily& f, const GFrameFamily& g, const CheckOptions& opts) {
  require_compatible(f, g);
  const AdjointableOp c = cross_operator(f, g);
  const FrameBounds fb = optimal_bounds(f);
  const FrameBounds gb = optimal_bounds(g);
  const bool f_frame = classify_bounds(fb, opts.tol).is_frame();
  const bool g_frame = classify_bounds(gb, opts.tol).is_frame();

  TheoremReport r;
  r.theorem_id = TheoremId::T3Corollary;
  r.hypothesis_checks.push_back(
      psd_check("T_Psi T_Delta^* >= 0", c.flat(), std::max(fb.upper, gb.upper), opts.tol));
  r.hypothesis_checks.push_back({"F or G is a g-frame", f_frame || g_frame, std::max(fb.lower, gb.lower),
                                 frame_threshold(std::max(fb.upper, gb.upper), opts.tol)});

  const GFrameFamily sum = f + g;
  const AdjointableOp s_new = frame_operator(sum);
  r.achieved = bounds_from_operator(s_new);
  r.predicted_lower = fb.lower + gb.lower;
  r.predicted_upper = 2.0 * (fb.upper + gb.upper);
  const CMatrix closed = frame_operator(f).flat() + c.flat() + c.flat().adjoint() + frame_operator(g).flat();

  r.conclusion_checks.push_back(frame_check("sum is a g-frame", r.achieved, opts.tol));
  r.conclusion_checks.push_back(formula_check(closed, s_new.flat()));
  r.conclusion_checks.push_back(lower_bound_check(r.achieved, *r.predicted_lower));
  r.conclusion_checks.push_back(upper_bound_check(r.achieved, *r.predicted_upper));
  finish(r);
  return r;
}

std::pair<GFrameFamily, TheoremReport> scalar_weighted_sum(const GFrameFamily& f, const GFrameFamily& g,
                                                           const ScalarWeights& w, const CheckOptions& opts) {
  require_compatible(f, g);
  require_weights_shape(f, w);
  GFrameFamily result = weight_family(f, w.thetas) + weight_family(g, w.deltas);

  const FrameBounds fb = optimal_bounds(f);
  const double d_lo = fb.lower;
  const double d_up = fb.upper;
  const double d_delta = optimal_bounds(g).upper;

  TheoremReport r;
  r.theorem_id = TheoremId::T7Scalar;
  const std::string violation = weights_violation(w);
  r.hypothesis_checks.push_back({"weights satisfy A < |w|^2 < B", violation.empty(), w.lower, w.upper});
  r.hypothesis_checks.push_back(frame_check("F is a g-frame", fb, opts.tol));
  r.hypothesis_checks.push_back({"B D_Delta < A D", w.upper * d_delta < w.lower * d_lo, w.upper * d_delta,
                                 w.lower * d_lo});

  r.achieved = optimal_bounds(result);
  const double gap = std::sqrt(w.lower * d_lo) - std::sqrt(w.upper * d_delta);
  r.predicted_lower = gap * gap;
  r.predicted_upper = 2.0 * w.upper * (d_delta + d_up);

  r.conclusion_checks.push_back(frame_check("weighted sum is a g-frame", r.achieved, opts.tol));
  r.conclusion_checks.push_back(lower_bound_check(r.achieved, *r.predicted_lower));
  r.conclusion_checks.push_back(upper_bound_check(r.achieved, *r.predicted_upper));
  if (!violation.empty()) r.note = violation;
  finish(r);
  return {std::move(result), std::move(r)};
}

TheoremReport t11_check(const GFrameFamily& f, const GFrameFamily& g, const ScalarWeights& w,
                        const CheckOptions& opts) {
  require_compatible(f, g);
  require_weights_shape(f, w);
  const FrameBounds fb = optimal_bounds(f);
  const FrameBounds gb = optimal_bounds(g);

  TheoremReport r;
  r.theorem_id = TheoremId::T11Positive;
  const std::string violation = weights_violation(w);
  r.hypothesis_checks.push_back({"weights satisfy A < |w|^2 < B", violation.empty(), w.lower, w.upper});
  r.hypothesis_checks.push_back(frame_check("F is a g-frame", fb, opts.tol));
  r.hypothesis_checks.push_back(frame_check("G is a g-frame", gb, opts.tol));
  r.hypothesis_checks.push_back(psd_check("T_Psi T_Delta^* >= 0", cross_operator(f, g).flat(),
                                          std::max(fb.upper, gb.upper), opts.tol));

  const GFrameFamily result = weight_family(f, w.thetas) + weight_family(g, w.deltas);
  r.achieved = optimal_bounds(result);
  r.predicted_lower = w.lower * (fb.lower + gb.lower);
  r.predicted_upper = 2.0 * w.upper * (fb.upper + gb.upper);

  r.conclusion_checks.push_back(frame_check("weighted sum is a g-frame", r.achieved, opts.tol));
  r.conclusion_checks.push_back(lower_bound_check(r.achieved, *r.predicted_lower));
  r.conclusion_checks.push_back(upper_bound_check(r.achieved, *r.predicted_upper));
  if (!violation.empty()) r.note = violation;
  finish(r);
  return r;
}

TheoremReport tight_sum_check(const GFrameFamily& f, const GFrameFamily& g, const CheckOptions& opts) {
  require_compatible(f, g);
  const double a1 = tight_constant(f, opts.tol, "F");
  const double a2 = tight_constant(g, opts.tol, "G");
  const double target = a1 + a2;

  TheoremReport r;
  r.theorem_id = TheoremId::TightSum;
  r.hypothesis_checks.push_back(orthogonality_check(f, g, std::max(a1, a2), opts.tol));

  r.achieved = optimal_bounds(f + g);
  r.predicted_lower = target;
  r.predicted_upper = target;
  const double lim = bound_slack(target);
  const double nu = 0.5 * (r.achieved.lower + r.achieved.upper);
  r.conclusion_checks.push_back({"sum is tight", r.achieved.tight, r.achieved.upper - r.achieved.lower,
                                 kTightMargin * r.achieved.upper});
  r.conclusion_checks.push_back(
      {"|tight constant - (alpha1 + alpha2)| <= tol", std::abs(nu - target) <= lim, std::abs(nu - target), lim});
  r.note = "alpha1=" + std::to_string(a1) + " alpha2=" + std::to_string(a2);
  finish(r);
  return r;
}

TheoremReport isometry_sum_check(const GFrameFamily& f, const GFrameFamily& g, const AdjointableOp& lambda,
                                 const CheckOptions& opts) {
  require_compatible(f, g);
  require_square_on(lambda, f, "Lambda");
  const FrameBounds fb = optimal_bounds(f);
  const FrameBounds gb = optimal_bounds(g);

  TheoremReport r;
  r.theorem_id = TheoremId::IsometrySum;
  r.hypothesis_checks.push_back(frame_check("F is a g-frame", fb, opts.tol));
  r.hypothesis_checks.push_back(psd_check("T_Psi T_Delta^* >= 0", cross_operator(f, g).flat(),
                                          std::max(fb.upper, gb.upper), opts.tol));
  const CMatrix gram = compose(adjoint_op(lambda), lambda).flat();
  r.hypothesis_checks.push_back({"Lambda is an isometry", is_isometry(lambda, opts.tol),
                                 linalg::spectral_norm(gram - eye(f)), opts.tol.abs + opts.tol.rel});

  const GFrameFamily result = (f + g).precompose(lambda);
  r.achieved = optimal_bounds(result);
  r.predicted_lower = fb.lower;
  r.predicted_upper = 2.0 * (fb.upper + gb.upper);

  r.conclusion_checks.push_back(frame_check("composed sum is a g-frame", r.achieved, opts.tol));
  r.conclusion_checks.push_back(lower_bound_check(r.achieved, *r.predicted_lower));
  r.conclusion_checks.push_back(upper_bound_check(r.achieved, *r.predicted_upper));
  finish(r);
  return r;
}

TheoremReport lambda_lower_check(const GFrameFamily& f, const GFrameFamily& g, const AdjointableOp& m,
                                 const AdjointableOp& n, double lambda, const CheckOptions& opts) {
  require_compatible(f, g);
  require_square_on(m, f, "M");
  require_square_on(n, f, "N");
  const FrameBounds fb = optimal_bounds(f);
  const double d = fb.lower;
  const double d_delta = optimal_bounds(g).upper;

  TheoremReport r;
  r.theorem_id = TheoremId::LambdaLower;
  r.hypothesis_checks.push_back({"lambda > 0", lambda > 0.0, lambda, 0.0});
  r.hypothesis_checks.push_back(frame_check("F is a g-frame", fb, opts.tol));
  r.hypothesis_checks.push_back({"D_Delta < D", d_delta < d, d_delta, d});

  const double sigma = lower_norm_bound(n);
  r.hypothesis_checks.push_back({"||Nx|| > lambda ||x|| (spectral)", sigma > lambda, sigma, lambda});

  const auto xs = sample_vectors(opts.seed, f.algebra_dim(), f.source_len(), opts.samples);
  double worst_ratio = std::numeric_limits<double>::infinity();
  double worst_dom = std::numeric_limits<double>::infinity();
  bool sampled_lower = true;
  bool sampled_dom = true;
  for (const auto& x : xs) {
    const double nx = scalar_norm(x);
    if (nx == 0.0) continue;
    const double nn = scalar_norm(apply(n, x));
    const double mm = scalar_norm(apply(m, x));
    worst_ratio = std::min(worst_ratio, nn / nx);
    worst_dom = std::min(worst_dom, mm - nn);
    if (!(nn > lambda * nx)) sampled_lower = false;
    if (mm < nn - opts.tol.slack(std::max(mm, nn))) sampled_dom = false;
  }
  r.hypothesis_checks.push_back({"||Nx|| > lambda ||x|| (sampled)", sampled_lower, worst_ratio, lambda});

  const CMatrix fm = m.flat();
  const CMatrix fn = n.flat();
  const CMatrix dom = fm * fm.adjoint() - fn * fn.adjoint();
  const double dom_scale = std::max(linalg::spectral_norm(fm * fm.adjoint()), 1.0);
  r.hypothesis_checks.push_back(psd_check("M^*M - N^*N >= 0 (auxiliary, spectral)", dom, dom_scale, opts.tol));
  r.hypothesis_checks.push_back({"||Mx|| >= ||Nx|| (auxiliary, sampled)", sampled_dom, worst_dom, 0.0});

  const GFrameFamily result = f.precompose(m) + g.precompose(n);
  r.achieved = optimal_bounds(result);
  const double gap = std::sqrt(d) - std::sqrt(d_delta);
  r.predicted_lower = lambda * lambda * gap * gap;
  const double mn = op_norm(m);
  const double nn = op_norm(n);
  r.predicted_upper = 2.0 * (fb.upper * mn * mn + d_delta * nn * nn);

  r.conclusion_checks.push_back(frame_check("family is a g-frame", r.achieved, opts.tol));
  r.conclusion_checks.push_back(lower_bound_check(r.achieved, *r.predicted_lower));
  r.conclusion_checks.push_back(upper_bound_check(r.achieved, *r.predicted_upper));
  finish(r);
  return r;
}

TheoremReport tight_mn_check(const GFrameFamily& f, const GFrameFamily& g, const AdjointableOp& m,
                             const AdjointableOp& n, const CheckOptions& opts) {
  require_compatible(f, g);
  require_square_on(m, f, "M");
  require_square_on(n, f, "N");
  const double a1 = tight_constant(f, opts.tol, "F");
  const double a2 = tight_constant(g, opts.tol, "G");

  TheoremReport r;
  r.theorem_id = TheoremId::TightMN;
  r.hypothesis_checks.push_back(orthogonality_check(f, g, std::max(a1, a2), opts.tol));

  const CMatrix q = a1 * m.flat() * m.flat().adjoint() + a2 * n.flat() * n.flat().adjoint();
  const double dim = static_cast<double>(q.rows());
  const double alpha = q.trace().real() / dim;
  const double qn = linalg::spectral_norm(q);
  const double margin = kTightMargin * std::max(1.0, qn);
  const double residual = linalg::spectral_norm(q - alpha * eye(f));
  const bool condition = alpha > 0.0 && residual <= 0.25 * kTightMargin * qn;

  r.achieved = optimal_bounds(f.precompose(m) + g.precompose(n));
  const bool sum_tight = r.achieved.tight && classify_bounds(r.achieved, opts.tol).is_frame();
  const double nu = 0.5 * (r.achieved.lower + r.achieved.upper);
  if (condition) {
    r.predicted_lower = alpha;
    r.predicted_upper = alpha;
  }

  const double gap = condition ? std::abs(nu - alpha) : 0.0;
  r.conclusion_checks.push_back({"a1 M^*M + a2 N^*N = alpha I  =>  sum is alpha-tight",
                                 !condition || (sum_tight && gap <= margin), gap, margin});
  const double back = sum_tight ? linalg::spectral_norm(q - nu * eye(f)) : 0.0;
  r.conclusion_checks.push_back({"sum is alpha-tight  =>  a1 M^*M + a2 N^*N = alpha I",
                                 !sum_tight || back <= margin, back, margin});
  r.note = std::string("condition ") + (condition ? "holds" : "fails") + " (alpha=" + std::to_string(alpha) +
           ", residual=" + std::to_string(residual) + "); sum " + (sum_tight ? "tight" : "not tight");
  finish(r);
  return r;
}

}  // namespace gframes
