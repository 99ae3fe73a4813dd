#include "gframes/stability.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "gframes/error.hpp"
#include "gframes/sums.hpp"

namespace gframes {

namespace {

void require_compatible(const GFrameFamily& f, const GFrameFamily& g) {
  if (f.algebra_dim() != g.algebra_dim() || f.source_len() != g.source_len() || f.size() != g.size() ||
      f.member_dims() != g.member_dims()) {
    throw DimensionMismatch("families must share the source module, size and member targets");
  }
}

void require_alphas(double a1, double a2) {
  auto inside = [](double a) { return a > 0.0 && a < 1.0; };
  if (!inside(a1) || !inside(a2)) {
    throw AlphaOutOfRange("alpha1 and alpha2 must lie in (0, 1), got " + std::to_string(a1) + ", " +
                          std::to_string(a2));
  }
}

void require_weights_shape(const GFrameFamily& f, const ScalarWeights& w) {
  if (w.thetas.size() != f.size() || w.deltas.size() != f.size()) {
    throw DimensionMismatch("one theta and one delta weight per family member expected");
  }
}

Check frame_check(std::string name, const FrameBounds& b, const Tolerance& tol) {
  const double thr = frame_threshold(b.upper, tol);
  return {std::move(name), b.lower > thr, b.lower, thr};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string compare_note(const std::pair<double, double>& claimed, const FrameBounds& achieved) {
  const bool lo_ok = claimed.first <= achieved.lower + bound_slack(claimed.first);
  const bool up_ok = claimed.second >= achieved.upper - bound_slack(claimed.second);
  return "stated bounds (" + fmt(claimed.first) + ", " + fmt(claimed.second) + ") vs achieved (" +
         fmt(achieved.lower) + ", " + fmt(achieved.upper) + "): lower " +
         (lo_ok ? "consistent" : "exceeds achieved") + ", upper " + (up_ok ? "consistent" : "below achieved");
}

/// X m X^* for a flattened module vector X.
CMatrix quad(const CMatrix& x, const CMatrix& m) { return x * m * x.adjoint(); }

/// Module vector whose first component row is u^* and the rest zero.
CMatrix rank_one(std::size_t n, const Eigen::VectorXcd& u) {
  CMatrix x = CMatrix::Zero(static_cast<Eigen::Index>(n), u.size());
  x.row(0) = u.adjoint();
  return x;
}

void finish(PerturbationReport& r) { r.verdict = decide(r.hypothesis_checks, r.conclusion_checks); }

}  // namespace

double max_subset_norm(const std::vector<CMatrix>& terms) {
  if (terms.empty()) return 0.0;
  const std::size_t k = terms.size();
  CMatrix acc = CMatrix::Zero(terms.front().rows(), terms.front().cols());
  std::vector<bool> in(k, false);
  double best = 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(acc.rows());
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t i = 1; i < total; ++i) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(i));
    if (in[bit]) {
      acc -= terms[bit];
    } else {
      acc += terms[bit];
    }
    in[bit] = !in[bit];
    es.compute(acc, Eigen::EigenvaluesOnly);
    best = std::max({best, std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(es.eigenvalues().size() - 1))});
  }
  return best;
}

PerturbationReport prop_mixed_check(const GFrameFamily& f, const GFrameFamily& g, const ScalarWeights& w,
                                    double alpha1, double alpha2, const CheckOptions& opts) {
  require_alphas(alpha1, alpha2);
  require_compatible(f, g);
  require_weights_shape(f, w);

  PerturbationReport r;
  r.theorem_id = TheoremId::PropMixed;
  r.alphas = std::pair{alpha1, alpha2};
  const FrameBounds fb = optimal_bounds(f);
  const std::string violation = weights_violation(w);
  r.hypothesis_checks.push_back(frame_check("F is a g-frame", fb, opts.tol));
  r.hypothesis_checks.push_back({"weights satisfy A < |w|^2 < B", violation.empty(), w.lower, w.upper});

  const CMatrix sa = frame_operator(weight_family(f, w.thetas)).flat();
  const CMatrix sb = frame_operator(weight_family(g, w.deltas)).flat();
  const std::size_t n = f.algebra_dim();

  std::vector<CMatrix> xs;
  for (const auto& x : sample_vectors(opts.seed, n, f.source_len(), opts.samples)) xs.push_back(x.flat());
  {
    Eigen::SelfAdjointEigenSolver<CMatrix> ea(sa);
    Eigen::SelfAdjointEigenSolver<CMatrix> eb(sb);
    for (Eigen::Index j = 0; j < sa.cols(); ++j) {
      xs.push_back(rank_one(n, ea.eigenvectors().col(j)));
      xs.push_back(rank_one(n, eb.eigenvectors().col(j)));
    }
    if (linalg::hermitian_eigenvalues(sa).minCoeff() > frame_threshold(linalg::spectral_norm(sa), opts.tol)) {
      Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> ge(sb, sa);
      for (Eigen::Index j = 0; j < sa.cols(); ++j) xs.push_back(rank_one(n, ge.eigenvectors().col(j)));
    }
  }

  bool all_pass = true;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& x : xs) {
    const double a = linalg::spectral_norm(quad(x, sa));
    const double b = linalg::spectral_norm(quad(x, sb));
    const double lhs = std::sqrt(std::max(a - b, 0.0));
    const double rhs = alpha1 * std::sqrt(a) + alpha2 * std::sqrt(b);
    if (lhs > rhs + opts.tol.slack(std::sqrt(a))) all_pass = false;
    if (lhs - rhs > worst) {
      worst = lhs - rhs;
      r.measured_lhs = lhs;
      r.allowed_rhs = rhs;
    }
  }
  r.hypothesis_checks.push_back({"(a - b)^{1/2} <= alpha1 a^{1/2} + alpha2 b^{1/2} on samples and witnesses",
                                 all_pass, r.measured_lhs, r.allowed_rhs});

  r.achieved = optimal_bounds(g);
  r.conclusion_checks.push_back(frame_check("G is a g-frame", r.achieved, opts.tol));

  const double c = fb.lower;
  const double d = fb.upper;
  const double num = (1.0 - alpha1) * (1.0 - alpha1);
  const double den = (1.0 + alpha2) * (1.0 + alpha2);
  r.claimed_bounds = std::pair{c * w.lower * num / (w.upper * den), w.upper * d * den / (w.lower * num)};
  r.bound_discrepancy_note = compare_note(*r.claimed_bounds, r.achieved);
  finish(r);
  return r;
}

PerturbationReport difference_check(const GFrameFamily& f, const GFrameFamily& g, const ScalarWeights& w,
                                    double alpha1, double alpha2, const CheckOptions& opts) {
  require_alphas(alpha1, alpha2);
  require_compatible(f, g);
  require_weights_shape(f, w);

  PerturbationReport r;
  r.theorem_id = TheoremId::ThmDifference;
  r.alphas = std::pair{alpha1, alpha2};
  const FrameBounds fb = optimal_bounds(f);
  const std::string violation = weights_violation(w);
  r.hypothesis_checks.push_back(frame_check("F is a g-frame", fb, opts.tol));
  r.hypothesis_checks.push_back({"weights satisfy A < |w|^2 < B", violation.empty(), w.lower, w.upper});

  const GFrameFamily wf = weight_family(f, w.thetas);
  const GFrameFamily wg = weight_family(g, w.deltas);
  const CMatrix sdiff = frame_operator(wf + wg.scaled(-1.0)).flat();
  const CMatrix bound = alpha1 * frame_operator(wf).flat() + alpha2 * frame_operator(wg).flat();
  const double scale = std::max(linalg::spectral_norm(bound), linalg::spectral_norm(sdiff));
  const double eps = opts.tol.slack(scale);

  const double low = linalg::hermitian_eigenvalues(bound - sdiff).minCoeff();
  r.hypothesis_checks.push_back({"S_diff <= alpha1 S_theta + alpha2 S_delta (spectral)", low >= -eps, low, -eps});

  bool sampled = true;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& x : sample_vectors(opts.seed, f.algebra_dim(), f.source_len(), opts.samples)) {
    const CMatrix lhs = quad(x.flat(), sdiff);
    const CMatrix rhs = quad(x.flat(), bound);
    const double m = linalg::hermitian_eigenvalues(rhs - lhs).minCoeff();
    const double e = opts.tol.slack(std::max(linalg::spectral_norm(lhs), linalg::spectral_norm(rhs)));
    worst = std::min(worst, m);
    if (m < -e) sampled = false;
  }
  r.hypothesis_checks.push_back({"S_diff <= alpha1 S_theta + alpha2 S_delta (sampled)", sampled, worst, 0.0});

  const RVector bev = linalg::hermitian_eigenvalues(bound);
  if (bev.minCoeff() > frame_threshold(bev.maxCoeff(), opts.tol)) {
    const CMatrix lhs = 0.5 * (sdiff + sdiff.adjoint());
    const CMatrix rhs = 0.5 * (bound + bound.adjoint());
    Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> ge(lhs, rhs, Eigen::EigenvaluesOnly);
    r.measured_lhs = std::max(ge.eigenvalues().maxCoeff(), 0.0);
    r.allowed_rhs = 1.0;
  } else {
    r.measured_lhs = linalg::spectral_norm(sdiff);
    r.allowed_rhs = linalg::spectral_norm(bound);
  }

  r.achieved = optimal_bounds(g);
  r.conclusion_checks.push_back(frame_check("G is a g-frame", r.achieved, opts.tol));

  const double c = fb.lower;
  const double d = fb.upper;
  const double top = (1.0 + 2.0 * std::sqrt(alpha2)) * (1.0 + 2.0 * std::sqrt(alpha2));
  const double bot = (1.0 - std::sqrt(alpha1)) * (1.0 - std::sqrt(alpha1));
  r.claimed_bounds = std::pair{c * w.lower * top / (w.upper * bot), d * w.upper * top / (c * bot)};
  r.bound_discrepancy_note =
      compare_note(*r.claimed_bounds, r.achieved) +
      "; the stated constants place (1+2 sqrt(alpha2))^2 in both numerators and write the upper estimate as a "
      "lower inequality, recorded verbatim and not asserted";
  finish(r);
  return r;
}

PerturbationReport t12_check(const GFrameFamily& f, const std::vector<AdjointableOp>& deltas,
                             const CheckOptions& opts) {
  if (deltas.size() != f.size()) throw DimensionMismatch("one Delta operator per family member expected");
  const auto dim = static_cast<Eigen::Index>(f.algebra_dim() * f.source_len());
  for (const auto& op : deltas) {
    if (op.algebra_dim() != f.algebra_dim() || op.source_len() != f.source_len() ||
        op.target_len() != f.source_len()) {
      throw DimensionMismatch("Delta operators must be square on the source module");
    }
  }

  PerturbationReport r;
  r.theorem_id = TheoremId::T12Operator;
  const AdjointableOp s = frame_operator(f);
  const FrameBounds fb = bounds_from_operator(s);
  const double c = fb.lower;
  const double d = fb.upper;
  r.hypothesis_checks.push_back(frame_check("F is a g-frame", fb, opts.tol));
  r.hypothesis_checks.push_back({"D > 1", d > 1.0, d, 1.0});

  bool all_pos = true;
  double worst_pos = std::numeric_limits<double>::infinity();
  CMatrix k = CMatrix::Zero(dim, dim);
  std::vector<CMatrix> terms;
  for (std::size_t z = 0; z < f.size(); ++z) {
    const CMatrix& op = deltas[z].flat();
    if (!linalg::is_positive(op, opts.tol)) all_pos = false;
    worst_pos = std::min(worst_pos, linalg::hermitian_eigenvalues(op).minCoeff());
    k += op;
    const CMatrix& m = f.member(z).flat();
    terms.push_back(m * m.adjoint() - op);
  }
  r.hypothesis_checks.push_back({"every Delta_k is positive", all_pos, worst_pos, 0.0});

  const double full = linalg::spectral_norm(s.flat() - k);
  const bool exhaustive = terms.size() <= kMaxSubsetMembers;
  r.measured_lhs = exhaustive ? max_subset_norm(terms) : full;
  r.allowed_rhs = d > 0.0 ? c / d : 0.0;
  r.hypothesis_checks.push_back({exhaustive ? "max_J ||sum_J (Psi^*Psi - Delta)|| <= C/D"
                                            : "||S - K|| <= C/D (full sum only)",
                                 r.measured_lhs <= r.allowed_rhs + opts.tol.slack(r.allowed_rhs), r.measured_lhs,
                                 r.allowed_rhs});

  const AdjointableOp kop(f.algebra_dim(), k);
  r.achieved = bounds_from_operator(kop);
  r.conclusion_checks.push_back(frame_check("K is invertible (perturbed family is a g-frame)", r.achieved, opts.tol));

  if (fb.lower > 0.0) {
    const AdjointableOp s_inv(f.algebra_dim(), linalg::inv_sqrt_pd(s.flat()) * linalg::inv_sqrt_pd(s.flat()));
    const CMatrix step = CMatrix::Identity(dim, dim) - compose(kop, s_inv).flat();
    const double neumann = linalg::spectral_norm(step);
    const double lim = d > 0.0 ? 1.0 / d : 0.0;
    r.conclusion_checks.push_back({"||I - K S^{-1}|| <= 1/D", neumann <= lim + bound_slack(lim), neumann, lim});
    if (neumann < 1.0) {
      r.conclusion_checks.push_back({"||I - K S^{-1}|| < 1 implies lambda_min(K) > 0", r.achieved.lower > 0.0,
                                     r.achieved.lower, 0.0});
    }
  }

  if (c > 0.0 && d > 0.0) {
    r.claimed_bounds = std::pair{(1.0 / c) * (d + 1.0) / d, c / d + d};
    std::string note = "stated ||K^-1|| <= " + fmt(r.claimed_bounds->first) + " vs measured " +
                       fmt(r.achieved.lower > 0.0 ? 1.0 / r.achieved.lower : std::numeric_limits<double>::infinity());
    if (d > 1.0) note += " (Neumann estimate gives " + fmt(d / (c * (d - 1.0))) + ")";
    note += "; stated upper " + fmt(r.claimed_bounds->second) + " vs achieved " + fmt(r.achieved.upper);
    if (!exhaustive) note += "; subset condition approximated by the full sum";
    r.bound_discrepancy_note = note;
  }
  finish(r);
  return r;
}

PerturbationReport t12_check(const GFrameFamily& f, const GFrameFamily& g, const CheckOptions& opts) {
  require_compatible(f, g);
  std::vector<AdjointableOp> deltas;
  deltas.reserve(g.size());
  for (const auto& m : g.members()) deltas.push_back(compose(adjoint_op(m), m));
  return t12_check(f, deltas, opts);
}

PerturbationReport final_corollary_check(const GFrameFamily& f, const GFrameFamily& g, double alpha,
                                         const CheckOptions& opts) {
  require_compatible(f, g);
  if (!(alpha > 0.0)) throw AlphaOutOfRange("alpha must be positive, got " + std::to_string(alpha));
  const AdjointableOp sf = frame_operator(f);
  const FrameBounds fb = bounds_from_operator(sf);
  const bool f_frame = classify_bounds(fb, opts.tol).is_frame();
  if (f_frame && alpha >= fb.lower) {
    throw AlphaOutOfRange("alpha must be below the lower frame bound " + std::to_string(fb.lower));
  }

  PerturbationReport r;
  r.theorem_id = TheoremId::FinalCorollary;
  r.hypothesis_checks.push_back(frame_check("F is a g-frame", fb, opts.tol));
  const AdjointableOp sg = frame_operator(g);
  r.measured_lhs = linalg::spectral_norm(sf.flat() - sg.flat());
  r.allowed_rhs = alpha;
  r.hypothesis_checks.push_back({"||S_F - S_G|| <= alpha", r.measured_lhs <= alpha, r.measured_lhs, alpha});

  r.achieved = bounds_from_operator(sg);
  r.conclusion_checks.push_back(frame_check("G is a g-frame", r.achieved, opts.tol));
  if (f_frame) {
    const auto dim = sf.flat().rows();
    const CMatrix inv = linalg::inv_sqrt_pd(sf.flat());
    const AdjointableOp sf_inv(f.algebra_dim(), inv * inv);
    const double step = linalg::spectral_norm(CMatrix::Identity(dim, dim) - compose(sg, sf_inv).flat());
    const double lim = alpha / fb.lower;
    r.conclusion_checks.push_back({"||I - S_G S_F^{-1}|| <= alpha/C < 1", step <= lim + bound_slack(lim) && lim < 1.0,
                                   step, lim});
  }
  finish(r);
  return r;
}

}  // namespace gframes
