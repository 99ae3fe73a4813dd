#include "gframes/weights.hpp"

#include <sstream>

#include "gframes/error.hpp"

namespace gframes {

namespace {

std::string check_one(const AlgebraElement& a, double lower, double upper, const char* name, std::size_t k) {
  const RVector ev = linalg::hermitian_eigenvalues(a.entries().adjoint() * a.entries());
  if (ev.minCoeff() > lower && ev.maxCoeff() < upper) return {};
  std::ostringstream os;
  os << name << "[" << k << "]: spectrum of |w|^2 is [" << ev.minCoeff() << ", " << ev.maxCoeff()
     << "], outside (" << lower << ", " << upper << ")";
  return os.str();
}

}  // namespace

std::string weights_violation(const ScalarWeights& w) {
  if (!(w.lower > 0.0) || !(w.upper > w.lower)) return "weight bracket must satisfy 0 < A < B";
  if (w.thetas.size() != w.deltas.size()) return "theta and delta sequences differ in length";
  for (std::size_t k = 0; k < w.thetas.size(); ++k) {
    if (auto v = check_one(w.thetas[k], w.lower, w.upper, "theta", k); !v.empty()) return v;
    if (auto v = check_one(w.deltas[k], w.lower, w.upper, "delta", k); !v.empty()) return v;
  }
  return {};
}

GFrameFamily weight_family(const GFrameFamily& f, const std::vector<AlgebraElement>& weights) {
  if (weights.size() != f.size()) {
    throw DimensionMismatch("weight sequence length " + std::to_string(weights.size()) +
                            " does not match family size " + std::to_string(f.size()));
  }
  std::vector<AdjointableOp> out;
  out.reserve(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const AdjointableOp& m = f.member(k);
    out.push_back(compose(AdjointableOp::block_diagonal(weights[k], m.target_len()), m));
  }
  return GFrameFamily(std::move(out));
}

}  // namespace gframes
