#include "gframes/hmodule.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "gframes/error.hpp"

namespace gframes {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t v) { return static_cast<Index>(v); }

std::string shape(const CMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

ModuleVector::ModuleVector(const std::vector<AlgebraElement>& components) {
  if (components.empty()) throw DimensionMismatch("module vector needs at least one component");
  n_ = components.front().dim();
  flat_.resize(idx(n_), idx(n_ * components.size()));
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].dim() != n_) {
      throw DimensionMismatch("module vector components have different algebra dimensions");
    }
    flat_.block(0, idx(i * n_), idx(n_), idx(n_)) = components[i].entries();
  }
}

ModuleVector::ModuleVector(std::size_t algebra_dim, CMatrix flat) : n_(algebra_dim), flat_(std::move(flat)) {
  if (n_ == 0 || flat_.rows() != idx(n_) || flat_.cols() == 0 || flat_.cols() % idx(n_) != 0) {
    throw DimensionMismatch("flattened module vector has shape " + shape(flat_) +
                            ", incompatible with algebra dimension " + std::to_string(n_));
  }
}

ModuleVector ModuleVector::zero(std::size_t algebra_dim, std::size_t length) {
  return ModuleVector(algebra_dim, CMatrix::Zero(idx(algebra_dim), idx(algebra_dim * length)));
}

AlgebraElement ModuleVector::component(std::size_t i) const {
  if (i >= length()) throw DimensionMismatch("module vector component index out of range");
  return AlgebraElement(flat_.block(0, idx(i * n_), idx(n_), idx(n_)));
}

std::vector<AlgebraElement> ModuleVector::components() const {
  std::vector<AlgebraElement> out;
  out.reserve(length());
  for (std::size_t i = 0; i < length(); ++i) out.push_back(component(i));
  return out;
}

ModuleVector operator+(const ModuleVector& x, const ModuleVector& y) {
  if (x.n_ != y.n_ || x.length() != y.length()) throw DimensionMismatch("module vector sum shape mismatch");
  return ModuleVector(x.n_, x.flat_ + y.flat_);
}

ModuleVector operator-(const ModuleVector& x, const ModuleVector& y) {
  if (x.n_ != y.n_ || x.length() != y.length()) throw DimensionMismatch("module vector difference shape mismatch");
  return ModuleVector(x.n_, x.flat_ - y.flat_);
}

ModuleVector operator*(const AlgebraElement& a, const ModuleVector& x) {
  if (a.dim() != x.n_) throw DimensionMismatch("module action: algebra dimension mismatch");
  return ModuleVector(x.n_, a.entries() * x.flat_);
}

AdjointableOp::AdjointableOp(const std::vector<std::vector<AlgebraElement>>& blocks) {
  if (blocks.empty() || blocks.front().empty()) throw DimensionMismatch("operator needs at least one block");
  const std::size_t d = blocks.size();
  const std::size_t dp = blocks.front().size();
  n_ = blocks.front().front().dim();
  flat_.resize(idx(n_ * d), idx(n_ * dp));
  for (std::size_t i = 0; i < d; ++i) {
    if (blocks[i].size() != dp) throw DimensionMismatch("operator block rows have different lengths");
    for (std::size_t j = 0; j < dp; ++j) {
      if (blocks[i][j].dim() != n_) throw DimensionMismatch("operator blocks have different algebra dimensions");
      flat_.block(idx(i * n_), idx(j * n_), idx(n_), idx(n_)) = blocks[i][j].entries();
    }
  }
}

AdjointableOp::AdjointableOp(std::size_t algebra_dim, CMatrix flat) : n_(algebra_dim), flat_(std::move(flat)) {
  if (n_ == 0 || flat_.rows() == 0 || flat_.cols() == 0 || flat_.rows() % idx(n_) != 0 ||
      flat_.cols() % idx(n_) != 0) {
    throw DimensionMismatch("flattened operator has shape " + shape(flat_) +
                            ", incompatible with algebra dimension " + std::to_string(n_));
  }
  if (!flat_.allFinite()) throw ValidationError("operator has non-finite entries");
}

AdjointableOp AdjointableOp::identity(std::size_t algebra_dim, std::size_t len) {
  const auto k = idx(algebra_dim * len);
  return AdjointableOp(algebra_dim, CMatrix::Identity(k, k));
}

AdjointableOp AdjointableOp::zero(std::size_t algebra_dim, std::size_t source_len, std::size_t target_len) {
  return AdjointableOp(algebra_dim, CMatrix::Zero(idx(algebra_dim * source_len), idx(algebra_dim * target_len)));
}

AdjointableOp AdjointableOp::block_diagonal(const AlgebraElement& a, std::size_t len) {
  const std::size_t n = a.dim();
  CMatrix flat = CMatrix::Zero(idx(n * len), idx(n * len));
  for (std::size_t i = 0; i < len; ++i) flat.block(idx(i * n), idx(i * n), idx(n), idx(n)) = a.entries();
  return AdjointableOp(n, std::move(flat));
}

AlgebraElement AdjointableOp::block(std::size_t i, std::size_t j) const {
  if (i >= source_len() || j >= target_len()) throw DimensionMismatch("operator block index out of range");
  return AlgebraElement(flat_.block(idx(i * n_), idx(j * n_), idx(n_), idx(n_)));
}

std::vector<std::vector<AlgebraElement>> AdjointableOp::blocks() const {
  std::vector<std::vector<AlgebraElement>> out(source_len());
  for (std::size_t i = 0; i < source_len(); ++i) {
    out[i].reserve(target_len());
    for (std::size_t j = 0; j < target_len(); ++j) out[i].push_back(block(i, j));
  }
  return out;
}

namespace {

void require_same_shape(const AdjointableOp& a, const AdjointableOp& b, const char* what) {
  if (a.algebra_dim() != b.algebra_dim() || a.source_len() != b.source_len() ||
      a.target_len() != b.target_len()) {
    throw DimensionMismatch(std::string(what) + ": operator shapes differ (" + shape(a.flat()) + " vs " +
                            shape(b.flat()) + ")");
  }
}

}  // namespace

AdjointableOp operator+(const AdjointableOp& a, const AdjointableOp& b) {
  require_same_shape(a, b, "operator sum");
  return AdjointableOp(a.n_, a.flat_ + b.flat_);
}

AdjointableOp operator-(const AdjointableOp& a, const AdjointableOp& b) {
  require_same_shape(a, b, "operator difference");
  return AdjointableOp(a.n_, a.flat_ - b.flat_);
}

AdjointableOp operator*(Complex c, const AdjointableOp& t) { return AdjointableOp(t.n_, c * t.flat_); }

AlgebraElement inner_product(const ModuleVector& x, const ModuleVector& y) {
  if (x.algebra_dim() != y.algebra_dim() || x.length() != y.length()) {
    throw DimensionMismatch("inner product of vectors with different shapes");
  }
  return AlgebraElement(x.flat() * y.flat().adjoint());
}

double scalar_norm(const ModuleVector& x) {
  return std::sqrt(linalg::spectral_norm(x.flat() * x.flat().adjoint()));
}

ModuleVector apply(const AdjointableOp& t, const ModuleVector& x) {
  if (t.algebra_dim() != x.algebra_dim() || t.source_len() != x.length()) {
    throw DimensionMismatch("apply: operator source length " + std::to_string(t.source_len()) +
                            " does not match vector length " + std::to_string(x.length()));
  }
  return ModuleVector(x.algebra_dim(), x.flat() * t.flat());
}

AdjointableOp adjoint_op(const AdjointableOp& t) { return AdjointableOp(t.algebra_dim(), t.flat().adjoint()); }

AdjointableOp compose(const AdjointableOp& t2, const AdjointableOp& t1) {
  if (t1.algebra_dim() != t2.algebra_dim() || t1.target_len() != t2.source_len()) {
    throw DimensionMismatch("compose: target length " + std::to_string(t1.target_len()) +
                            " does not match source length " + std::to_string(t2.source_len()));
  }
  return AdjointableOp(t1.algebra_dim(), t1.flat() * t2.flat());
}

double op_norm(const AdjointableOp& t) { return linalg::spectral_norm(t.flat()); }

double lower_norm_bound(const AdjointableOp& t) { return linalg::bounded_below_constant(t.flat()); }

bool is_surjective(const AdjointableOp& t, const Tolerance& tol) {
  const double sigma = linalg::bounded_below_constant(t.flat().adjoint());
  return sigma > tol.slack(op_norm(t));
}

bool is_isometry(const AdjointableOp& t, const Tolerance& tol) {
  if (t.source_len() != t.target_len()) return false;
  const CMatrix gram = compose(adjoint_op(t), t).flat();
  const CMatrix residual = gram - CMatrix::Identity(gram.rows(), gram.cols());
  return linalg::spectral_norm(residual) <= tol.abs + tol.rel;
}

bool is_positive_op(const AdjointableOp& t, const Tolerance& tol) {
  if (t.source_len() != t.target_len()) return false;
  return linalg::is_positive(t.flat(), tol);
}

std::vector<std::size_t> block_offsets(const std::vector<std::size_t>& lengths) {
  std::vector<std::size_t> offsets(lengths.size() + 1, 0);
  std::partial_sum(lengths.begin(), lengths.end(), offsets.begin() + 1);
  return offsets;
}

}  // namespace gframes
