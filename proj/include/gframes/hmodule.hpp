#pragma once

#include <cstddef>
#include <vector>

#include "gframes/algebra.hpp"

namespace gframes {

// The Hilbert C*-module H = A^d over A = M_n(C).
//
// A module vector x = (x_1, ..., x_d) is stored flattened as the n x (n d)
// row-block matrix [x_1 x_2 ... x_d]. The inner product is
// <x, y> = sum_i x_i y_i^* = X Y^*, linear over A in the first argument.
//
// An adjointable operator T : A^d -> A^d' is a d x d' array of algebra
// blocks, stored flattened as an (n d) x (n d') matrix F. It acts by right
// multiplication, (T x)_j = sum_i x_i T(i, j), i.e. flatten(T x) = X F.
// Under this convention flatten(T^*) = F^* and
// flatten(T2 o T1) = flatten(T1) flatten(T2), both exactly.

class ModuleVector {
 public:
  ModuleVector() = default;
  /// Builds from components; all must share one algebra dimension.
  explicit ModuleVector(const std::vector<AlgebraElement>& components);
  /// Builds from a flattened n x (n d) matrix.
  ModuleVector(std::size_t algebra_dim, CMatrix flat);

  static ModuleVector zero(std::size_t algebra_dim, std::size_t length);

  [[nodiscard]] std::size_t algebra_dim() const { return n_; }
  [[nodiscard]] std::size_t length() const { return n_ == 0 ? 0 : static_cast<std::size_t>(flat_.cols()) / n_; }
  [[nodiscard]] AlgebraElement component(std::size_t i) const;
  [[nodiscard]] std::vector<AlgebraElement> components() const;
  [[nodiscard]] const CMatrix& flat() const { return flat_; }

  friend ModuleVector operator+(const ModuleVector& x, const ModuleVector& y);
  friend ModuleVector operator-(const ModuleVector& x, const ModuleVector& y);
  /// Left module action a . x = (a x_1, ..., a x_d).
  friend ModuleVector operator*(const AlgebraElement& a, const ModuleVector& x);

 private:
  std::size_t n_ = 0;
  CMatrix flat_;
};

class AdjointableOp {
 public:
  AdjointableOp() = default;
  /// blocks[i][j] multiplies input component i and feeds output component j.
  explicit AdjointableOp(const std::vector<std::vector<AlgebraElement>>& blocks);
  /// From a flattened (n d) x (n d') matrix.
  AdjointableOp(std::size_t algebra_dim, CMatrix flat);

  static AdjointableOp identity(std::size_t algebra_dim, std::size_t len);
  static AdjointableOp zero(std::size_t algebra_dim, std::size_t source_len, std::size_t target_len);
  /// Block-diagonal operator with `a` on every diagonal block: y_j -> y_j a.
  static AdjointableOp block_diagonal(const AlgebraElement& a, std::size_t len);

  [[nodiscard]] std::size_t algebra_dim() const { return n_; }
  [[nodiscard]] std::size_t source_len() const { return n_ == 0 ? 0 : static_cast<std::size_t>(flat_.rows()) / n_; }
  [[nodiscard]] std::size_t target_len() const { return n_ == 0 ? 0 : static_cast<std::size_t>(flat_.cols()) / n_; }
  [[nodiscard]] AlgebraElement block(std::size_t i, std::size_t j) const;
  [[nodiscard]] std::vector<std::vector<AlgebraElement>> blocks() const;
  [[nodiscard]] const CMatrix& flat() const { return flat_; }

  friend AdjointableOp operator+(const AdjointableOp& a, const AdjointableOp& b);
  friend AdjointableOp operator-(const AdjointableOp& a, const AdjointableOp& b);
  /// Scalar multiple c T (complex scalar, commutes with the algebra action).
  friend AdjointableOp operator*(Complex c, const AdjointableOp& t);
  friend bool operator==(const AdjointableOp& a, const AdjointableOp& b) {
    return a.n_ == b.n_ && a.flat_.rows() == b.flat_.rows() && a.flat_.cols() == b.flat_.cols() &&
           a.flat_ == b.flat_;
  }

 private:
  std::size_t n_ = 0;
  CMatrix flat_;
};

AlgebraElement inner_product(const ModuleVector& x, const ModuleVector& y);

/// ||x|| = ||<x, x>||^{1/2}
double scalar_norm(const ModuleVector& x);

ModuleVector apply(const AdjointableOp& t, const ModuleVector& x);

AdjointableOp adjoint_op(const AdjointableOp& t);

/// compose(t2, t1) = t2 o t1 (t1 applied first).
AdjointableOp compose(const AdjointableOp& t2, const AdjointableOp& t1);

inline const CMatrix& flatten(const AdjointableOp& t) { return t.flat(); }

double op_norm(const AdjointableOp& t);

/// T is surjective iff T^* is bounded below: sigma_min(flatten(T^*)) exceeds
/// tol.slack(op_norm(T)). The zero operator is never surjective.
bool is_surjective(const AdjointableOp& t, const Tolerance& tol = {});

/// Bounded-below constant of T: inf ||T x|| / ||x||. Equals the bounded-below
/// singular value of flatten(T).
double lower_norm_bound(const AdjointableOp& t);

/// ||flatten(T^* o T) - I|| <= tol.abs + tol.rel
bool is_isometry(const AdjointableOp& t, const Tolerance& tol = {});

/// Positivity of a square operator (<T x, x> >= 0 for all x).
bool is_positive_op(const AdjointableOp& t, const Tolerance& tol = {});

// Direct sums of modules are concatenations of component tuples; the offset
// of member k is the sum of the lengths before it.
std::vector<std::size_t> block_offsets(const std::vector<std::size_t>& lengths);

}  // namespace gframes
