#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace gframes {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Absolute/relative tolerance pair. A predicate on a quantity of size `scale`
/// accepts an error up to `abs + rel * scale`.
struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;

  [[nodiscard]] double slack(double scale) const { return abs + rel * scale; }
};

/// Element of the C*-algebra M_n(C): an n x n complex matrix with the
/// conjugate-transpose involution and the spectral norm.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  /// Throws DimensionMismatch if `entries` is not square or is empty, and
  /// ValidationError if any entry is not finite.
  explicit AlgebraElement(CMatrix entries);

  static AlgebraElement identity(std::size_t n);
  static AlgebraElement zero(std::size_t n);
  static AlgebraElement scalar(std::size_t n, Complex c);
  static AlgebraElement diagonal(const RVector& values);

  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  [[nodiscard]] const CMatrix& entries() const { return entries_; }
  [[nodiscard]] Complex operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(Complex c, const AlgebraElement& a);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.entries_.rows() == b.entries_.rows() && a.entries_ == b.entries_;
  }

 private:
  CMatrix entries_;
};

AlgebraElement adjoint(const AlgebraElement& a);

bool is_positive(const AlgebraElement& a, const Tolerance& tol = {});

/// Positive square root via Hermitian eigendecomposition, negative
/// eigenvalues clamped to zero. Throws NotPositive unless is_positive(a, tol).
AlgebraElement sqrt_psd(const AlgebraElement& a, const Tolerance& tol = {});

/// |a| = (a* a)^{1/2}
AlgebraElement abs_element(const AlgebraElement& a);

double operator_norm(const AlgebraElement& a);

/// a <= b in the positive order of the algebra, i.e. b - a is positive.
bool psd_order_leq(const AlgebraElement& a, const AlgebraElement& b, const Tolerance& tol = {});

// Dense-matrix kernels shared by the module layer. They operate on plain
// complex matrices so flattened operators can reuse them.
namespace linalg {

/// Spectral norm (largest singular value). Zero for empty matrices.
double spectral_norm(const CMatrix& m);

/// Ascending eigenvalues of the Hermitian part (m + m*)/2.
RVector hermitian_eigenvalues(const CMatrix& m);

/// Positivity test with the same rule as is_positive on algebra elements.
bool is_positive(const CMatrix& m, const Tolerance& tol);

/// Most negative admissible eigenvalue slack for `m` under `tol`.
double positivity_slack(const CMatrix& m, const Tolerance& tol);

/// f(H) for the Hermitian part H of m, with f applied to clamped eigenvalues.
CMatrix sqrt_psd(const CMatrix& m);
CMatrix inv_sqrt_pd(const CMatrix& m);

/// Smallest singular value in the bounded-below sense for the right action
/// X -> X m: zero if m has more rows than columns (cannot be injective on
/// row vectors), otherwise the smallest of its rows() singular values.
double bounded_below_constant(const CMatrix& m);

}  // namespace linalg

}  // namespace gframes
