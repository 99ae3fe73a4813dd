#include "gframes/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gframes/error.hpp"

namespace gframes {

namespace {

void require_same_dim(const AlgebraElement& a, const AlgebraElement& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(what) + ": algebra dimensions " + std::to_string(a.dim()) +
                            " and " + std::to_string(b.dim()) + " differ");
  }
}

CMatrix hermitian_part(const CMatrix& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace

AlgebraElement::AlgebraElement(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw DimensionMismatch("algebra element must be a non-empty square matrix, got " +
                            std::to_string(entries_.rows()) + "x" +
                            std::to_string(entries_.cols()));
  }
  if (!entries_.allFinite()) {
    throw ValidationError("algebra element has non-finite entries");
  }
}

AlgebraElement AlgebraElement::identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return AlgebraElement(CMatrix::Identity(k, k));
}

AlgebraElement AlgebraElement::zero(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return AlgebraElement(CMatrix::Zero(k, k));
}

AlgebraElement AlgebraElement::scalar(std::size_t n, Complex c) {
  const auto k = static_cast<Eigen::Index>(n);
  return AlgebraElement(CMatrix::Identity(k, k) * c);
}

AlgebraElement AlgebraElement::diagonal(const RVector& values) {
  return AlgebraElement(CMatrix(values.cast<Complex>().asDiagonal()));
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_dim(a, b, "sum");
  return AlgebraElement(a.entries_ + b.entries_);
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_dim(a, b, "difference");
  return AlgebraElement(a.entries_ - b.entries_);
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_dim(a, b, "product");
  return AlgebraElement(a.entries_ * b.entries_);
}

AlgebraElement operator*(Complex c, const AlgebraElement& a) { return AlgebraElement(c * a.entries_); }

AlgebraElement adjoint(const AlgebraElement& a) { return AlgebraElement(a.entries().adjoint()); }

bool is_positive(const AlgebraElement& a, const Tolerance& tol) {
  return linalg::is_positive(a.entries(), tol);
}

AlgebraElement sqrt_psd(const AlgebraElement& a, const Tolerance& tol) {
  if (!is_positive(a, tol)) {
    throw NotPositive("sqrt_psd: argument is not positive");
  }
  return AlgebraElement(linalg::sqrt_psd(a.entries()));
}

AlgebraElement abs_element(const AlgebraElement& a) {
  return AlgebraElement(linalg::sqrt_psd(a.entries().adjoint() * a.entries()));
}

double operator_norm(const AlgebraElement& a) { return linalg::spectral_norm(a.entries()); }

bool psd_order_leq(const AlgebraElement& a, const AlgebraElement& b, const Tolerance& tol) {
  require_same_dim(a, b, "psd_order_leq");
  return linalg::is_positive(b.entries() - a.entries(), tol);
}

namespace linalg {

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double positivity_slack(const CMatrix& m, const Tolerance& tol) {
  return tol.slack(spectral_norm(m));
}

bool is_positive(const CMatrix& m, const Tolerance& tol) {
  const double eps = positivity_slack(m, tol);
  if (spectral_norm(m - m.adjoint()) > eps) return false;
  return hermitian_eigenvalues(m).minCoeff() >= -eps;
}

namespace {

template <typename F>
CMatrix spectral_apply(const CMatrix& m, F f) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
  RVector values = es.eigenvalues().unaryExpr([&](double v) { return f(std::max(v, 0.0)); });
  const CMatrix& vecs = es.eigenvectors();
  return vecs * values.cast<Complex>().asDiagonal() * vecs.adjoint();
}

}  // namespace

CMatrix sqrt_psd(const CMatrix& m) {
  return spectral_apply(m, [](double v) { return std::sqrt(v); });
}

CMatrix inv_sqrt_pd(const CMatrix& m) {
  const RVector ev = hermitian_eigenvalues(m);
  if (ev.minCoeff() <= 0.0) {
    throw NotPositive("inverse square root of a singular operator");
  }
  return spectral_apply(m, [](double v) { return 1.0 / std::sqrt(v); });
}

double bounded_below_constant(const CMatrix& m) {
  if (m.rows() == 0) return 0.0;
  if (m.rows() > m.cols()) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  return s(s.size() - 1);
}

}  // namespace linalg

}  // namespace gframes
