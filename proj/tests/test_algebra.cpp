#include <doctest.h>

#include "gframes/algebra.hpp"
#include "gframes/error.hpp"
#include "oracle.hpp"

using namespace gframes;

namespace {

const Complex I1{0.0, 1.0};

AlgebraElement m2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return AlgebraElement(m);
}

AlgebraElement diag(std::initializer_list<double> vals) {
  RVector v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v(i++) = x;
  return AlgebraElement::diagonal(v);
}

double dist(const AlgebraElement& a, const AlgebraElement& b) { return oracle::spectral_norm(a.entries() - b.entries()); }

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("construction rejects non-square, empty and non-finite input") {
    CHECK_THROWS_AS(AlgebraElement(CMatrix(2, 3)), DimensionMismatch);
    CHECK_THROWS_AS(AlgebraElement(CMatrix(0, 0)), DimensionMismatch);
    CMatrix bad = CMatrix::Identity(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(AlgebraElement{bad}, ValidationError);
  }

  TEST_CASE("adjoint examples") {
    CMatrix one(1, 1);
    one(0, 0) = I1;
    CHECK(adjoint(AlgebraElement(one))(0, 0) == -I1);
    CHECK(adjoint(AlgebraElement::identity(3)) == AlgebraElement::identity(3));
    CHECK(adjoint(m2(0, 1, 0, 0)) == m2(0, 0, 1, 0));
  }

  TEST_CASE("adjoint is an exact involution") {
    oracle::Random rng(1);
    for (int k = 0; k < 100; ++k) {
      const auto a = rng.element(3);
      CHECK(adjoint(adjoint(a)) == a);
    }
  }

  TEST_CASE("is_positive examples") {
    CHECK(is_positive(AlgebraElement::identity(2)));
    CHECK_FALSE(is_positive(AlgebraElement::scalar(1, -1.0)));
    CHECK_FALSE(is_positive(m2(1, 1, 0, 1)));  // not self-adjoint
    oracle::Random rng(2);
    for (int k = 0; k < 100; ++k) {
      const auto b = rng.element(3);
      const auto p = b * adjoint(b);
      CHECK(oracle::lambda_min(p.entries()) >= -1e-12 * oracle::spectral_norm(p.entries()));
      CHECK(is_positive(p));
    }
  }

  TEST_CASE("sqrt_psd examples and square-back property") {
    CHECK(dist(sqrt_psd(diag({4, 9})), diag({2, 3})) < 1e-14);
    CHECK(dist(sqrt_psd(AlgebraElement::identity(3)), AlgebraElement::identity(3)) < 1e-14);
    CHECK_THROWS_AS(sqrt_psd(AlgebraElement::scalar(1, -1.0)), NotPositive);

    oracle::Random rng(3);
    const Tolerance tol;
    for (int k = 0; k < 100; ++k) {
      const auto b = rng.element(4);
      const auto a = b * adjoint(b);
      const auto r = sqrt_psd(a);
      CHECK(is_positive(r));
      CHECK(dist(r * r, a) <= 10.0 * tol.slack(operator_norm(a)));
    }
  }

  TEST_CASE("sqrt_psd recovers Q diag(sqrt lambda) Q^*") {
    oracle::Random rng(4);
    const CMatrix z = rng.matrix(3, 3);
    const CMatrix q = Eigen::HouseholderQR<CMatrix>(z).householderQ();
    RVector lam(3);
    lam << 0.0, 2.0, 5.0;
    const AlgebraElement a(q * lam.cast<Complex>().asDiagonal() * q.adjoint());
    const AlgebraElement want(q * lam.cwiseSqrt().cast<Complex>().asDiagonal() * q.adjoint());
    CHECK(dist(sqrt_psd(a), want) < 1e-7);
  }

  TEST_CASE("abs_element examples") {
    CHECK(dist(abs_element(AlgebraElement::scalar(1, -3.0)), AlgebraElement::scalar(1, 3.0)) < 1e-14);
    CHECK(dist(abs_element(m2(0, 1, 0, 0)), diag({0, 1})) < 1e-14);
    oracle::Random rng(5);
    for (int k = 0; k < 20; ++k) {
      const auto a = rng.element(3);
      const auto r = abs_element(a);
      // |a|^2 = a^* a and |a| has the singular values of a.
      CHECK(dist(r * r, adjoint(a) * a) < 1e-10 * operator_norm(a) * operator_norm(a));
      const auto sv = oracle::hermitian_eigs(r.entries());
      CHECK(sv.back() == doctest::Approx(oracle::spectral_norm(a.entries())).epsilon(1e-10));
    }
  }

  TEST_CASE("operator_norm examples and C*-identity") {
    CHECK(operator_norm(AlgebraElement::identity(4)) == doctest::Approx(1.0));
    CHECK(operator_norm(diag({2, -5})) == doctest::Approx(5.0));
    oracle::Random rng(6);
    for (int k = 0; k < 100; ++k) {
      const auto a = rng.element(3);
      const double na = operator_norm(a);
      CHECK(na == doctest::Approx(std::sqrt(oracle::lambda_max((adjoint(a) * a).entries()))).epsilon(1e-10));
      CHECK(std::abs(operator_norm(adjoint(a) * a) - na * na) <= 1e-9 * na * na);
    }
  }

  TEST_CASE("psd_order_leq examples, reflexivity and transitivity") {
    CHECK(psd_order_leq(AlgebraElement::zero(2), AlgebraElement::identity(2)));
    CHECK_FALSE(psd_order_leq(AlgebraElement::scalar(2, 2.0), AlgebraElement::identity(2)));
    CHECK_THROWS_AS(psd_order_leq(AlgebraElement::zero(2), AlgebraElement::zero(3)), DimensionMismatch);

    oracle::Random rng(7);
    for (int k = 0; k < 50; ++k) {
      const auto b1 = rng.element(3);
      const auto b2 = rng.element(3);
      const auto a = b1 * adjoint(b1);
      const auto b = a + b2 * adjoint(b2);
      const auto c = b + AlgebraElement::identity(3);
      CHECK(psd_order_leq(a, a));
      CHECK(psd_order_leq(a, b));
      CHECK(psd_order_leq(b, c));
      CHECK(psd_order_leq(a, c));
    }
  }

  TEST_CASE("linalg kernels agree with the oracle") {
    oracle::Random rng(8);
    for (int k = 0; k < 20; ++k) {
      const CMatrix m = rng.matrix(5, 5);
      const CMatrix h = m + m.adjoint();
      const RVector ev = linalg::hermitian_eigenvalues(h);
      const auto ref = oracle::hermitian_eigs(h);
      for (Eigen::Index i = 0; i < ev.size(); ++i) CHECK(ev(i) == doctest::Approx(ref[static_cast<std::size_t>(i)]).epsilon(1e-9));
      CHECK(linalg::spectral_norm(m) == doctest::Approx(oracle::spectral_norm(m)).epsilon(1e-10));
      const CMatrix wide = rng.matrix(3, 5);
      CHECK(linalg::bounded_below_constant(wide) == doctest::Approx(oracle::sigma_min_rows(wide)).epsilon(1e-8));
      CHECK(linalg::bounded_below_constant(rng.matrix(5, 3)) == 0.0);
    }
    CHECK_THROWS_AS(linalg::inv_sqrt_pd(CMatrix::Zero(2, 2)), NotPositive);
  }
}
