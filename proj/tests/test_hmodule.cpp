#include <doctest.h>

#include "gframes/error.hpp"
#include "gframes/hmodule.hpp"
#include "oracle.hpp"

using namespace gframes;

namespace {

double dist(const CMatrix& a, const CMatrix& b) { return oracle::spectral_norm(a - b); }

}  // namespace

TEST_SUITE("hmodule") {
  TEST_CASE("inner product examples") {
    const ModuleVector e({AlgebraElement::identity(2)});
    CHECK(inner_product(e, e) == AlgebraElement::identity(2));
    oracle::Random rng(10);
    const auto a = rng.element(2);
    const auto b = rng.element(2);
    const ModuleVector x({a, AlgebraElement::zero(2)});
    const ModuleVector y({AlgebraElement::zero(2), b});
    CHECK(inner_product(x, y) == AlgebraElement::zero(2));
    CHECK_THROWS_AS(inner_product(x, e), DimensionMismatch);
  }

  TEST_CASE("inner product axioms") {
    oracle::Random rng(11);
    for (int k = 0; k < 200; ++k) {
      const auto x = rng.vector(3, 2);
      const auto y = rng.vector(3, 2);
      const auto z = rng.vector(3, 2);
      const auto a = rng.element(3);
      const auto xx = inner_product(x, x);
      const double scale = operator_norm(xx);
      CHECK(oracle::lambda_min(xx.entries()) >= -1e-9 * scale);
      const auto lhs = inner_product(a * x + y, z);
      const auto rhs = a * inner_product(x, z) + inner_product(y, z);
      CHECK(dist(lhs.entries(), rhs.entries()) <= 1e-12 * std::max(1.0, operator_norm(lhs)) * 10);
      CHECK(dist(inner_product(x, y).entries(), adjoint(inner_product(y, x)).entries()) <= 1e-12 * scale);
    }
    const auto zero = ModuleVector::zero(2, 3);
    CHECK(inner_product(zero, zero) == AlgebraElement::zero(2));
  }

  TEST_CASE("scalar norm") {
    CHECK(scalar_norm(ModuleVector::zero(2, 2)) == 0.0);
    CHECK(scalar_norm(ModuleVector({AlgebraElement::identity(3)})) == doctest::Approx(1.0));
    oracle::Random rng(12);
    for (int k = 0; k < 20; ++k) {
      const auto x = rng.vector(2, 3);
      CHECK(scalar_norm(x) == doctest::Approx(oracle::spectral_norm(x.flat())).epsilon(1e-10));
    }
  }

  TEST_CASE("apply, adjoint contract and A-linearity") {
    oracle::Random rng(13);
    const auto x0 = rng.vector(2, 3);
    CHECK(apply(AdjointableOp::identity(2, 3), x0).flat() == x0.flat());
    CHECK(apply(AdjointableOp::zero(2, 3, 4), x0).flat() == CMatrix::Zero(2, 8));
    CHECK_THROWS_AS(apply(AdjointableOp::identity(2, 2), x0), DimensionMismatch);
    for (int k = 0; k < 50; ++k) {
      const auto t = rng.op(2, 3, 4);
      const auto x = rng.vector(2, 3);
      const auto y = rng.vector(2, 4);
      const auto a = rng.element(2);
      const auto lhs = inner_product(apply(t, x), y);
      const auto rhs = inner_product(x, apply(adjoint_op(t), y));
      CHECK(dist(lhs.entries(), rhs.entries()) <= 1e-11 * std::max(1.0, operator_norm(lhs)));
      const auto ax = apply(t, a * x);
      const auto xa = a * apply(t, x);
      CHECK(dist(ax.flat(), xa.flat()) <= 1e-11 * std::max(1.0, oracle::spectral_norm(ax.flat())));
      // Componentwise definition: (Tx)_j = sum_i x_i T(i, j).
      AlgebraElement c1 = AlgebraElement::zero(2);
      for (std::size_t i = 0; i < 3; ++i) c1 = c1 + x.component(i) * t.block(i, 1);
      CHECK(dist(c1.entries(), apply(t, x).component(1).entries()) < 1e-11 * std::max(1.0, operator_norm(c1)));
    }
  }

  TEST_CASE("adjoint_op examples and flattening") {
    CHECK(adjoint_op(AdjointableOp::identity(2, 2)) == AdjointableOp::identity(2, 2));
    CMatrix one(1, 1);
    one(0, 0) = Complex(0, 1);
    CHECK(adjoint_op(AdjointableOp(1, one)).flat()(0, 0) == Complex(0, -1));
    oracle::Random rng(14);
    for (int k = 0; k < 100; ++k) {
      const auto t = rng.op(2, 2, 3);
      CHECK(adjoint_op(adjoint_op(t)) == t);
      CHECK(flatten(adjoint_op(t)) == flatten(t).adjoint());
      // Block (i, j) of T^* is the adjoint of block (j, i) of T.
      CHECK(adjoint_op(t).block(2, 1) == adjoint(t.block(1, 2)));
    }
  }

  TEST_CASE("compose examples, apply chain and flatten multiplicativity") {
    oracle::Random rng(15);
    const auto t = rng.op(2, 3, 2);
    CHECK(compose(AdjointableOp::identity(2, 2), t) == t);
    const auto tt = compose(t, adjoint_op(t));
    CHECK(dist(tt.flat(), tt.flat().adjoint()) == 0.0);
    CHECK_THROWS_AS(compose(t, t), DimensionMismatch);
    for (int k = 0; k < 100; ++k) {
      const auto t1 = rng.op(2, 2, 3);
      const auto t2 = rng.op(2, 3, 2);
      const auto t3 = rng.op(2, 2, 4);
      CHECK(flatten(compose(t2, t1)) == CMatrix(flatten(t1) * flatten(t2)));
      const auto x = rng.vector(2, 2);
      CHECK(dist(apply(compose(t2, t1), x).flat(), apply(t2, apply(t1, x)).flat()) <=
            1e-11 * std::max(1.0, oracle::spectral_norm(apply(compose(t2, t1), x).flat())));
      const auto left = compose(t3, compose(t2, t1));
      const auto right = compose(compose(t3, t2), t1);
      CHECK(dist(left.flat(), right.flat()) <= 1e-12 * std::max(1.0, oracle::spectral_norm(left.flat())));
    }
  }

  TEST_CASE("op_norm examples and sampling bound") {
    CHECK(op_norm(AdjointableOp::identity(3, 2)) == doctest::Approx(1.0));
    CHECK(op_norm(Complex(0, 3) * AdjointableOp::identity(2, 2)) == doctest::Approx(3.0));
    oracle::Random rng(16);
    const auto t = rng.op(2, 3, 3);
    const double nt = op_norm(t);
    for (int k = 0; k < 500; ++k) {
      const auto x = rng.vector(2, 3);
      CHECK(scalar_norm(apply(t, x)) / scalar_norm(x) <= nt + 1e-9);
    }
  }

  TEST_CASE("operator bound <Tx,Tx> <= ||T||^2 <x,x>") {
    oracle::Random rng(17);
    for (int k = 0; k < 200; ++k) {
      const auto t = rng.op(2, 3, 2);
      const auto x = rng.vector(2, 3);
      const auto tx = apply(t, x);
      const double nt = op_norm(t);
      CHECK(psd_order_leq(inner_product(tx, tx), (nt * nt) * inner_product(x, x)));
    }
  }

  TEST_CASE("is_surjective") {
    CHECK(is_surjective(AdjointableOp::identity(2, 3)));
    CHECK_FALSE(is_surjective(AdjointableOp::zero(2, 3, 3)));
    oracle::Random rng(18);
    // Wide-to-narrow maps are generically surjective, narrow-to-wide never.
    CHECK(is_surjective(rng.op(2, 4, 2)));
    CHECK_FALSE(is_surjective(rng.op(2, 2, 4)));
    // Sampled agreement: surjective iff T^* stays bounded below on samples.
    for (int k = 0; k < 100; ++k) {
      CMatrix f = rng.matrix(6, 4);
      if (k % 2 == 0) f.col(0) = f.col(1);  // rank-deficient image
      const AdjointableOp t(2, f);
      const bool surj = is_surjective(t);
      const double sigma = oracle::sigma_min_rows(f.adjoint());
      CHECK(surj == (sigma > 1e-6));
      double worst = std::numeric_limits<double>::infinity();
      for (int s = 0; s < 100; ++s) {
        const auto x = rng.vector(2, 2);
        worst = std::min(worst, scalar_norm(apply(adjoint_op(t), x)) / scalar_norm(x));
      }
      if (surj) CHECK(worst >= sigma * (1 - 1e-9));
    }
  }

  TEST_CASE("lower_norm_bound is attained from below on samples") {
    oracle::Random rng(19);
    const auto t = rng.op(2, 2, 3);
    const double c = lower_norm_bound(t);
    CHECK(c > 0.0);
    for (int k = 0; k < 200; ++k) {
      const auto x = rng.vector(2, 2);
      CHECK(scalar_norm(apply(t, x)) >= c * scalar_norm(x) * (1 - 1e-9));
    }
  }

  TEST_CASE("is_isometry") {
    CHECK(is_isometry(AdjointableOp::identity(2, 3)));
    CHECK_FALSE(is_isometry(Complex(2.0) * AdjointableOp::identity(2, 3)));
    oracle::Random rng(20);
    const CMatrix q = Eigen::HouseholderQR<CMatrix>(rng.matrix(6, 6)).householderQ();
    CHECK(is_isometry(AdjointableOp(2, q)));
  }

  TEST_CASE("block layout and offsets") {
    oracle::Random rng(21);
    std::vector<std::vector<AlgebraElement>> blocks(2, std::vector<AlgebraElement>(3));
    for (auto& row : blocks)
      for (auto& b : row) b = rng.element(2);
    const AdjointableOp t(blocks);
    CHECK(t.source_len() == 2);
    CHECK(t.target_len() == 3);
    CHECK(t.block(1, 2) == blocks[1][2]);
    CHECK(AdjointableOp(t.blocks()) == t);
    CHECK(block_offsets({2, 3, 1}) == std::vector<std::size_t>{0, 2, 5, 6});
    CHECK_THROWS_AS(AdjointableOp(2, CMatrix::Zero(3, 4)), DimensionMismatch);
  }
}
