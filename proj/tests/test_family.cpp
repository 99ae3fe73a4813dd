#include <doctest.h>

#include "gframes/error.hpp"
#include "gframes/family.hpp"
#include "gframes/gen.hpp"
#include "oracle.hpp"

using namespace gframes;

namespace {

GFrameFamily identities(std::size_t n, std::size_t d, std::size_t count) {
  return GFrameFamily(std::vector<AdjointableOp>(count, AdjointableOp::identity(n, d)));
}

/// Member that embeds A^1 into the first component of A^2 only.
GFrameFamily proper_submodule_family(std::size_t n) {
  CMatrix f = CMatrix::Zero(static_cast<long>(2 * n), static_cast<long>(n));
  f.topRows(static_cast<long>(n)) = CMatrix::Identity(static_cast<long>(n), static_cast<long>(n));
  return GFrameFamily({AdjointableOp(n, f)});
}

}  // namespace

TEST_SUITE("gframe") {
  TEST_CASE("family validation") {
    CHECK_THROWS_AS(GFrameFamily(std::vector<AdjointableOp>{}), DimensionMismatch);
    CHECK_THROWS_AS(GFrameFamily({AdjointableOp::identity(2, 2), AdjointableOp::identity(2, 3)}),
                    DimensionMismatch);
    CHECK_THROWS_AS(identities(2, 2, 2) + identities(2, 2, 3), DimensionMismatch);
  }

  TEST_CASE("analysis and synthesis examples") {
    oracle::Random rng(30);
    const auto x = rng.vector(2, 2);
    const auto one = analysis(identities(2, 2, 1), x);
    REQUIRE(one.size() == 1);
    CHECK(one[0].flat() == x.flat());
    const auto two = analysis(identities(2, 2, 2), x);
    CHECK(two[1].flat() == x.flat());
    CHECK(synthesis(identities(2, 2, 1), {x}).flat() == x.flat());
    const auto f = rng.family(2, 2, {2, 3});
    CHECK(synthesis(f, {ModuleVector::zero(2, 2), ModuleVector::zero(2, 3)}).flat() == CMatrix::Zero(2, 4));
    CHECK_THROWS_AS(synthesis(f, {x}), DimensionMismatch);
  }

  TEST_CASE("analysis and synthesis agree with the frame operator") {
    oracle::Random rng(31);
    for (int k = 0; k < 50; ++k) {
      const auto f = rng.family(2, 3, {1, 2, 4});
      const auto x = rng.vector(2, 3);
      const auto s = frame_operator(f);
      AlgebraElement acc = AlgebraElement::zero(2);
      for (const auto& y : analysis(f, x)) acc = acc + inner_product(y, y);
      const auto sxx = inner_product(apply(s, x), x);
      const double scale = std::max(1.0, operator_norm(acc));
      CHECK(oracle::spectral_norm(acc.entries() - sxx.entries()) <= 1e-11 * scale);
      const auto back = synthesis(f, analysis(f, x));
      CHECK(oracle::spectral_norm(back.flat() - apply(s, x).flat()) <= 1e-11 * scale);
    }
  }

  TEST_CASE("frame operator examples") {
    CHECK(frame_operator(identities(1, 1, 1)).flat() == CMatrix::Identity(1, 1));
    CHECK(frame_operator(identities(2, 2, 3)).flat() == 3.0 * CMatrix::Identity(4, 4));
    oracle::Random rng(32);
    for (int k = 0; k < 100; ++k) {
      const auto f = rng.family(2, 2, {2, 3, 1});
      const CMatrix s = frame_operator(f).flat();
      CHECK(oracle::spectral_norm(s - oracle::frame_operator(f)) <= 1e-12 * oracle::spectral_norm(s));
      CHECK(oracle::spectral_norm(s - s.adjoint()) <= 1e-12 * oracle::spectral_norm(s));
      // S = T T^* through the materialized synthesis operator.
      const CMatrix tt = compose(synthesis_op(f), analysis_op(f)).flat();
      CHECK(oracle::spectral_norm(s - tt) <= 1e-12 * oracle::spectral_norm(s));
    }
  }

  TEST_CASE("optimal bounds examples") {
    const auto p = gen_family({5, 2, 2, {2, 2}, target::Parseval{}});
    const auto b = optimal_bounds(p);
    CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(b.tight);
    CHECK(b.parseval);
    oracle::Random rng(33);
    const auto f = rng.family(2, 2, {3, 3});
    const auto fb = optimal_bounds(f);
    const auto sb = optimal_bounds(f.scaled(Complex(0.0, 2.0)));
    CHECK(sb.lower == doctest::Approx(4.0 * fb.lower).epsilon(1e-9));
    CHECK(sb.upper == doctest::Approx(4.0 * fb.upper).epsilon(1e-9));
    const CMatrix s = oracle::frame_operator(f);
    CHECK(fb.lower == doctest::Approx(oracle::lambda_min(s)).epsilon(1e-9));
    CHECK(fb.upper == doctest::Approx(oracle::lambda_max(s)).epsilon(1e-9));
  }

  TEST_CASE("Rayleigh quotients lie inside the optimal bounds") {
    oracle::Random rng(34);
    const auto f = rng.family(2, 2, {2, 2});
    const auto b = optimal_bounds(f);
    const auto s = frame_operator(f);
    for (int k = 0; k < 500; ++k) {
      const auto x = rng.vector(2, 2);
      const auto xx = inner_product(x, x);
      const auto sxx = inner_product(apply(s, x), x);
      CHECK(psd_order_leq((b.lower - 1e-9) * xx, sxx));
      CHECK(psd_order_leq(sxx, (b.upper + 1e-9) * xx));
    }
  }

  TEST_CASE("classification examples") {
    CHECK(classify(identities(2, 1, 1)).kind == FrameKind::ParsevalFrame);
    CHECK(classify(identities(2, 2, 3)).kind == FrameKind::TightFrame);
    CHECK(classify(GFrameFamily({AdjointableOp::zero(2, 2, 2)})).kind == FrameKind::BesselOnly);
    CHECK(classify(proper_submodule_family(2)).kind == FrameKind::BesselOnly);
    oracle::Random rng(35);
    CHECK(classify(rng.family(2, 2, {3, 3})).kind == FrameKind::Frame);
    CHECK(to_string(FrameKind::ParsevalFrame) == "ParsevalFrame");
    const auto c = classify(GFrameFamily({AdjointableOp::zero(2, 2, 2)}));
    CHECK_FALSE(c.bounds.tight);
    CHECK(c.bounds.lower <= c.bounds.upper);
  }

  TEST_CASE("verify_frame_inequality") {
    const auto p = gen_family({6, 2, 2, {3, 1}, target::Parseval{}});
    CHECK(verify_frame_inequality(p, 1.0 - 1e-9, 1.0 + 1e-9, 200));
    CHECK_FALSE(verify_frame_inequality(p, 2.0, 3.0, 200));
    oracle::Random rng(36);
    const auto f = rng.family(2, 2, {2, 3});
    const auto b = optimal_bounds(f);
    CHECK(verify_frame_inequality(f, b.lower * (1 - 1e-9), b.upper * (1 + 1e-9), 500, {}, 7));
    CHECK_FALSE(verify_frame_inequality(f, b.lower * 1.5, b.upper, 500));
  }

  TEST_CASE("synthesis surjectivity agrees with S > 0") {
    CHECK(lemma33_check(identities(2, 2, 1)));
    CHECK(lemma33_check(GFrameFamily({AdjointableOp::zero(2, 2, 2)})));
    oracle::Random rng(37);
    for (int k = 0; k < 100; ++k) {
      const auto f = k % 2 ? rng.family(2, 3, {1, 2, 1}) : rng.family(2, 3, {1, 1});
      CHECK(lemma33_check(f));
      CHECK(is_surjective(synthesis_op(f)) == classify(f).is_frame());
    }
  }

  TEST_CASE("cross operator of an orthogonal pair is zero") {
    const auto [f, g] = gen_orthogonal_pair({3, 1, 2, {4, 4}, target::Parseval{}});
    CHECK(op_norm(cross_operator(f, g)) <= 1e-12);
    const auto f2 = gen_orthogonal_pair({3, 1, 2, {4, 4}, target::Parseval{}}).first;
    const auto c = cross_operator(f, f2);
    CHECK(oracle::spectral_norm(c.flat() - frame_operator(f).flat()) <= 1e-12);
  }
}
