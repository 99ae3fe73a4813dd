#include <doctest.h>

#include "gframes/error.hpp"
#include "gframes/gen.hpp"
#include "oracle.hpp"

using namespace gframes;

TEST_SUITE("gen") {
  TEST_CASE("spec validation") {
    CHECK_THROWS_AS(validate({0, 0, 2, {2}, target::Random{}}), DegenerateSpec);
    CHECK_THROWS_AS(validate({0, 2, 0, {2}, target::Random{}}), DegenerateSpec);
    CHECK_THROWS_AS(validate({0, 2, 2, {}, target::Random{}}), DegenerateSpec);
    CHECK_THROWS_AS(validate({0, 2, 2, {2, 0}, target::Random{}}), DegenerateSpec);
    CHECK_THROWS_AS(validate({0, 2, 2, {2}, target::Tight{0.0}}), DegenerateSpec);
    CHECK_THROWS_AS(validate({0, 2, 2, {2}, target::Bounds{2.0, 1.0}}), DegenerateSpec);
    CHECK_THROWS_AS(validate({0, 2, 2, {2}, target::Bounds{0.0, 1.0}}), DegenerateSpec);
    CHECK_THROWS_AS(gen_family({0, 2, 3, {1, 1}, target::Parseval{}}), DegenerateSpec);
    CHECK_NOTHROW(gen_family({0, 2, 3, {1, 1}, target::Random{}}));
  }

  TEST_CASE("Parseval, tight and bounded targets are exact") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto p = optimal_bounds(gen_family({seed, 2, 3, {2, 1, 3}, target::Parseval{}}));
      CHECK(std::abs(p.lower - 1.0) <= 1e-8);
      CHECK(std::abs(p.upper - 1.0) <= 1e-8);
      const auto t = optimal_bounds(gen_family({seed, 2, 3, {2, 1, 3}, target::Tight{3.0}}));
      CHECK(std::abs(t.lower - 3.0) <= 1e-8);
      CHECK(std::abs(t.upper - 3.0) <= 1e-8);
      const auto f = gen_family({seed, 2, 3, {2, 1, 3}, target::Bounds{0.5, 2.0}});
      const CMatrix s = oracle::frame_operator(f);
      CHECK(std::abs(oracle::lambda_min(s) - 0.5) <= 1e-8);
      CHECK(std::abs(oracle::lambda_max(s) - 2.0) <= 1e-8);
      CHECK(classify(f).kind == FrameKind::Frame);
    }
  }

  TEST_CASE("determinism") {
    const GenSpec spec{77, 2, 2, {2, 3}, target::Bounds{0.5, 1.5}};
    const auto a = gen_family(spec);
    const auto b = gen_family(spec);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a.member(k) == b.member(k));
    GenSpec other = spec;
    other.seed = 78;
    CHECK_FALSE(gen_family(other).member(0) == a.member(0));
  }

  TEST_CASE("orthogonal pairs") {
    const auto [f, g] = gen_orthogonal_pair({1, 1, 2, {4, 4}, target::Parseval{}});
    CHECK(optimal_bounds(f).parseval);
    CHECK(optimal_bounds(g).parseval);
    CHECK(oracle::spectral_norm(cross_operator(f, g).flat()) <= 1e-12);
    const auto sum = optimal_bounds(f + g);
    CHECK(std::abs(sum.lower - 2.0) <= 1e-8);
    CHECK(std::abs(sum.upper - 2.0) <= 1e-8);

    const auto [t2, t3] = gen_orthogonal_pair({9, 2, 2, {2, 3, 2}, target::Random{}}, target::Tight{2.0},
                                              target::Tight{3.0});
    CHECK(std::abs(optimal_bounds(t2 + t3).lower - 5.0) <= 1e-8);
    CHECK_THROWS_AS(gen_orthogonal_pair({1, 1, 2, {4, 1}, target::Parseval{}}), DegenerateSpec);
    CHECK_THROWS_AS(gen_orthogonal_pair({1, 1, 3, {2, 2}, target::Parseval{}}), DegenerateSpec);
  }

  TEST_CASE("isometries") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto u = gen_isometry(seed, 2, 3);
      CHECK(oracle::spectral_norm(compose(adjoint_op(u), u).flat() - CMatrix::Identity(6, 6)) <= 1e-10);
      const auto p = gen_family({seed, 2, 3, {3, 3}, target::Parseval{}});
      CHECK(optimal_bounds(p.precompose(u)).parseval);
    }
    CHECK(oracle::spectral_norm(gen_isometry(1, 2, 2).flat() - gen_isometry(2, 2, 2).flat()) > 0.01);
  }

  TEST_CASE("weights") {
    const auto w = gen_weights(3, 2, 4, 0.99, 1.01);
    CHECK(w.thetas.size() == 4);
    CHECK(w.deltas.size() == 4);
    CHECK(weights_violation(w).empty());
    for (const auto& a : w.thetas) {
      const auto ev = oracle::hermitian_eigs((adjoint(a) * a).entries());
      CHECK(ev.front() > 0.99);
      CHECK(ev.back() < 1.01);
    }
    const auto c = gen_weights(4, 2, 2, 4.0 - 1e-6, 4.0 + 1e-6);
    CHECK(oracle::spectral_norm(c.thetas[0].entries() - 2.0 * CMatrix::Identity(2, 2)) < 1e-6);
    CHECK_THROWS_AS(gen_weights(0, 2, 2, 1.0, 1.0), BadRange);
    CHECK_THROWS_AS(gen_weights(0, 2, 2, 0.0, 1.0), BadRange);
    CHECK_THROWS_AS(gen_weights(0, 2, 2, 1.0, std::numeric_limits<double>::infinity()), BadRange);

    ScalarWeights bad = w;
    bad.thetas[1] = AlgebraElement::scalar(2, 2.0);
    CHECK_FALSE(weights_violation(bad).empty());
  }

  TEST_CASE("weighted families") {
    const auto p = gen_family({8, 2, 2, {2, 2}, target::Parseval{}});
    const auto w = gen_weights(8, 2, 2, 0.99, 1.01);
    const auto b = optimal_bounds(weight_family(p, w.thetas) + weight_family(p, w.thetas));
    CHECK(b.lower > 4.0 * 0.99 - 1e-9);
    CHECK(b.upper < 4.0 * 1.01 + 1e-9);
    CHECK_THROWS_AS(weight_family(p, {w.thetas[0]}), DimensionMismatch);
  }
}
