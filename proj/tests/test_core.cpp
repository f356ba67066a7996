#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qbm/core.hpp"

using namespace qbm;

TEST_CASE("derive_scales: unit mass anchor values") {
  const DerivedScales s = derive_scales({1.0, 0.1, 0.0});
  CHECK(s.lambda == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.lambda_tilde ==
        doctest::Approx(1.0 / (std::sqrt(6.0) * std::numbers::pi)).epsilon(1e-15));
  CHECK(s.lambda_tilde == doctest::Approx(0.12994946687227937).epsilon(1e-14));
  CHECK(s.tau == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.v == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("derive_scales: linear scaling in mass") {
  const DerivedScales s = derive_scales({2.0, 0.1, 0.0});
  CHECK(s.lambda == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s.v == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("derive_scales: rejects out-of-regime parameters") {
  CHECK_THROWS_AS(derive_scales({1.0, 1.5, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(derive_scales({1.0, 1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(derive_scales({-1.0, 0.1, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(derive_scales({1.0, -0.1, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(derive_scales({1.0, 0.1, -0.5}), std::invalid_argument);
}

TEST_CASE("derive_scales: pure function, bit-identical replays") {
  const ModelParams p{1.7, 0.13, 2.5};
  const DerivedScales a = derive_scales(p);
  const DerivedScales b = derive_scales(p);
  CHECK(a.lambda == b.lambda);
  CHECK(a.lambda_tilde == b.lambda_tilde);
  CHECK(a.tau == b.tau);
  CHECK(a.v == b.v);
}

TEST_CASE("derive_scales: dimensional consistency under mass rescaling") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> um(0.5, 5.0), us(1.5, 4.0);
  for (int i = 0; i < 50; ++i) {
    const double m = um(rng), scale = us(rng);
    const double gamma = 0.05 * m;
    const DerivedScales base = derive_scales({m, gamma, 0.0});
    const DerivedScales scaled = derive_scales({scale * m, scale * gamma, 0.0});
    CHECK(scaled.lambda == doctest::Approx(base.lambda / scale).epsilon(1e-13));
    CHECK(scaled.lambda_tilde ==
          doctest::Approx(base.lambda_tilde / scale).epsilon(1e-13));
    CHECK(scaled.tau == doctest::Approx(base.tau / scale).epsilon(1e-13));
    // v is invariant under the joint rescaling.
    CHECK(scaled.v == doctest::Approx(base.v).epsilon(1e-13));
    CHECK(base.lambda_tilde < base.lambda);
    CHECK(base.v < 1.0);
  }
}

TEST_CASE("regime_warning: fires only above cutoff/m = 0.1") {
  CHECK(!regime_warning({1.0, 0.05, 0.0}).has_value());
  CHECK(regime_warning({1.0, 0.3, 0.0}).has_value());
}

TEST_CASE("QuadratureConfig validation") {
  QuadratureConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.abs_tol = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
