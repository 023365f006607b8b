#include <doctest.h>

#include <algorithm>
#include <random>

#include "subfeas/errors.hpp"
#include "subfeas/perceptron.hpp"
#include "subfeas/problem.hpp"

using namespace subfeas;

namespace {

FeasibilityProblem example_2_7() { return FeasibilityProblem(1, {truncated_huber(), linear(Vector{1.0}, 1.0)}); }

}  // namespace

TEST_CASE("validate_certificate examples") {
  const FeasibilityProblem neg_x(1, {linear(Vector{-1.0})});
  const auto ok = validate_certificate(neg_x, {Vector{1.0}, 1.0, 1.0});
  CHECK(ok.valid());
  CHECK(ok.values == std::vector<double>{-1.0});
  CHECK(ok.min_margin == 1.0);

  const FeasibilityProblem huber_only(1, {huber()});
  const auto bad = validate_certificate(huber_only, {Vector{0.0}, 0.1, 1.0});
  CHECK_FALSE(bad.valid());
  CHECK_FALSE(bad.strictly_feasible);

  const auto p31 = build_problem(LinearDataset({Vector{1.0}, Vector{-1.0}}));
  for (double s : {-2.0, -0.5, 0.0, 0.5, 3.0}) {
    CHECK_FALSE(validate_certificate(p31, {Vector{s}, 0.1, 1.0}).valid());
  }
}

TEST_CASE("validate_certificate flags sigma and L problems") {
  const FeasibilityProblem neg_x(1, {linear(Vector{-1.0})});
  CHECK_FALSE(validate_certificate(neg_x, {Vector{1.0}, 1.5, 1.0}).sigma_within_margin);
  CHECK_FALSE(validate_certificate(neg_x, {Vector{1.0}, 0.0, 1.0}).valid());
  CHECK_FALSE(validate_certificate(neg_x, {Vector{1.0}, 0.5, 0.0}).valid());
  const auto conservative = validate_certificate(neg_x, {Vector{1.0}, 0.5, 0.5});
  CHECK(conservative.valid());
  CHECK_FALSE(conservative.L_covers_oracles);
  CHECK_THROWS_AS(validate_certificate(neg_x, {Vector{1.0, 2.0}, 1.0, 1.0}), DimensionError);
}

TEST_CASE("validate_certificate matches a brute-force scan") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  const FeasibilityProblem p(2, {linear(Vector{1.0, 0.5}, -1.0), huber(1, 0.0, -0.8), truncated_huber(0, 0.5, -0.3)});
  for (int trial = 0; trial < 500; ++trial) {
    const Vector s{u(rng), u(rng)};
    const double sigma = std::abs(u(rng)) * 0.5;
    const SlaterCertificate cert{s, sigma, 1.2};
    double worst = -1e300;
    double margin = 1e300;
    for (const auto& c : p.constraints()) {
      worst = std::max(worst, c.value(s));
      margin = std::min(margin, -c.value(s));
    }
    const bool expected = worst < 0.0 && sigma > 0.0 && sigma <= margin;
    CHECK(validate_certificate(p, cert).valid() == expected);
  }
}

TEST_CASE("residual examples") {
  CHECK(residual(example_2_7(), Vector{0.0}) == std::vector<double>{0.0, 1.0});
  CHECK_FALSE(is_feasible(example_2_7(), Vector{0.0}));
  CHECK(residual(example_2_7(), Vector{-1.0}) == std::vector<double>{0.0, 0.0});
  CHECK(is_feasible(example_2_7(), Vector{-1.0}));
  const FeasibilityProblem huber_only(1, {huber()});
  CHECK(residual(huber_only, Vector{0.0}) == std::vector<double>{0.0});
  CHECK(is_feasible(huber_only, Vector{0.0}));
  CHECK_FALSE(is_feasible(huber_only, Vector{1e-100}));
  CHECK(is_feasible(huber_only, Vector{0.01}, 1e-3));
}

TEST_CASE("problem assembly checks") {
  CHECK_THROWS_AS(FeasibilityProblem(1, {}), PreconditionError);
  CHECK_THROWS_AS(FeasibilityProblem(0, {huber()}), PreconditionError);
  CHECK_THROWS_AS(FeasibilityProblem(2, {linear(Vector{1.0})}), DimensionError);
  CHECK_THROWS_AS(FeasibilityProblem(1, {huber(1)}), DimensionError);
  CHECK_THROWS_AS(FeasibilityProblem(1, {huber()}, SlaterCertificate{Vector{0, 0}, 1, 1}), DimensionError);
  const FeasibilityProblem p(2, {linear(Vector{3, 4}), huber(1)});
  CHECK(p.subgradient_bound() == 5.0);
  CHECK_THROWS_AS(residual(p, Vector{1.0}), DimensionError);
}
