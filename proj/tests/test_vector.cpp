#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "subfeas/errors.hpp"
#include "subfeas/vector.hpp"

using namespace subfeas;

TEST_CASE("inner product examples") {
  CHECK(inner(Vector{1, 2}, Vector{3, 4}) == 11.0);
  CHECK(inner(Vector{0, 0, 0}, Vector{5, -2, 7}) == 0.0);
  CHECK(inner(Vector{1}, Vector{-1}) == -1.0);
  CHECK_THROWS_AS(inner(Vector{1, 2}, Vector{1}), DimensionError);
}

TEST_CASE("norm_sq examples") {
  CHECK(norm_sq(Vector{3, 4}) == 25.0);
  CHECK(norm_sq(Vector{0}) == 0.0);
  CHECK(norm_sq(Vector{1, 1, 1, 1}) == 4.0);
  CHECK(norm(Vector{3, 4}) == 5.0);
  CHECK_THROWS_AS(norm_sq(Vector{1.0, std::numeric_limits<double>::quiet_NaN()}), PreconditionError);
  CHECK_THROWS_AS(norm_sq(Vector{std::numeric_limits<double>::infinity()}), PreconditionError);
}

TEST_CASE("inner is symmetric and bilinear on random vectors") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 7;
    std::vector<double> a(n), b(n), c(n);
    for (std::size_t j = 0; j < n; ++j) {
      a[j] = u(rng);
      b[j] = u(rng);
      c[j] = u(rng);
    }
    const Vector x(a), y(b), z(c);
    CHECK(inner(x, y) == inner(y, x));
    const double lhs = inner(subtract_scaled(x, -2.0, z), y);
    const double rhs = inner(x, y) + 2.0 * inner(z, y);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(100));
    CHECK(norm_sq(x) >= 0.0);
  }
}

TEST_CASE("bitwise equality distinguishes signed zeros") {
  CHECK(Vector{0.0} == Vector{-0.0});
  CHECK_FALSE(bitwise_equal(Vector{0.0}, Vector{-0.0}));
  CHECK(bitwise_equal(Vector{0.5, -1.25}, Vector{0.5, -1.25}));
  CHECK_FALSE(bitwise_equal(Vector{1.0}, Vector{1.0, 2.0}));
}

TEST_CASE("subtract_scaled and distance") {
  CHECK(subtract_scaled(Vector{1, 2}, 0.5, Vector{2, -2}) == Vector{0, 3});
  CHECK(distance_sq(Vector{-5}, Vector{4}) == 81.0);
  CHECK_THROWS_AS(subtract_scaled(Vector{1}, 1.0, Vector{1, 2}), DimensionError);
}
