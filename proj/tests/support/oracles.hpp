#pragma once

// Test-only reference computations, written independently of the library's
// implementation paths.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "subfeas/functions.hpp"
#include "subfeas/vector.hpp"

namespace subfeas::testing {

/// Smallest n with sum_{k<n} delta(k) > dist by plain accumulation.
std::optional<std::uint64_t> bound_by_partial_sums(double dist, const std::function<double(std::uint64_t)>& delta,
                                                   std::uint64_t cap);

/// Huber value as the Moreau envelope min_u (t-u)^2/2 + |u|, by ternary search.
double huber_by_envelope(double t);

/// Truncated Huber as the envelope evaluated at max(t, 0).
double truncated_huber_by_envelope(double t);

struct SampleStats {
  std::uint64_t samples = 0;
  std::uint64_t inequality_violations = 0;
  std::uint64_t bound_violations = 0;
  double worst_gap = 0.0;
};

/// Samples x, y uniformly in [-box, box]^n and checks
///   f(y) >= f(x) + <g(x), y - x> - eps * max(1, |f(x)|, |f(y)|, |<g, y-x>|)
///   ||g(x)|| <= L + eps * max(1, L).
SampleStats sample_subgradient_properties(const ConstraintOracle& f, std::size_t n, std::uint64_t samples,
                                          double box, double eps, std::uint64_t seed);

/// One-sided difference quotients of a scalar function at t.
double left_difference(const std::function<double(double)>& f, double t, double h);
double right_difference(const std::function<double(double)>& f, double t, double h);

}  // namespace subfeas::testing
