#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace subfeas::testing {

std::optional<std::uint64_t> bound_by_partial_sums(double dist, const std::function<double(std::uint64_t)>& delta,
                                                   std::uint64_t cap) {
  double sum = 0.0;
  for (std::uint64_t k = 0; k < cap; ++k) {
    sum += delta(k);
    if (sum > dist) return k + 1;
  }
  return std::nullopt;
}

double huber_by_envelope(double t) {
  auto objective = [t](double u) { return 0.5 * (t - u) * (t - u) + std::abs(u); };
  double lo = -std::abs(t) - 1.0;
  double hi = std::abs(t) + 1.0;
  for (int it = 0; it < 300; ++it) {
    const double a = lo + (hi - lo) / 3.0;
    const double b = hi - (hi - lo) / 3.0;
    if (objective(a) < objective(b)) hi = b;
    else lo = a;
  }
  return objective(0.5 * (lo + hi));
}

double truncated_huber_by_envelope(double t) { return huber_by_envelope(std::max(t, 0.0)); }

SampleStats sample_subgradient_properties(const ConstraintOracle& f, std::size_t n, std::uint64_t samples,
                                          double box, double eps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-box, box);
  auto draw = [&] {
    std::vector<double> c(n);
    for (auto& v : c) v = coord(rng);
    return Vector(std::move(c));
  };

  SampleStats stats;
  const double L = f.subgradient_bound();
  for (std::uint64_t s = 0; s < samples; ++s) {
    const Vector x = draw();
    const Vector y = draw();
    const double fx = f.value(x);
    const double fy = f.value(y);
    const Vector g = f.subgradient(x);
    double lin = 0.0;
    for (std::size_t j = 0; j < n; ++j) lin += g[j] * (y[j] - x[j]);
    const double scale = std::max({1.0, std::abs(fx), std::abs(fy), std::abs(lin)});
    const double gap = fy - (fx + lin);
    stats.worst_gap = std::min(stats.worst_gap, gap);
    if (gap < -eps * scale) ++stats.inequality_violations;
    double gn = 0.0;
    for (double v : g) gn += v * v;
    if (std::sqrt(gn) > L + eps * std::max(1.0, L)) ++stats.bound_violations;
    ++stats.samples;
  }
  return stats;
}

double left_difference(const std::function<double(double)>& f, double t, double h) {
  return (f(t) - f(t - h)) / h;
}

double right_difference(const std::function<double(double)>& f, double t, double h) {
  return (f(t + h) - f(t)) / h;
}

}  // namespace subfeas::testing
