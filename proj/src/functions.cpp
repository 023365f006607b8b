#include "subfeas/functions.hpp"

#include <algorithm>
#include <cmath>

#include "subfeas/errors.hpp"

namespace subfeas {

namespace scalar {

double huber(double t) {
  const double a = std::abs(t);
  return a <= 1.0 ? 0.5 * t * t : a - 0.5;
}

double huber_derivative(double t) { return std::clamp(t, -1.0, 1.0); }

double truncated_huber(double t) {
  if (t <= 0.0) return 0.0;
  return t <= 1.0 ? 0.5 * t * t : t - 0.5;
}

double truncated_huber_derivative(double t) { return std::clamp(t, 0.0, 1.0); }

}  // namespace scalar

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_coordinate(std::size_t coordinate, const Vector& x) {
  if (coordinate >= x.size()) {
    throw DimensionError("coordinate " + std::to_string(coordinate) +
                         " out of range for dimension " + std::to_string(x.size()));
  }
}

Vector unit_scaled(std::size_t n, std::size_t coordinate, double value) {
  Vector g = Vector::zeros(n);
  g[coordinate] = value;
  return g;
}

double compute_bound(const ConstraintOracle::Descriptor& d) {
  return std::visit(overloaded{
                        [](const LinearFunctional& f) { return norm(f.a); },
                        [](const HuberFunction&) { return 1.0; },
                        [](const TruncatedHuberFunction&) { return 1.0; },
                        [](const PointwiseMax& f) {
                          double bound = 0.0;
                          for (const auto& c : f.children) bound = std::max(bound, c.subgradient_bound());
                          return bound;
                        },
                    },
                    d);
}

}  // namespace

ConstraintOracle::ConstraintOracle(Descriptor descriptor) : descriptor_(std::move(descriptor)) {
  std::visit(overloaded{
                 [](const LinearFunctional& f) {
                   if (f.a.empty()) throw PreconditionError("linear: empty coefficient vector");
                   if (!f.a.is_finite() || !std::isfinite(f.b))
                     throw PreconditionError("linear: non-finite coefficients");
                 },
                 [](const HuberFunction& f) {
                   if (!std::isfinite(f.center) || !std::isfinite(f.offset))
                     throw PreconditionError("huber: non-finite parameters");
                 },
                 [](const TruncatedHuberFunction& f) {
                   if (!std::isfinite(f.center) || !std::isfinite(f.offset))
                     throw PreconditionError("truncated_huber: non-finite parameters");
                 },
                 [](const PointwiseMax& f) {
                   if (f.children.empty()) throw PreconditionError("max: needs at least one child");
                 },
             },
             descriptor_);
  bound_ = compute_bound(descriptor_);
}

double ConstraintOracle::value(const Vector& x) const {
  return std::visit(overloaded{
                        [&](const LinearFunctional& f) { return inner(f.a, x) + f.b; },
                        [&](const HuberFunction& f) {
                          require_coordinate(f.coordinate, x);
                          return scalar::huber(x[f.coordinate] - f.center) + f.offset;
                        },
                        [&](const TruncatedHuberFunction& f) {
                          require_coordinate(f.coordinate, x);
                          return scalar::truncated_huber(x[f.coordinate] - f.center) + f.offset;
                        },
                        [&](const PointwiseMax& f) {
                          double best = f.children.front().value(x);
                          for (std::size_t j = 1; j < f.children.size(); ++j)
                            best = std::max(best, f.children[j].value(x));
                          return best;
                        },
                    },
                    descriptor_);
}

Vector ConstraintOracle::subgradient(const Vector& x) const {
  return std::visit(overloaded{
                        [&](const LinearFunctional& f) {
                          require_same_dimension(f.a, x);
                          return f.a;
                        },
                        [&](const HuberFunction& f) {
                          require_coordinate(f.coordinate, x);
                          return unit_scaled(x.size(), f.coordinate,
                                             scalar::huber_derivative(x[f.coordinate] - f.center));
                        },
                        [&](const TruncatedHuberFunction& f) {
                          require_coordinate(f.coordinate, x);
                          return unit_scaled(x.size(), f.coordinate,
                                             scalar::truncated_huber_derivative(x[f.coordinate] - f.center));
                        },
                        [&](const PointwiseMax& f) {
                          std::size_t arg = 0;
                          double best = f.children.front().value(x);
                          for (std::size_t j = 1; j < f.children.size(); ++j) {
                            const double v = f.children[j].value(x);
                            if (v > best) {
                              best = v;
                              arg = j;
                            }
                          }
                          return f.children[arg].subgradient(x);
                        },
                    },
                    descriptor_);
}

bool ConstraintOracle::accepts_dimension(std::size_t n) const {
  return std::visit(overloaded{
                        [&](const LinearFunctional& f) { return f.a.size() == n; },
                        [&](const HuberFunction& f) { return f.coordinate < n; },
                        [&](const TruncatedHuberFunction& f) { return f.coordinate < n; },
                        [&](const PointwiseMax& f) {
                          return std::all_of(f.children.begin(), f.children.end(),
                                             [n](const auto& c) { return c.accepts_dimension(n); });
                        },
                    },
                    descriptor_);
}

std::string ConstraintOracle::kind() const {
  return std::visit(overloaded{
                        [](const LinearFunctional&) { return std::string("linear"); },
                        [](const HuberFunction&) { return std::string("huber"); },
                        [](const TruncatedHuberFunction&) { return std::string("truncated_huber"); },
                        [](const PointwiseMax&) { return std::string("max"); },
                    },
                    descriptor_);
}

ConstraintOracle linear(Vector a, double b) { return ConstraintOracle(LinearFunctional{std::move(a), b}); }

ConstraintOracle huber(std::size_t coordinate, double center, double offset) {
  return ConstraintOracle(HuberFunction{coordinate, center, offset});
}

ConstraintOracle truncated_huber(std::size_t coordinate, double center, double offset) {
  return ConstraintOracle(TruncatedHuberFunction{coordinate, center, offset});
}

ConstraintOracle pointwise_max(std::vector<ConstraintOracle> children) {
  return ConstraintOracle(PointwiseMax{std::move(children)});
}

}  // namespace subfeas
