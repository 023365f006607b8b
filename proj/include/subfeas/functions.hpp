#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "subfeas/vector.hpp"

namespace subfeas {

class ConstraintOracle;

/// f(x) = <a, x> + b. Gradient is a everywhere.
struct LinearFunctional {
  Vector a;
  double b = 0.0;
};

/// f(x) = H(x[coordinate] - center) + offset with the Huber function
///   H(t) = t^2 / 2 for |t| <= 1, |t| - 1/2 otherwise.
struct HuberFunction {
  std::size_t coordinate = 0;
  double center = 0.0;
  double offset = 0.0;
};

/// f(x) = T(x[coordinate] - center) + offset with the truncated Huber function
///   T(t) = 0 for t <= 0, t^2 / 2 for 0 <= t <= 1, t - 1/2 for t >= 1.
struct TruncatedHuberFunction {
  std::size_t coordinate = 0;
  double center = 0.0;
  double offset = 0.0;
};

/// f(x) = max_j f_j(x); the subgradient comes from the lowest-index maximizer.
struct PointwiseMax {
  std::vector<ConstraintOracle> children;
};

/// A convex function on R^n exposing its value, one deterministic
/// subgradient, and a declared bound on all subgradient norms.
///
/// Oracles are immutable values; copies are cheap enough for problem
/// assembly and safe to share between concurrent solves.
class ConstraintOracle {
 public:
  using Descriptor = std::variant<LinearFunctional, HuberFunction, TruncatedHuberFunction, PointwiseMax>;

  explicit ConstraintOracle(Descriptor descriptor);

  double value(const Vector& x) const;
  Vector subgradient(const Vector& x) const;
  double subgradient_bound() const { return bound_; }

  /// True when the oracle can be evaluated on vectors of dimension n.
  bool accepts_dimension(std::size_t n) const;

  const Descriptor& descriptor() const { return descriptor_; }
  std::string kind() const;

 private:
  Descriptor descriptor_;
  double bound_ = 0.0;
};

ConstraintOracle linear(Vector a, double b = 0.0);
ConstraintOracle huber(std::size_t coordinate = 0, double center = 0.0, double offset = 0.0);
ConstraintOracle truncated_huber(std::size_t coordinate = 0, double center = 0.0, double offset = 0.0);
ConstraintOracle pointwise_max(std::vector<ConstraintOracle> children);

namespace scalar {

double huber(double t);
double huber_derivative(double t);
double truncated_huber(double t);
double truncated_huber_derivative(double t);

}  // namespace scalar

}  // namespace subfeas
