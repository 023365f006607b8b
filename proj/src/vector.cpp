#include "subfeas/vector.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "subfeas/errors.hpp"

namespace subfeas {

Vector::Vector(std::initializer_list<double> coords) : coords_(coords) {}

Vector::Vector(std::vector<double> coords) : coords_(std::move(coords)) {}

Vector Vector::zeros(std::size_t n) { return Vector(std::vector<double>(n, 0.0)); }

bool Vector::is_finite() const {
  for (double c : coords_) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

bool operator==(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] != y[j]) return false;
  }
  return true;
}

bool bitwise_equal(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (std::bit_cast<std::uint64_t>(x[j]) != std::bit_cast<std::uint64_t>(y[j])) return false;
  }
  return true;
}

void require_same_dimension(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) {
    throw DimensionError("dimension mismatch: " + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()));
  }
}

double inner(const Vector& x, const Vector& y) {
  require_same_dimension(x, y);
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) sum += x[j] * y[j];
  return sum;
}

double norm_sq(const Vector& x) {
  if (!x.is_finite()) throw PreconditionError("norm_sq: vector has non-finite coordinates");
  double sum = 0.0;
  for (double c : x) sum += c * c;
  return sum;
}

double norm(const Vector& x) { return std::sqrt(norm_sq(x)); }

Vector subtract_scaled(const Vector& x, double alpha, const Vector& g) {
  require_same_dimension(x, g);
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] - alpha * g[j];
  return Vector(std::move(out));
}

Vector operator-(const Vector& x, const Vector& y) {
  require_same_dimension(x, y);
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] - y[j];
  return Vector(std::move(out));
}

Vector operator*(double alpha, const Vector& x) {
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = alpha * x[j];
  return Vector(std::move(out));
}

double distance_sq(const Vector& x, const Vector& y) {
  require_same_dimension(x, y);
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double d = x[j] - y[j];
    sum += d * d;
  }
  return sum;
}

}  // namespace subfeas
