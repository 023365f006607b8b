#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace subfeas {

/// Element of the ambient space R^n with the standard dot product.
class Vector {
 public:
  Vector() = default;
  Vector(std::initializer_list<double> coords);
  explicit Vector(std::vector<double> coords);

  static Vector zeros(std::size_t n);

  std::size_t size() const { return coords_.size(); }
  bool empty() const { return coords_.empty(); }

  double operator[](std::size_t j) const { return coords_[j]; }
  double& operator[](std::size_t j) { return coords_[j]; }

  std::span<const double> coords() const { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  bool is_finite() const;

 private:
  std::vector<double> coords_;
};

/// Coordinatewise value equality (0.0 == -0.0).
bool operator==(const Vector& x, const Vector& y);

/// Equality of the IEEE-754 bit patterns of every coordinate.
bool bitwise_equal(const Vector& x, const Vector& y);

void require_same_dimension(const Vector& x, const Vector& y);

/// Sum of x_j * y_j. Throws DimensionError on mismatch.
double inner(const Vector& x, const Vector& y);

/// inner(x, x). Throws PreconditionError if x has a non-finite coordinate.
double norm_sq(const Vector& x);

double norm(const Vector& x);

/// x - alpha * g, evaluated coordinatewise as x_j - (alpha * g_j).
Vector subtract_scaled(const Vector& x, double alpha, const Vector& g);

Vector operator-(const Vector& x, const Vector& y);
Vector operator*(double alpha, const Vector& x);

/// ||x - y||^2
double distance_sq(const Vector& x, const Vector& y);

}  // namespace subfeas
