#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "subfeas/functions.hpp"
#include "subfeas/vector.hpp"

namespace subfeas {

/// A strictly feasible point s with margin sigma <= min_i -f_i(s), and a
/// global subgradient bound L.
struct SlaterCertificate {
  Vector s;
  double sigma = 0.0;
  double L = 0.0;
};

/// The system f_i(x) <= 0, i = 0..m-1, over R^n.
class FeasibilityProblem {
 public:
  FeasibilityProblem(std::size_t dimension, std::vector<ConstraintOracle> constraints,
                     std::optional<SlaterCertificate> slater = std::nullopt);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return constraints_.size(); }
  const std::vector<ConstraintOracle>& constraints() const { return constraints_; }
  const ConstraintOracle& operator[](std::size_t i) const { return constraints_[i]; }
  const std::optional<SlaterCertificate>& slater() const { return slater_; }

  /// max_i L_i over the declared oracle bounds.
  double subgradient_bound() const;

  /// Returns a copy carrying the given certificate (not validated here).
  FeasibilityProblem with_certificate(SlaterCertificate cert) const;

 private:
  std::size_t dimension_;
  std::vector<ConstraintOracle> constraints_;
  std::optional<SlaterCertificate> slater_;
};

struct CertificateReport {
  std::vector<double> values;  // f_i(s)
  double min_margin = 0.0;     // min_i -f_i(s)
  double oracle_bound = 0.0;   // max_i L_i of the oracles
  bool strictly_feasible = false;
  bool sigma_positive = false;
  bool sigma_within_margin = false;
  bool L_positive = false;
  /// Informational: cert.L covers the oracles' declared bounds.
  bool L_covers_oracles = false;

  bool valid() const { return strictly_feasible && sigma_positive && sigma_within_margin && L_positive; }
  std::vector<std::string> problems() const;
};

CertificateReport validate_certificate(const FeasibilityProblem& p, const SlaterCertificate& cert);

/// f_i(x) for every constraint.
std::vector<double> residual(const FeasibilityProblem& p, const Vector& x);

/// All residuals <= tolerance.
bool is_feasible(const FeasibilityProblem& p, const Vector& x, double tolerance = 0.0);

}  // namespace subfeas
