#include "subfeas/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "subfeas/errors.hpp"

namespace subfeas {

FeasibilityProblem::FeasibilityProblem(std::size_t dimension, std::vector<ConstraintOracle> constraints,
                                       std::optional<SlaterCertificate> slater)
    : dimension_(dimension), constraints_(std::move(constraints)), slater_(std::move(slater)) {
  if (dimension_ == 0) throw PreconditionError("problem dimension must be at least 1");
  if (constraints_.empty()) throw PreconditionError("problem needs at least one constraint");
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    if (!constraints_[i].accepts_dimension(dimension_)) {
      throw DimensionError("constraint " + std::to_string(i) + " (" + constraints_[i].kind() +
                           ") is incompatible with dimension " + std::to_string(dimension_));
    }
  }
  if (slater_ && slater_->s.size() != dimension_) {
    throw DimensionError("Slater point has dimension " + std::to_string(slater_->s.size()) +
                         ", problem has " + std::to_string(dimension_));
  }
}

double FeasibilityProblem::subgradient_bound() const {
  double bound = 0.0;
  for (const auto& c : constraints_) bound = std::max(bound, c.subgradient_bound());
  return bound;
}

FeasibilityProblem FeasibilityProblem::with_certificate(SlaterCertificate cert) const {
  return FeasibilityProblem(dimension_, constraints_, std::move(cert));
}

std::vector<std::string> CertificateReport::problems() const {
  std::vector<std::string> out;
  if (!strictly_feasible) out.emplace_back("some f_i(s) >= 0: s is not a Slater point");
  if (!sigma_positive) out.emplace_back("sigma must be positive");
  if (!sigma_within_margin) out.emplace_back("sigma exceeds min_i -f_i(s)");
  if (!L_positive) out.emplace_back("L must be positive");
  return out;
}

CertificateReport validate_certificate(const FeasibilityProblem& p, const SlaterCertificate& cert) {
  if (cert.s.size() != p.dimension()) {
    throw DimensionError("certificate dimension " + std::to_string(cert.s.size()) +
                         " does not match problem dimension " + std::to_string(p.dimension()));
  }
  CertificateReport report;
  report.values = residual(p, cert.s);
  report.min_margin = std::numeric_limits<double>::infinity();
  for (double v : report.values) report.min_margin = std::min(report.min_margin, -v);
  report.oracle_bound = p.subgradient_bound();
  report.strictly_feasible = std::all_of(report.values.begin(), report.values.end(),
                                         [](double v) { return v < 0.0; });
  report.sigma_positive = cert.sigma > 0.0 && std::isfinite(cert.sigma);
  report.sigma_within_margin = cert.sigma <= report.min_margin;
  report.L_positive = cert.L > 0.0 && std::isfinite(cert.L);
  report.L_covers_oracles = cert.L >= report.oracle_bound;
  return report;
}

std::vector<double> residual(const FeasibilityProblem& p, const Vector& x) {
  if (x.size() != p.dimension()) {
    throw DimensionError("point dimension " + std::to_string(x.size()) +
                         " does not match problem dimension " + std::to_string(p.dimension()));
  }
  std::vector<double> out;
  out.reserve(p.size());
  for (const auto& c : p.constraints()) out.push_back(c.value(x));
  return out;
}

bool is_feasible(const FeasibilityProblem& p, const Vector& x, double tolerance) {
  const auto r = residual(p, x);
  return std::all_of(r.begin(), r.end(), [tolerance](double v) { return v <= tolerance; });
}

}  // namespace subfeas
