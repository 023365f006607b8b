#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "subfeas/problem.hpp"
#include "subfeas/solver.hpp"
#include "subfeas/vector.hpp"

namespace subfeas {

/// Rows a_i of the homogeneous system <x, a_i> >= 0.
class LinearDataset {
 public:
  explicit LinearDataset(std::vector<Vector> rows);

  /// a_i = y_i p_i with y_i in {+1, -1}.
  static LinearDataset from_labeled(const std::vector<Vector>& points, const std::vector<int>& labels);

  std::size_t dimension() const { return rows_.front().size(); }
  std::size_t size() const { return rows_.size(); }
  const std::vector<Vector>& rows() const { return rows_; }
  const Vector& operator[](std::size_t i) const { return rows_[i]; }

  /// max_i ||a_i||
  double max_row_norm() const;
  /// <x, a_i> for every row.
  std::vector<double> margins(const Vector& x) const;

 private:
  std::vector<Vector> rows_;
};

/// Known strict separator z with mu = min_i <z, a_i> > 0 and L = max_i ||a_i||,
/// scaled by rho into the Slater point s_rho = rho (L^2 / mu) z.
struct MarginCertificate {
  Vector z;
  double mu = 0.0;
  double L = 0.0;
  double rho = 1.0;

  Vector slater_point() const;
  double sigma() const { return rho * L * L; }
};

/// Linear constraints f_i(x) = <x, -a_i>.
FeasibilityProblem build_problem(const LinearDataset& ds);

/// Throws PreconditionError unless <z, a_i> > 0 for every row and rho > 0.
MarginCertificate derive_margin(const LinearDataset& ds, const Vector& z, double rho);

/// The Slater certificate (s_rho, sigma_rho, L). sigma is rho L^2, lowered
/// to min_i <s_rho, a_i> when rounding puts the evaluated margin below it.
SlaterCertificate derive_certificate(const LinearDataset& ds, const Vector& z, double rho);

struct PerceptronOptions {
  SelectionRule rule;
  double tolerance = 0.0;
  std::optional<std::uint64_t> budget;
  /// Treat <x, a_i> <= 0 as a mistake (classical perceptron) instead of < -tolerance.
  bool strict = false;
  bool detect_cycles = true;
  std::size_t cycle_window = 64;
  bool record_trace = true;
  /// Fills delta_k, derives the default budget, and enables monitors.
  std::optional<SlaterCertificate> certificate;
  bool monitors = true;
  double eps_scale = 1e-9;
};

/// Mistake-driven updates x <- x + alpha a_i on rows with <x, a_i> below the
/// threshold. Produces the same outcome as solve() on build_problem(ds) with a
/// constant step (non-strict mode).
SolveOutcome train_perceptron(const LinearDataset& ds, const Vector& x0, double alpha,
                              const PerceptronOptions& options = {});

struct MarginEstimate {
  Vector z;  // unit norm
  double mu = 0.0;
};

inline constexpr std::uint64_t kMarginEstimateBudget = 100'000;

/// Finds some strict separator by running the classical perceptron from 0.
std::optional<MarginEstimate> estimate_margin(const LinearDataset& ds);

struct PlantedDataset {
  LinearDataset data;
  Vector z;  // unit separator with <z, a_i> >= margin
};

/// Rows drawn uniformly from [-1, 1]^d, reflected to the positive side of a
/// random unit z, and rejected when |<z, p>| < margin.
PlantedDataset generate_separable(std::size_t dimension, std::size_t rows, double margin, std::uint64_t seed);

/// The rho grid {2^-3, ..., 2^10}.
std::vector<double> rho_grid();

}  // namespace subfeas
