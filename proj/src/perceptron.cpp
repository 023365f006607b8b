#include "subfeas/perceptron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "subfeas/errors.hpp"
#include "subfeas/schedule.hpp"

namespace subfeas {

LinearDataset::LinearDataset(std::vector<Vector> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw PreconditionError("dataset has no rows");
  const std::size_t d = rows_.front().size();
  if (d == 0) throw PreconditionError("dataset rows must have at least one coordinate");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != d) {
      throw DimensionError("row " + std::to_string(i) + " has dimension " + std::to_string(rows_[i].size()) +
                           ", expected " + std::to_string(d));
    }
    if (!rows_[i].is_finite()) throw PreconditionError("row " + std::to_string(i) + " is not finite");
    if (norm_sq(rows_[i]) == 0.0) throw PreconditionError("row " + std::to_string(i) + " is zero");
  }
}

LinearDataset LinearDataset::from_labeled(const std::vector<Vector>& points, const std::vector<int>& labels) {
  if (points.size() != labels.size()) throw PreconditionError("points and labels differ in length");
  std::vector<Vector> rows;
  rows.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (labels[i] != 1 && labels[i] != -1) {
      throw PreconditionError("label " + std::to_string(labels[i]) + " is not +1 or -1");
    }
    rows.push_back(static_cast<double>(labels[i]) * points[i]);
  }
  return LinearDataset(std::move(rows));
}

double LinearDataset::max_row_norm() const {
  double best = 0.0;
  for (const auto& a : rows_) best = std::max(best, norm(a));
  return best;
}

std::vector<double> LinearDataset::margins(const Vector& x) const {
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& a : rows_) out.push_back(inner(a, x));
  return out;
}

Vector MarginCertificate::slater_point() const { return (rho * (L * L / mu)) * z; }

FeasibilityProblem build_problem(const LinearDataset& ds) {
  std::vector<ConstraintOracle> constraints;
  constraints.reserve(ds.size());
  for (const auto& a : ds.rows()) constraints.push_back(linear(-1.0 * a, 0.0));
  return FeasibilityProblem(ds.dimension(), std::move(constraints));
}

MarginCertificate derive_margin(const LinearDataset& ds, const Vector& z, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw PreconditionError("rho must be positive");
  if (z.size() != ds.dimension()) throw DimensionError("separator dimension does not match dataset");
  const auto m = ds.margins(z);
  const double mu = *std::min_element(m.begin(), m.end());
  if (!(mu > 0.0)) throw PreconditionError("z is not a strict separator: min_i <z, a_i> <= 0");
  return MarginCertificate{z, mu, ds.max_row_norm(), rho};
}

SlaterCertificate derive_certificate(const LinearDataset& ds, const Vector& z, double rho) {
  const auto mc = derive_margin(ds, z, rho);
  SlaterCertificate cert{mc.slater_point(), mc.sigma(), mc.L};
  const auto m = ds.margins(cert.s);
  cert.sigma = std::min(cert.sigma, *std::min_element(m.begin(), m.end()));
  return cert;
}

SolveOutcome train_perceptron(const LinearDataset& ds, const Vector& x0, double alpha,
                              const PerceptronOptions& options) {
  if (x0.size() != ds.dimension()) throw DimensionError("starting point dimension does not match dataset");
  if (!x0.is_finite()) throw PreconditionError("starting point has non-finite coordinates");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw PreconditionError("alpha must be positive");
  if (options.tolerance < 0.0) throw PreconditionError("tolerance must be nonnegative");

  // f_i(x) = -<x, a_i> is a mistake when it exceeds the threshold.
  const double threshold = options.strict ? -std::numeric_limits<double>::denorm_min() : options.tolerance;
  const auto& cert = options.certificate;

  SolveOutcome out;
  if (cert) out.bound_used = iteration_bound(x0, *cert, StepSchedule::constant(alpha));
  out.budget = resolve_budget(options.budget, out.bound_used);

  const bool cycles = options.detect_cycles && options.rule.stateless();
  const bool monitors = options.monitors && cert.has_value();
  detail::IterateHistory history(cycles ? options.cycle_window : 0);
  Selector selector(options.rule);

  std::vector<double> values(ds.size());
  Vector x = x0;
  history.push(x);
  for (std::uint64_t k = 0;; ++k) {
    for (std::size_t i = 0; i < ds.size(); ++i) values[i] = -inner(ds[i], x);
    const auto chosen = selector.choose(values, threshold);
    if (!chosen || k == out.budget) {
      out.verdict = chosen ? Verdict::budget_exhausted : Verdict::feasible;
      out.steps = k;
      break;
    }
    if (cycles) {
      if (auto period = history.cycle()) {
        out.verdict = Verdict::cycle_detected;
        out.period = period;
        out.steps = k;
        break;
      }
    }

    const Vector& a = ds[*chosen];
    IterationRecord rec;
    rec.k = k;
    rec.x = x;
    rec.i = *chosen;
    rec.f_value = values[*chosen];
    rec.g = -1.0 * a;
    rec.g_norm = norm(rec.g);
    rec.alpha = alpha;
    if (cert) rec.delta = delta_for_alpha(alpha, *cert);

    std::vector<double> next(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) next[j] = x[j] + alpha * a[j];
    Vector x_next(std::move(next));

    if (monitors) {
      rec.flags = monitor_one_step(rec, *cert, x_next, options.eps_scale);
      detail::tally(out, rec.flags);
    }
    if (options.record_trace) out.trace.push_back(std::move(rec));
    x = std::move(x_next);
    if (cycles) history.push(x);
  }
  out.final_residual = values;
  out.x = std::move(x);
  return out;
}

std::optional<MarginEstimate> estimate_margin(const LinearDataset& ds) {
  PerceptronOptions options;
  options.strict = true;
  options.budget = kMarginEstimateBudget;
  options.record_trace = false;
  const auto run = train_perceptron(ds, Vector::zeros(ds.dimension()), 1.0, options);
  if (run.verdict != Verdict::feasible) return std::nullopt;
  const double len = norm(run.x);
  if (len == 0.0) return std::nullopt;
  Vector z = (1.0 / len) * run.x;
  const auto m = ds.margins(z);
  const double mu = *std::min_element(m.begin(), m.end());
  if (!(mu > 0.0)) return std::nullopt;
  return MarginEstimate{std::move(z), mu};
}

namespace {

// Uniform on [0, 1) from the top 53 bits; identical on every platform.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

PlantedDataset generate_separable(std::size_t dimension, std::size_t rows, double margin, std::uint64_t seed) {
  if (dimension == 0 || rows == 0) throw PreconditionError("generator needs dimension >= 1 and rows >= 1");
  if (!(margin > 0.0) || margin >= 1.0) throw PreconditionError("planted margin must lie in (0, 1)");
  std::mt19937_64 rng(seed);

  std::vector<double> zc(dimension);
  double len = 0.0;
  while (len < 1e-3) {
    for (auto& c : zc) c = 2.0 * unit_uniform(rng) - 1.0;
    len = norm(Vector(zc));
  }
  Vector z = (1.0 / len) * Vector(zc);

  // The box [-1,1]^d always contains points with |<z,p>| >= margin (e.g. sign(z)),
  // so rejection terminates.
  std::vector<Vector> out;
  out.reserve(rows);
  while (out.size() < rows) {
    std::vector<double> p(dimension);
    for (auto& c : p) c = 2.0 * unit_uniform(rng) - 1.0;
    Vector pv(std::move(p));
    const double t = inner(z, pv);
    if (std::abs(t) < margin) continue;
    out.push_back(t > 0.0 ? pv : -1.0 * pv);
  }
  return PlantedDataset{LinearDataset(std::move(out)), std::move(z)};
}

std::vector<double> rho_grid() {
  std::vector<double> grid;
  for (int e = -3; e <= 10; ++e) grid.push_back(std::ldexp(1.0, e));
  return grid;
}

}  // namespace subfeas
