#include "subfeas/repro.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

#include "subfeas/errors.hpp"
#include "subfeas/functions.hpp"
#include "subfeas/perceptron.hpp"
#include "subfeas/problem.hpp"
#include "subfeas/schedule.hpp"
#include "subfeas/solver.hpp"

namespace subfeas::repro {

bool Report::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

void Report::check(std::string description, bool ok, std::string detail) {
  assertions.push_back({std::move(description), ok, std::move(detail)});
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

std::vector<double> first_coordinates(const SolveOutcome& run) {
  std::vector<double> xs;
  xs.reserve(run.trace.size() + 1);
  for (const auto& r : run.trace) xs.push_back(r.x[0]);
  xs.push_back(run.x[0]);
  return xs;
}

// max_k |x_k (k+1) - 1|, i.e. the relative error against 1/(k+1).
double harmonic_rel_error(const std::vector<double>& xs) {
  double worst = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double expected = 1.0 / static_cast<double>(k + 1);
    worst = std::max(worst, std::abs(xs[k] - expected) / expected);
  }
  return worst;
}

void require_steps(std::uint64_t steps) {
  if (steps < 1) throw PreconditionError("steps must be at least 1");
}

SolveOptions fixed_budget(SelectionRule rule, std::uint64_t budget) {
  SolveOptions opt;
  opt.rule = rule;
  opt.budget = budget;
  return opt;
}

}  // namespace

Report run_remark_2_6(std::uint64_t steps) {
  require_steps(steps);
  Report report{"remark_2_6", {}, {}};
  const FeasibilityProblem p(1, {huber()});
  const auto run = solve(p, Vector{1.0}, StepSchedule::harmonic(2.0),
                         fixed_budget(SelectionRule::first_violated(), steps));
  report.sequence = first_coordinates(run);
  const auto& xs = report.sequence;

  report.check("x_0 = 1 (starting point unchanged)", xs.front() == 1.0, "x_0 = " + fmt(xs.front()));
  const double err = harmonic_rel_error(xs);
  report.check("x_k = 1/(k+1) for k <= " + std::to_string(steps) + " (relative 1e-12)", err <= kHarmonicRelTol,
               "max relative error " + fmt(err));

  bool outside = true;
  for (const auto& rec : run.trace) outside = outside && rec.f_value > 0.0;
  outside = outside && run.final_residual.at(0) > 0.0;
  report.check("every iterate is infeasible: H(x_k) > 0", outside, "H(x_last) = " + fmt(run.final_residual.at(0)));

  report.check("verdict is budget_exhausted after " + std::to_string(steps) + " steps, never feasible",
               run.verdict == Verdict::budget_exhausted && run.steps == steps,
               "verdict " + to_string(run.verdict) + ", steps " + std::to_string(run.steps));
  return report;
}

Report run_example_2_7(std::uint64_t steps) {
  require_steps(steps);
  Report report{"example_2_7", {}, {}};
  const FeasibilityProblem p(1, {truncated_huber(), linear(Vector{1.0}, 1.0)});
  const auto run = solve(p, Vector{1.0}, StepSchedule::harmonic(2.0),
                         fixed_budget(SelectionRule::first_violated(), steps));
  report.sequence = first_coordinates(run);

  const bool always_first =
      std::all_of(run.trace.begin(), run.trace.end(), [](const IterationRecord& r) { return r.i == 0; });
  report.check("selected constraint is always the truncated Huber f_1 (index 0)", always_first);

  bool f2_dominates = true;
  for (const auto& rec : run.trace) {
    const auto r = residual(p, rec.x);
    f2_dominates = f2_dominates && r[1] > r[0] && r[0] > 0.0;
  }
  report.check("both constraints violated with f_2(x_k) > f_1(x_k) > 0 on every step", f2_dominates);

  const double err = harmonic_rel_error(report.sequence);
  report.check("x_k = 1/(k+1) (relative 1e-12)", err <= kHarmonicRelTol, "max relative error " + fmt(err));

  report.check("verdict is budget_exhausted", run.verdict == Verdict::budget_exhausted,
               "verdict " + to_string(run.verdict));

  const double f2_last = run.final_residual.at(1);
  report.check("f_2(x_last) > 0 and f_2(x_last) -> 1", f2_last > 0.0 && std::abs(f2_last - 1.0) <= 2.0 / (steps + 1),
               "f_2(x_last) = " + fmt(f2_last));

  const auto at_zero = residual(p, Vector{0.0});
  report.check("residual at the limit x = 0 is exactly [0, 1]: 0 is not feasible",
               at_zero[0] == 0.0 && at_zero[1] == 1.0, "[" + fmt(at_zero[0]) + ", " + fmt(at_zero[1]) + "]");

  const std::uint64_t contrast_budget = std::max<std::uint64_t>(steps, 1000);
  const auto contrast = solve(p, Vector{1.0}, StepSchedule::harmonic(2.0),
                              fixed_budget(SelectionRule::most_violated(), contrast_budget));
  bool descends = true;
  for (std::size_t k = 0; k < contrast.trace.size(); ++k) {
    const auto& rec = contrast.trace[k];
    const double next = k + 1 < contrast.trace.size() ? contrast.trace[k + 1].x[0] : contrast.x[0];
    descends = descends && rec.i == 1 && same_bits(next, rec.x[0] - rec.alpha);
  }
  report.check("contrast run with most_violated: x_{k+1} = x_k - alpha_k via f_2 and reaches x <= -1",
               contrast.verdict == Verdict::feasible && contrast.x[0] <= -1.0 && descends,
               "verdict " + to_string(contrast.verdict) + " after " + std::to_string(contrast.steps) +
                   " steps at x = " + fmt(contrast.x[0]));
  return report;
}

Report run_example_3_1(double alpha, double x0) {
  if (!std::isfinite(alpha) || !std::isfinite(x0) || !(alpha > 0.0) || !(x0 > 0.0 && x0 < alpha)) {
    throw PreconditionError("example_3_1 requires 0 < x0 < alpha (got x0 = " + fmt(x0) + ", alpha = " + fmt(alpha) +
                            ")");
  }
  constexpr std::uint64_t periods = 100;
  Report report{"example_3_1", {}, {}};
  const LinearDataset ds({Vector{1.0}, Vector{-1.0}});
  const auto p = build_problem(ds);
  const auto sched = StepSchedule::constant(alpha);

  SolveOptions open = fixed_budget(SelectionRule::first_violated(), 2 * periods + 1);
  open.detect_cycles = false;
  const auto run = solve(p, Vector{x0}, sched, open);
  report.sequence = first_coordinates(run);
  const auto& xs = report.sequence;

  const double low = x0 - alpha;
  bool exact = xs.size() == 2 * periods + 2;
  for (std::size_t k = 0; exact && k <= periods; ++k) {
    exact = same_bits(xs[2 * k], x0) && same_bits(xs[2 * k + 1], low);
  }
  report.check("x_{2k} = x0 and x_{2k+1} = x0 - alpha bitwise for k <= 100", exact,
               "cycle (" + fmt(x0) + ", " + fmt(low) + ")");
  report.check("no feasible point reached", run.verdict == Verdict::budget_exhausted,
               "verdict " + to_string(run.verdict));

  std::vector<Vector> iterates;
  for (double v : xs) iterates.push_back(Vector{v});
  const auto period = detect_cycle(std::span<const Vector>(iterates), 8);
  report.check("detect_cycle(window 8) = 2", period == std::optional<std::size_t>(2),
               period ? "period " + std::to_string(*period) : "no period");

  const auto detected = solve(p, Vector{x0}, sched, fixed_budget(SelectionRule::first_violated(), 2 * periods + 1));
  report.check("solver with cycle detection reports cycle_detected with period 2",
               detected.verdict == Verdict::cycle_detected && detected.period == std::optional<std::size_t>(2),
               "verdict " + to_string(detected.verdict));

  PerceptronOptions popt;
  popt.budget = 2 * periods + 1;
  const auto trained = train_perceptron(ds, Vector{x0}, alpha, popt);
  report.check("perceptron trainer reports cycle_detected with period 2",
               trained.verdict == Verdict::cycle_detected && trained.period == std::optional<std::size_t>(2),
               "verdict " + to_string(trained.verdict));
  return report;
}

std::optional<std::string> canonical_name(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '-', '_');
  for (const auto& n : case_names()) {
    if (key == n) return n;
  }
  // Descriptive aliases.
  if (key == "huber_harmonic") return "remark_2_6";
  if (key == "limit_outside") return "example_2_7";
  if (key == "halflines_cycle") return "example_3_1";
  return std::nullopt;
}

std::vector<std::string> case_names() { return {"remark_2_6", "example_2_7", "example_3_1"}; }

Report run(std::string_view name, const Params& params) {
  const auto key = canonical_name(name);
  if (!key) throw PreconditionError("unknown reproduction case '" + std::string(name) + "'");
  if (*key == "remark_2_6") return run_remark_2_6(params.steps);
  if (*key == "example_2_7") return run_example_2_7(params.steps);
  return run_example_3_1(params.alpha, params.x0);
}

}  // namespace subfeas::repro
