#include "subfeas/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "subfeas/errors.hpp"

namespace subfeas {

std::string to_string(SelectionKind kind) {
  switch (kind) {
    case SelectionKind::first_violated:
      return "first_violated";
    case SelectionKind::most_violated:
      return "most_violated";
    case SelectionKind::cyclic:
      return "cyclic";
    case SelectionKind::random:
      return "random";
  }
  return "unknown";
}

std::optional<SelectionKind> parse_selection_kind(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '-', '_');
  for (auto kind : {SelectionKind::first_violated, SelectionKind::most_violated, SelectionKind::cyclic,
                    SelectionKind::random}) {
    if (key == to_string(kind)) return kind;
  }
  return std::nullopt;
}

Selector::Selector(SelectionRule rule) : rule_(rule), rng_(rule.seed) {}

std::optional<std::size_t> Selector::choose(std::span<const double> values, double tolerance) {
  const std::size_t m = values.size();
  switch (rule_.kind) {
    case SelectionKind::first_violated:
      for (std::size_t i = 0; i < m; ++i) {
        if (values[i] > tolerance) return i;
      }
      return std::nullopt;
    case SelectionKind::most_violated: {
      std::optional<std::size_t> best;
      for (std::size_t i = 0; i < m; ++i) {
        if (values[i] > tolerance && (!best || values[i] > values[*best])) best = i;
      }
      return best;
    }
    case SelectionKind::cyclic:
      for (std::size_t offset = 0; offset < m; ++offset) {
        const std::size_t i = (cursor_ + offset) % m;
        if (values[i] > tolerance) {
          cursor_ = (i + 1) % m;
          return i;
        }
      }
      return std::nullopt;
    case SelectionKind::random: {
      std::vector<std::size_t> violated;
      for (std::size_t i = 0; i < m; ++i) {
        if (values[i] > tolerance) violated.push_back(i);
      }
      if (violated.empty()) return std::nullopt;
      // Plain modulo keeps the draw identical across standard libraries.
      return violated[rng_() % violated.size()];
    }
  }
  return std::nullopt;
}

std::string to_string(MonitorFlag flag) {
  switch (flag) {
    case MonitorFlag::one_step_violated:
      return "one_step_violated";
    case MonitorFlag::slater_inner_violated:
      return "slater_inner_violated";
    case MonitorFlag::gradient_bound_exceeded:
      return "gradient_bound_exceeded";
    case MonitorFlag::negative_delta:
      return "negative_delta";
    case MonitorFlag::delta_exceeds_distance:
      return "delta_exceeds_distance";
  }
  return "unknown";
}

std::vector<MonitorFlag> MonitorFlags::list() const {
  std::vector<MonitorFlag> out;
  for (std::size_t f = 0; f < kMonitorFlagCount; ++f) {
    if (test(static_cast<MonitorFlag>(f))) out.push_back(static_cast<MonitorFlag>(f));
  }
  return out;
}

namespace {

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

StepResult advance(const FeasibilityProblem& p, const Vector& x_k, std::span<const double> values, Selector& selector,
                   const StepSchedule& sched, std::uint64_t k, double tolerance) {
  const auto chosen = selector.choose(values, tolerance);
  if (!chosen) throw PreconditionError("step: no violated constraint at x_k");
  IterationRecord rec;
  rec.k = k;
  rec.x = x_k;
  rec.i = *chosen;
  rec.f_value = values[*chosen];
  rec.g = p[*chosen].subgradient(x_k);
  rec.g_norm = norm(rec.g);
  rec.alpha = alpha(sched, k, rec.g_norm);
  if (p.slater()) rec.delta = delta_for_alpha(rec.alpha, *p.slater());
  Vector next = subtract_scaled(x_k, rec.alpha, rec.g);
  return {std::move(next), std::move(rec)};
}

void check_start(const FeasibilityProblem& p, const Vector& x0) {
  if (x0.size() != p.dimension()) {
    throw DimensionError("starting point has dimension " + std::to_string(x0.size()) + ", problem has " +
                         std::to_string(p.dimension()));
  }
  if (!x0.is_finite()) throw PreconditionError("starting point has non-finite coordinates");
}

}  // namespace

bool bitwise_equal(const IterationRecord& a, const IterationRecord& b) {
  if (a.delta.has_value() != b.delta.has_value()) return false;
  if (a.delta && !same_bits(*a.delta, *b.delta)) return false;
  return a.k == b.k && a.i == b.i && bitwise_equal(a.x, b.x) && bitwise_equal(a.g, b.g) &&
         same_bits(a.f_value, b.f_value) && same_bits(a.g_norm, b.g_norm) && same_bits(a.alpha, b.alpha) &&
         a.flags == b.flags;
}

StepResult step(const FeasibilityProblem& p, const Vector& x_k, Selector& selector, const StepSchedule& sched,
                std::uint64_t k, double tolerance) {
  check_start(p, x_k);
  const auto values = residual(p, x_k);
  return advance(p, x_k, values, selector, sched, k, tolerance);
}

MonitorFlags monitor_one_step(const IterationRecord& record, const SlaterCertificate& cert, const Vector& x_next,
                              double eps_scale) {
  MonitorFlags flags;
  const double dist_k = distance_sq(record.x, cert.s);
  const double dist_next = distance_sq(x_next, cert.s);
  const double d = record.delta ? *record.delta : delta_for_alpha(record.alpha, cert);
  const double eps = eps_scale * std::max(1.0, dist_k);

  if (dist_next > dist_k - d + eps) flags.set(MonitorFlag::one_step_violated);

  const double slack = inner(record.x - cert.s, record.g);
  const double inner_eps = eps_scale * std::max({1.0, std::abs(cert.sigma), std::sqrt(dist_k) * record.g_norm});
  if (slack <= cert.sigma - inner_eps) flags.set(MonitorFlag::slater_inner_violated);

  if (record.g_norm > cert.L + eps_scale * std::max(1.0, cert.L)) flags.set(MonitorFlag::gradient_bound_exceeded);
  if (d < 0.0) flags.set(MonitorFlag::negative_delta);
  if (d > dist_k + eps) flags.set(MonitorFlag::delta_exceeds_distance);
  return flags;
}

std::optional<std::size_t> detect_cycle(std::span<const Vector> iterates, std::size_t window) {
  const std::size_t n = iterates.size();
  for (std::size_t p = 1; p <= window && 2 * p <= n; ++p) {
    bool match = true;
    for (std::size_t j = 0; j < p && match; ++j) {
      match = bitwise_equal(iterates[n - 1 - j], iterates[n - 1 - j - p]);
    }
    if (match) return p;
  }
  return std::nullopt;
}

std::optional<std::size_t> detect_cycle(std::span<const IterationRecord> trace, std::size_t window) {
  std::vector<Vector> xs;
  xs.reserve(trace.size());
  for (const auto& r : trace) xs.push_back(r.x);
  return detect_cycle(std::span<const Vector>(xs), window);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::feasible:
      return "feasible";
    case Verdict::budget_exhausted:
      return "budget_exhausted";
    case Verdict::cycle_detected:
      return "cycle_detected";
  }
  return "unknown";
}

std::uint64_t resolve_budget(const std::optional<std::uint64_t>& requested,
                             const std::optional<std::uint64_t>& bound) {
  if (requested) {
    if (*requested < 1) throw PreconditionError("budget must be at least 1");
    return *requested;
  }
  return bound ? *bound + kBoundSlack : kDefaultBudget;
}

namespace detail {

void IterateHistory::push(const Vector& x) {
  if (capacity_ == 0) return;
  if (items_.size() == capacity_) items_.erase(items_.begin());
  items_.push_back(x);
}

std::optional<std::size_t> IterateHistory::cycle() const {
  return detect_cycle(std::span<const Vector>(items_), window_);
}

void tally(SolveOutcome& out, const MonitorFlags& flags) {
  for (auto f : flags.list()) ++out.flag_counts[static_cast<std::size_t>(f)];
}

}  // namespace detail

SolveOutcome solve(const FeasibilityProblem& p, const Vector& x0, const StepSchedule& sched,
                   const SolveOptions& options) {
  check_start(p, x0);
  if (options.tolerance < 0.0 || !std::isfinite(options.tolerance)) {
    throw PreconditionError("feasibility tolerance must be finite and nonnegative");
  }

  SolveOutcome out;
  if (p.slater()) out.bound_used = iteration_bound(x0, *p.slater(), sched);
  out.budget = resolve_budget(options.budget, out.bound_used);

  const bool cycles = options.detect_cycles && sched.is_constant() && options.rule.stateless();
  const bool monitors = options.monitors && p.slater().has_value();
  detail::IterateHistory history(cycles ? options.cycle_window : 0);
  Selector selector(options.rule);

  Vector x = x0;
  history.push(x);
  for (std::uint64_t k = 0;; ++k) {
    auto values = residual(p, x);
    const bool feasible =
        std::all_of(values.begin(), values.end(), [&](double v) { return v <= options.tolerance; });
    if (feasible || k == out.budget) {
      out.verdict = feasible ? Verdict::feasible : Verdict::budget_exhausted;
      out.steps = k;
      out.final_residual = std::move(values);
      break;
    }
    if (cycles) {
      if (auto period = history.cycle()) {
        out.verdict = Verdict::cycle_detected;
        out.period = period;
        out.steps = k;
        out.final_residual = std::move(values);
        break;
      }
    }

    auto [next, rec] = advance(p, x, values, selector, sched, k, options.tolerance);
    if (monitors) {
      rec.flags = monitor_one_step(rec, *p.slater(), next, options.eps_scale);
      detail::tally(out, rec.flags);
    }
    if (options.record_trace) out.trace.push_back(std::move(rec));
    x = std::move(next);
    if (cycles) history.push(x);
  }
  out.x = std::move(x);
  return out;
}

}  // namespace subfeas
