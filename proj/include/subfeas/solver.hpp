#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "subfeas/problem.hpp"
#include "subfeas/schedule.hpp"
#include "subfeas/vector.hpp"

namespace subfeas {

enum class SelectionKind { first_violated, most_violated, cyclic, random };

/// How i_k is picked among the constraints with f_i(x_k) > tolerance.
struct SelectionRule {
  SelectionKind kind = SelectionKind::first_violated;
  std::uint64_t seed = 0;

  static SelectionRule first_violated() { return {SelectionKind::first_violated, 0}; }
  static SelectionRule most_violated() { return {SelectionKind::most_violated, 0}; }
  static SelectionRule cyclic() { return {SelectionKind::cyclic, 0}; }
  static SelectionRule random(std::uint64_t seed) { return {SelectionKind::random, seed}; }

  /// The choice depends on x_k alone (no cursor or RNG state).
  bool stateless() const {
    return kind == SelectionKind::first_violated || kind == SelectionKind::most_violated;
  }
};

std::string to_string(SelectionKind kind);
std::optional<SelectionKind> parse_selection_kind(std::string_view name);

/// Stateful realization of a SelectionRule for one run.
class Selector {
 public:
  explicit Selector(SelectionRule rule);

  /// Index of a constraint with values[i] > tolerance, or empty when none is violated.
  std::optional<std::size_t> choose(std::span<const double> values, double tolerance);

  const SelectionRule& rule() const { return rule_; }

 private:
  SelectionRule rule_;
  std::size_t cursor_ = 0;
  std::mt19937_64 rng_;
};

enum class MonitorFlag : std::uint8_t {
  one_step_violated,        // ||x_{k+1}-s||^2 > ||x_k-s||^2 - delta_k + eps
  slater_inner_violated,    // <x_k - s, g_k> <= sigma
  gradient_bound_exceeded,  // ||g_k|| > L + eps
  negative_delta,           // delta_k < 0 (diagnostic only)
  delta_exceeds_distance,   // delta_k > ||x_k - s||^2 on a non-terminal step
};

inline constexpr std::size_t kMonitorFlagCount = 5;

std::string to_string(MonitorFlag flag);

class MonitorFlags {
 public:
  void set(MonitorFlag f) { bits_ |= bit(f); }
  bool test(MonitorFlag f) const { return (bits_ & bit(f)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::vector<MonitorFlag> list() const;
  std::uint32_t bits() const { return bits_; }
  bool operator==(const MonitorFlags&) const = default;

 private:
  static std::uint32_t bit(MonitorFlag f) { return 1u << static_cast<unsigned>(f); }
  std::uint32_t bits_ = 0;
};

struct IterationRecord {
  std::uint64_t k = 0;
  Vector x;  // x_k
  std::size_t i = 0;
  double f_value = 0.0;  // f_{i_k}(x_k)
  Vector g;
  double g_norm = 0.0;
  double alpha = 0.0;
  std::optional<double> delta;
  MonitorFlags flags;
};

/// Field-by-field bitwise equality of two records.
bool bitwise_equal(const IterationRecord& a, const IterationRecord& b);

struct StepResult {
  Vector x_next;
  IterationRecord record;
};

/// One update x_{k+1} = x_k - alpha_k g_k. Throws PreconditionError if x_k is
/// already feasible and ScheduleExhausted if the schedule has no alpha_k.
/// The record's delta is filled when the problem carries a certificate;
/// monitor flags are left empty.
StepResult step(const FeasibilityProblem& p, const Vector& x_k, Selector& selector, const StepSchedule& sched,
                std::uint64_t k, double tolerance = 0.0);

/// Runtime checks of the one-step estimate and its ingredients.
/// eps_scale multiplies max(1, ||x_k - s||^2) and similar magnitudes.
MonitorFlags monitor_one_step(const IterationRecord& record, const SlaterCertificate& cert, const Vector& x_next,
                              double eps_scale = 1e-9);

/// Smallest p <= window such that the last 2p iterates are two bitwise-equal
/// copies of one block of length p.
std::optional<std::size_t> detect_cycle(std::span<const Vector> iterates, std::size_t window);
std::optional<std::size_t> detect_cycle(std::span<const IterationRecord> trace, std::size_t window);

enum class Verdict { feasible, budget_exhausted, cycle_detected };

std::string to_string(Verdict v);

struct SolveOptions {
  SelectionRule rule;
  double tolerance = 0.0;
  /// Empty: iteration_bound + 10 when computable, else kDefaultBudget.
  std::optional<std::uint64_t> budget;
  bool monitors = true;
  /// Only effective for constant schedules with a stateless selection rule.
  bool detect_cycles = true;
  std::size_t cycle_window = 64;
  bool record_trace = true;
  double eps_scale = 1e-9;
};

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;
inline constexpr std::uint64_t kBoundSlack = 10;

struct SolveOutcome {
  Verdict verdict = Verdict::budget_exhausted;
  Vector x;  // final iterate
  std::uint64_t steps = 0;
  std::optional<std::size_t> period;
  std::vector<IterationRecord> trace;
  std::optional<std::uint64_t> bound_used;
  std::uint64_t budget = 0;
  std::vector<double> final_residual;
  std::array<std::uint64_t, kMonitorFlagCount> flag_counts{};

  std::uint64_t flag_count(MonitorFlag f) const { return flag_counts[static_cast<std::size_t>(f)]; }
};

/// Runs the subgradient feasibility iteration from x0 until a feasible point,
/// a detected cycle, or the budget.
SolveOutcome solve(const FeasibilityProblem& p, const Vector& x0, const StepSchedule& sched,
                   const SolveOptions& options = {});

/// Budget selection shared by every driver.
std::uint64_t resolve_budget(const std::optional<std::uint64_t>& requested,
                             const std::optional<std::uint64_t>& bound);

namespace detail {

/// Ring of the most recent iterates for cycle detection.
class IterateHistory {
 public:
  explicit IterateHistory(std::size_t window) : capacity_(2 * window), window_(window) {}
  void push(const Vector& x);
  std::optional<std::size_t> cycle() const;

 private:
  std::size_t capacity_;
  std::size_t window_;
  std::vector<Vector> items_;
};

void tally(SolveOutcome& out, const MonitorFlags& flags);

}  // namespace detail

}  // namespace subfeas
