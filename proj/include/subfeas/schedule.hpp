#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "subfeas/problem.hpp"
#include "subfeas/vector.hpp"

namespace subfeas {

class StepSchedule;

struct ConstantStep {
  double alpha = 1.0;
};

/// alpha_k = 1 / (k + offset)
struct HarmonicStep {
  double offset = 1.0;
};

enum class TailRule { none, repeat_last, zero };

struct ExplicitSteps {
  std::vector<double> alphas;
  TailRule tail = TailRule::none;
};

/// alpha_k / max{1, ||g_k||} for an inner schedule.
struct NormalizedStep {
  std::shared_ptr<const StepSchedule> inner;
};

/// A rule producing nonnegative step sizes alpha_k.
class StepSchedule {
 public:
  using Kind = std::variant<ConstantStep, HarmonicStep, ExplicitSteps, NormalizedStep>;

  explicit StepSchedule(Kind kind);

  static StepSchedule constant(double alpha);
  static StepSchedule harmonic(double offset);
  static StepSchedule explicit_list(std::vector<double> alphas, TailRule tail = TailRule::none);
  static StepSchedule normalized(StepSchedule inner);

  const Kind& kind() const { return kind_; }
  bool is_constant() const { return std::holds_alternative<ConstantStep>(kind_); }
  /// True when alpha_k never depends on the runtime subgradient norm.
  bool depends_on_gradient() const { return std::holds_alternative<NormalizedStep>(kind_); }

  std::string describe() const;

 private:
  Kind kind_;
};

/// alpha_k. g_norm is consulted only by normalized schedules.
/// Throws ScheduleExhausted for an explicit list without a tail rule.
double alpha(const StepSchedule& sched, std::uint64_t k, double g_norm = 0.0);

/// alpha * (2 sigma - alpha L^2).
double delta_for_alpha(double alpha, const SlaterCertificate& cert);

/// delta_k = alpha_k (2 sigma - alpha_k L^2); may be negative.
double delta(const StepSchedule& sched, std::uint64_t k, const SlaterCertificate& cert, double g_norm = 0.0);

/// Overload taking an optional certificate; throws PreconditionError when absent.
double delta(const StepSchedule& sched, std::uint64_t k, const std::optional<SlaterCertificate>& cert,
             double g_norm = 0.0);

/// 0 < alpha < 2 sigma / L^2
bool validate_constant(double alpha, const SlaterCertificate& cert);

inline constexpr std::uint64_t kIterationBoundCap = 1'000'000'000ULL;

/// Smallest n with sum_{k<n} delta_k > ||x0 - s||^2; no run started at x0
/// can make n non-terminal updates. Empty when delta_k depends on g_k or the
/// sum does not exceed the distance within kIterationBoundCap terms.
std::optional<std::uint64_t> iteration_bound(const Vector& x0, const SlaterCertificate& cert,
                                             const StepSchedule& sched);

}  // namespace subfeas
