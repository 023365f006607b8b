#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace subfeas::repro {

struct Assertion {
  std::string description;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string name;
  std::vector<Assertion> assertions;
  /// First coordinate of x_0, x_1, ... for the main run.
  std::vector<double> sequence;

  bool passed() const;
  void check(std::string description, bool ok, std::string detail = {});
};

inline constexpr double kHarmonicRelTol = 1e-12;

/// Huber function alone, x0 = 1, alpha_k = 1/(k+2): x_k = 1/(k+1) never
/// reaches the feasible set {0}.
Report run_remark_2_6(std::uint64_t steps = 1000);

/// Truncated Huber plus f_2(x) = x + 1 with first_violated selection: the
/// iterates follow 1/(k+1) toward 0, where f_2(0) = 1 > 0.
Report run_example_2_7(std::uint64_t steps = 1000);

/// a_1 = 1, a_2 = -1 with constant alpha and 0 < x0 < alpha: exact period-2
/// cycling. Throws PreconditionError when x0 is outside (0, alpha).
Report run_example_3_1(double alpha = 1.0, double x0 = 0.5);

struct Params {
  std::uint64_t steps = 1000;
  double alpha = 1.0;
  double x0 = 0.5;
};

/// Canonical case names: remark_2_6, example_2_7, example_3_1 (hyphens accepted).
std::optional<std::string> canonical_name(std::string_view name);
std::vector<std::string> case_names();

/// Dispatches by name; throws PreconditionError for an unknown name.
Report run(std::string_view name, const Params& params);

}  // namespace subfeas::repro
