#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "subfeas/perceptron.hpp"
#include "subfeas/problem.hpp"
#include "subfeas/schedule.hpp"
#include "subfeas/solver.hpp"

namespace subfeas::io {

/// A problem document plus its optional run defaults.
struct ProblemFile {
  FeasibilityProblem problem;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> budget;
};

/// Parses the problem document. A "slater" block must pass
/// validate_certificate or a ParseError is thrown.
ProblemFile parse_problem(const nlohmann::json& doc);
ProblemFile load_problem(const std::filesystem::path& path);

nlohmann::json oracle_to_json(const ConstraintOracle& oracle);
nlohmann::json problem_to_json(const FeasibilityProblem& p, std::optional<double> tolerance = std::nullopt,
                               std::optional<std::uint64_t> budget = std::nullopt);

/// constant:<a> | harmonic:<c> | explicit:<path> | normalized:<inner>
StepSchedule parse_schedule(std::string_view text);

/// Whitespace/comma separated steps, '#' comments, optional "tail: repeat_last|zero|none".
StepSchedule parse_explicit_steps(std::istream& in);

/// "1,2.5,-3" (commas or whitespace).
Vector parse_vector(std::string_view text);

/// d reals per line, or with a leading "#labeled" line: d reals then a +1/-1 label.
LinearDataset parse_dataset(std::istream& in);
LinearDataset load_dataset(const std::filesystem::path& path);

/// Writes rows (unlabeled form) with 17 significant digits.
void write_dataset(std::ostream& out, const LinearDataset& ds);

/// 17 significant digits ("%.17g"); "null" for non-finite values.
std::string format_real(double v);

/// One JSON object per line: {k, x, i, f, g, g_norm, alpha, delta, flags}.
std::string trace_line(const IterationRecord& rec);
void write_trace(std::ostream& out, const std::vector<IterationRecord>& trace, const nlohmann::json& summary);

struct TraceFile {
  std::vector<IterationRecord> records;
  std::optional<nlohmann::json> summary;
};

TraceFile read_trace(std::istream& in);

/// Verdict, steps, final point and residuals, flag counts, bound, budget.
nlohmann::json summary_json(const SolveOutcome& outcome);

}  // namespace subfeas::io
