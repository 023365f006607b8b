// Command-line driver: solve problem files, train perceptrons on CSV data,
// and run the built-in failure-mode reproductions.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "subfeas/errors.hpp"
#include "subfeas/io.hpp"
#include "subfeas/perceptron.hpp"
#include "subfeas/repro.hpp"
#include "subfeas/schedule.hpp"
#include "subfeas/solver.hpp"

namespace {

using nlohmann::json;
using namespace subfeas;

constexpr int kExitFeasible = 0;
constexpr int kExitInputError = 1;
constexpr int kExitBudget = 2;
constexpr int kExitCycle = 3;

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::feasible:
      return kExitFeasible;
    case Verdict::budget_exhausted:
      return kExitBudget;
    case Verdict::cycle_detected:
      return kExitCycle;
  }
  return kExitInputError;
}

json vec(const Vector& v) {
  json a = json::array();
  for (double c : v) a.push_back(c);
  return a;
}

SelectionRule make_rule(const std::string& name, std::uint64_t seed) {
  const auto kind = parse_selection_kind(name);
  if (!kind) throw ParseError("unknown selection rule '" + name + "'");
  return SelectionRule{*kind, seed};
}

void write_trace_file(const std::string& path, const SolveOutcome& outcome, const json& summary) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write trace '" + path + "'");
  io::write_trace(out, outcome.trace, summary);
}

struct SolveArgs {
  std::string problem;
  std::string x0;
  std::string schedule;
  std::string select = "first_violated";
  std::optional<std::uint64_t> budget;
  std::optional<double> tolerance;
  std::string trace;
  bool no_monitors = false;
  bool no_cycles = false;
  std::size_t cycle_window = 64;
  std::uint64_t seed = 0;
};

int cmd_solve(const SolveArgs& a) {
  const auto file = io::load_problem(a.problem);
  const auto& p = file.problem;
  const auto sched = io::parse_schedule(a.schedule);
  const Vector x0 = a.x0.empty() ? Vector::zeros(p.dimension()) : io::parse_vector(a.x0);
  if (x0.size() != p.dimension()) {
    throw DimensionError("--x0 has dimension " + std::to_string(x0.size()) + ", problem has " +
                         std::to_string(p.dimension()));
  }

  SolveOptions opt;
  opt.rule = make_rule(a.select, a.seed);
  opt.tolerance = a.tolerance.value_or(file.tolerance.value_or(0.0));
  opt.budget = a.budget ? a.budget : file.budget;
  opt.monitors = !a.no_monitors;
  opt.detect_cycles = !a.no_cycles;
  opt.cycle_window = a.cycle_window;
  opt.record_trace = !a.trace.empty();

  const auto outcome = solve(p, x0, sched, opt);
  json summary = io::summary_json(outcome);
  summary["schedule"] = sched.describe();
  summary["selection"] = to_string(opt.rule.kind);
  summary["tolerance"] = opt.tolerance;
  if (p.slater()) {
    const auto& c = *p.slater();
    summary["certificate"] = {{"s", vec(c.s)}, {"sigma", c.sigma}, {"L", c.L}};
    if (const auto* k = std::get_if<ConstantStep>(&sched.kind())) {
      summary["certificate"]["constant_step_valid"] = validate_constant(k->alpha, c);
    }
  }
  write_trace_file(a.trace, outcome, summary);
  std::cout << summary.dump(2) << '\n';
  return exit_code(outcome.verdict);
}

struct PerceptronArgs {
  std::string data;
  double alpha = 1.0;
  std::string x0;
  std::optional<double> rho;
  std::string z;
  std::optional<std::uint64_t> budget;
  std::string trace;
  std::string select = "first_violated";
  std::uint64_t seed = 0;
  std::string generate;
  double margin = 0.1;
  std::string write_data;
  bool non_strict = false;
};

// The grid value admitting alpha with the smallest iteration bound.
std::optional<double> best_rho(const LinearDataset& ds, const Vector& z, const Vector& x0, double alpha) {
  std::optional<double> best;
  std::uint64_t best_bound = std::numeric_limits<std::uint64_t>::max();
  for (double rho : rho_grid()) {
    const auto cert = derive_certificate(ds, z, rho);
    if (!validate_constant(alpha, cert)) continue;
    const auto bound = iteration_bound(x0, cert, StepSchedule::constant(alpha));
    if (bound && *bound < best_bound) {
      best_bound = *bound;
      best = rho;
    }
  }
  return best;
}

int cmd_perceptron(const PerceptronArgs& a) {
  std::optional<LinearDataset> ds;
  std::optional<Vector> z;
  std::string z_source;
  if (!a.generate.empty()) {
    const auto dims = io::parse_vector(a.generate);
    if (dims.size() != 2 || dims[0] < 1 || dims[1] < 1 || dims[0] != std::floor(dims[0]) ||
        dims[1] != std::floor(dims[1])) {
      throw ParseError("--generate expects <dimension>,<rows>");
    }
    auto planted = generate_separable(static_cast<std::size_t>(dims[0]), static_cast<std::size_t>(dims[1]),
                                      a.margin, a.seed);
    ds = std::move(planted.data);
    z = std::move(planted.z);
    z_source = "planted";
  } else {
    if (a.data.empty()) throw ParseError("perceptron: give a dataset path or --generate");
    ds = io::load_dataset(a.data);
  }
  if (!a.write_data.empty()) {
    std::ofstream out(a.write_data);
    if (!out) throw ParseError("cannot write '" + a.write_data + "'");
    io::write_dataset(out, *ds);
  }
  if (!a.z.empty()) {
    z = io::parse_vector(a.z);
    z_source = "given";
  }
  if (!z) {
    if (auto est = estimate_margin(*ds)) {
      z = est->z;
      z_source = "estimated";
    }
  }

  const Vector x0 = a.x0.empty() ? Vector::zeros(ds->dimension()) : io::parse_vector(a.x0);
  if (x0.size() != ds->dimension()) throw DimensionError("--x0 does not match the dataset dimension");

  PerceptronOptions opt;
  opt.rule = make_rule(a.select, a.seed);
  opt.budget = a.budget;
  opt.record_trace = !a.trace.empty();
  // Classical mistake rule <x, a_i> <= 0 unless asked for the plain f_i(x) > 0 test:
  // every linear problem here contains 0, so the plain rule never moves from x0 = 0.
  opt.strict = !a.non_strict;

  json cert_json = nullptr;
  if (z) {
    const auto rho = a.rho ? a.rho : best_rho(*ds, *z, x0, a.alpha);
    const auto mc = derive_margin(*ds, *z, rho.value_or(1.0));
    const auto cert = derive_certificate(*ds, *z, mc.rho);
    const bool valid = validate_constant(a.alpha, cert);
    if (valid) opt.certificate = cert;
    const auto bound = iteration_bound(x0, cert, StepSchedule::constant(a.alpha));
    cert_json = {{"z", vec(*z)},          {"z_source", z_source},
                 {"mu", mc.mu},           {"L", mc.L},
                 {"rho", mc.rho},         {"s", vec(cert.s)},
                 {"sigma", cert.sigma},   {"constant_step_valid", valid},
                 {"iteration_bound", valid && bound ? json(*bound) : json(nullptr)}};
  }

  const auto outcome = train_perceptron(*ds, x0, a.alpha, opt);
  json summary = io::summary_json(outcome);
  summary["mistakes"] = outcome.steps;
  summary["alpha"] = a.alpha;
  summary["mistake_rule"] = opt.strict ? "strict" : "non_strict";
  summary["margins"] = ds->margins(outcome.x);
  summary["certificate"] = cert_json;
  if (!cert_json.is_null() && !cert_json["iteration_bound"].is_null()) {
    summary["mistakes_within_bound"] = outcome.steps <= cert_json["iteration_bound"].get<std::uint64_t>();
  }
  write_trace_file(a.trace, outcome, summary);
  std::cout << summary.dump(2) << '\n';
  return exit_code(outcome.verdict);
}

int cmd_repro(const std::string& name, const repro::Params& params) {
  const auto report = repro::run(name, params);
  std::cout << report.name << '\n';
  for (const auto& a : report.assertions) {
    std::cout << (a.passed ? "  [PASS] " : "  [FAIL] ") << a.description;
    if (!a.detail.empty()) std::cout << " (" << a.detail << ")";
    std::cout << '\n';
  }
  std::cout << (report.passed() ? "all assertions passed" : "some assertions FAILED") << '\n';
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subgradient method for convex feasibility problems"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Run the subgradient iteration on a JSON problem file");
  solve_cmd->add_option("problem", solve_args.problem, "Problem file")->required();
  solve_cmd->add_option("--x0", solve_args.x0, "Starting point, comma separated (default: zeros)");
  solve_cmd->add_option("--schedule", solve_args.schedule,
                        "constant:<a> | harmonic:<c> | explicit:<path> | normalized:<inner>")
      ->required();
  solve_cmd->add_option("--select", solve_args.select, "first_violated | most_violated | cyclic | random");
  solve_cmd->add_option("--budget", solve_args.budget, "Maximum number of updates");
  solve_cmd->add_option("--tolerance", solve_args.tolerance, "Feasibility tolerance (default 0)");
  solve_cmd->add_option("--trace", solve_args.trace, "Write a JSON-lines trace to this path");
  solve_cmd->add_flag("--no-monitors", solve_args.no_monitors, "Disable one-step estimate monitors");
  solve_cmd->add_flag("--no-cycle-detection", solve_args.no_cycles, "Disable cycle detection");
  solve_cmd->add_option("--cycle-window", solve_args.cycle_window, "Largest period searched (default 64)");
  solve_cmd->add_option("--seed", solve_args.seed, "Seed for the random selection rule");

  PerceptronArgs p_args;
  auto* perc_cmd = app.add_subcommand("perceptron", "Train the perceptron on a CSV dataset");
  perc_cmd->add_option("data", p_args.data, "Dataset CSV (rows a_i, or #labeled)");
  perc_cmd->add_option("--alpha", p_args.alpha, "Constant step size (default 1)");
  perc_cmd->add_option("--x0", p_args.x0, "Starting point (default: zeros)");
  perc_cmd->add_option("--rho", p_args.rho, "Certificate scale (default: best grid value)");
  perc_cmd->add_option("--z", p_args.z, "Known strict separator");
  perc_cmd->add_option("--budget", p_args.budget, "Maximum number of updates");
  perc_cmd->add_option("--trace", p_args.trace, "Write a JSON-lines trace to this path");
  perc_cmd->add_option("--select", p_args.select, "first_violated | most_violated | cyclic | random");
  perc_cmd->add_option("--seed", p_args.seed, "Seed for generation and random selection");
  perc_cmd->add_option("--generate", p_args.generate, "Planted-margin dataset <dimension>,<rows>");
  perc_cmd->add_option("--margin", p_args.margin, "Planted margin for --generate (default 0.1)");
  perc_cmd->add_option("--write-data", p_args.write_data, "Save the dataset used as CSV");
  perc_cmd->add_flag("--non-strict", p_args.non_strict,
                     "Update only when <x, a_i> < 0 (default: also on <x, a_i> = 0)");

  std::string repro_name;
  repro::Params repro_params;
  auto* repro_cmd = app.add_subcommand("repro", "Run a self-checking failure-mode reproduction");
  repro_cmd->add_option("name", repro_name, "remark-2-6 | example-2-7 | example-3-1 (aliases: huber-harmonic, limit-outside, halflines-cycle)")->required();
  repro_cmd->add_option("--steps", repro_params.steps, "Iterations to simulate (default 1000)");
  repro_cmd->add_option("--alpha", repro_params.alpha, "Constant step for example-3-1 (default 1)");
  repro_cmd->add_option("--x0", repro_params.x0, "Starting point for example-3-1 (default 0.5)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args);
    if (*perc_cmd) return cmd_perceptron(p_args);
    if (*repro_cmd) return cmd_repro(repro_name, repro_params);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
