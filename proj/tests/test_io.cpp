#include <doctest.h>

#include <bit>
#include <cstdint>
#include <random>
#include <sstream>

#include "subfeas/errors.hpp"
#include "subfeas/io.hpp"
#include "support/random_problems.hpp"

using namespace subfeas;
using nlohmann::json;

namespace {

const std::string data_dir = SUBFEAS_DATA_DIR;

}  // namespace

TEST_CASE("problem files from the data directory load") {
  const auto neg = io::load_problem(data_dir + "/neg_x.json");
  CHECK(neg.problem.dimension() == 1);
  REQUIRE(neg.problem.slater().has_value());
  CHECK(neg.problem.slater()->sigma == 4.0);

  const auto hub = io::load_problem(data_dir + "/huber.json");
  CHECK(hub.budget == std::optional<std::uint64_t>(1000));
  CHECK(hub.tolerance == std::optional<double>(0.0));

  const auto mixed = io::load_problem(data_dir + "/mixed_2d.json");
  CHECK(mixed.problem.size() == 3);
  CHECK(mixed.problem[2].kind() == "max");
  CHECK(validate_certificate(mixed.problem, *mixed.problem.slater()).valid());
}

TEST_CASE("malformed problem documents are rejected") {
  auto bad = [](const char* text) { return io::parse_problem(json::parse(text)); };
  CHECK_THROWS_AS(bad(R"({"constraints": [{"kind": "huber"}]})"), ParseError);
  CHECK_THROWS_AS(bad(R"({"dimension": 1, "constraints": []})"), ParseError);
  CHECK_THROWS_AS(bad(R"({"dimension": 1, "constraints": [{"kind": "cubic"}]})"), ParseError);
  CHECK_THROWS_AS(bad(R"({"dimension": 2, "constraints": [{"kind": "linear", "params": {"a": [1]}}]})"), ParseError);
  CHECK_THROWS_AS(bad(R"({"dimension": 1, "constraints": [{"kind": "huber", "coordinate": 3}]})"), ParseError);
  CHECK_THROWS_AS(bad(R"({"dimension": 1, "extra": 1, "constraints": [{"kind": "huber"}]})"), ParseError);
  CHECK_THROWS_AS(bad(R"({"dimension": 1, "constraints": [{"kind": "max", "params": {"children": []}}]})"),
                  ParseError);
  // H(0) = 0 is not < 0: no Slater point
  CHECK_THROWS_AS(bad(R"({"dimension": 1, "constraints": [{"kind": "huber"}],
                          "slater": {"s": [0], "sigma": 0.1, "L": 1}})"),
                  ParseError);
  CHECK_THROWS_AS(bad(R"({"dimension": 1, "constraints": [{"kind": "linear", "params": {"a": [-1]}}],
                          "slater": {"s": [1], "sigma": 2, "L": 1}})"),
                  ParseError);
  CHECK_THROWS_AS(io::load_problem(data_dir + "/missing.json"), ParseError);
}

TEST_CASE("problem documents round-trip") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto pp = subfeas::testing::planted_problem(seed);
    const auto doc = io::problem_to_json(pp.problem, 0.0, 77);
    const auto back = io::parse_problem(json::parse(doc.dump()));
    CHECK(io::problem_to_json(back.problem, back.tolerance, back.budget) == doc);
    CHECK(residual(back.problem, pp.x0) == residual(pp.problem, pp.x0));
  }
}

TEST_CASE("schedule strings") {
  CHECK(alpha(io::parse_schedule("constant:0.5"), 3) == 0.5);
  CHECK(alpha(io::parse_schedule("harmonic:2"), 0) == 0.5);
  CHECK(alpha(io::parse_schedule("normalized:constant:1"), 0, 4.0) == 0.25);
  const auto ex = io::parse_schedule("explicit:" + data_dir + "/steps.txt");
  CHECK(alpha(ex, 0) == 1.0);
  CHECK(alpha(ex, 3) == 0.25);
  CHECK(alpha(ex, 100) == 0.25);
  CHECK_THROWS_AS(io::parse_schedule("constant"), ParseError);
  CHECK_THROWS_AS(io::parse_schedule("constant:abc"), ParseError);
  CHECK_THROWS_AS(io::parse_schedule("constant:-1"), ParseError);
  CHECK_THROWS_AS(io::parse_schedule("polyak:1"), ParseError);
  CHECK_THROWS_AS(io::parse_schedule("harmonic:0"), ParseError);
  CHECK_THROWS_AS(io::parse_schedule("explicit:/no/such/file"), ParseError);

  std::istringstream zero_tail("0.5, 0.25\ntail: zero\n");
  CHECK(alpha(io::parse_explicit_steps(zero_tail), 5) == 0.0);
  std::istringstream bad_tail("0.5\ntail: forever\n");
  CHECK_THROWS_AS(io::parse_explicit_steps(bad_tail), ParseError);
}

TEST_CASE("vectors") {
  CHECK(io::parse_vector("1,2.5,-3") == Vector{1, 2.5, -3});
  CHECK(io::parse_vector("-5") == Vector{-5});
  CHECK(io::parse_vector("0.5 +1") == Vector{0.5, 1});
  CHECK_THROWS_AS(io::parse_vector(""), ParseError);
  CHECK_THROWS_AS(io::parse_vector("1,x"), ParseError);
  CHECK_THROWS_AS(io::parse_vector("nan"), ParseError);
}

TEST_CASE("datasets") {
  std::istringstream plain("1,2\n\n-3,4\n");
  const auto ds = io::parse_dataset(plain);
  CHECK(ds.size() == 2);
  CHECK(ds[1] == Vector{-3, 4});

  const auto labeled = io::load_dataset(data_dir + "/labeled.csv");
  CHECK(labeled.size() == 4);
  CHECK(labeled[2] == Vector{1.0, -0.3});

  std::istringstream zero_row("1,2\n0,0\n");
  CHECK_THROWS_AS(io::parse_dataset(zero_row), ParseError);
  std::istringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(io::parse_dataset(ragged), ParseError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(io::parse_dataset(empty), ParseError);
  std::istringstream bad_label("#labeled\n1,2,0\n");
  CHECK_THROWS_AS(io::parse_dataset(bad_label), ParseError);
  std::istringstream late_header("1,2\n#labeled\n3,4,1\n");
  CHECK_THROWS_AS(io::parse_dataset(late_header), ParseError);
}

TEST_CASE("format_real uses 17 significant digits") {
  CHECK(io::format_real(0.1) == "0.10000000000000001");
  CHECK(io::format_real(-0.5) == "-0.5");
  CHECK(io::format_real(1.0 / 3.0) == "0.33333333333333331");
}

TEST_CASE("trace reals re-parse bitwise") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int t = 0; t < 20000; ++t) {
    double v = std::bit_cast<double>(bits(rng));
    if (!std::isfinite(v)) continue;
    const double back = json::parse(io::format_real(v)).get<double>();
    CHECK(std::bit_cast<std::uint64_t>(back) == std::bit_cast<std::uint64_t>(v));
  }
}

TEST_CASE("trace files round-trip through JSON-lines") {
  const auto pp = subfeas::testing::planted_problem(5);
  const auto& c = *pp.problem.slater();
  const auto out = solve(pp.problem, pp.x0, StepSchedule::constant(0.3 * 2 * c.sigma / (c.L * c.L)));
  REQUIRE_FALSE(out.trace.empty());
  std::stringstream buf;
  io::write_trace(buf, out.trace, io::summary_json(out));
  const auto back = io::read_trace(buf);
  REQUIRE(back.records.size() == out.trace.size());
  for (std::size_t k = 0; k < out.trace.size(); ++k) CHECK(bitwise_equal(back.records[k], out.trace[k]));
  REQUIRE(back.summary.has_value());
  CHECK((*back.summary)["verdict"] == "feasible");
  CHECK((*back.summary)["steps"] == out.steps);

  const auto first = json::parse(io::trace_line(out.trace.front()));
  for (const char* key : {"k", "x", "i", "f", "g", "g_norm", "alpha", "delta", "flags"}) CHECK(first.contains(key));
}
