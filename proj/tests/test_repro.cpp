#include <doctest.h>

#include "subfeas/errors.hpp"
#include "subfeas/repro.hpp"

using namespace subfeas;

namespace {

void require_pass(const repro::Report& r) {
  for (const auto& a : r.assertions) {
    INFO(r.name << ": " << a.description << " (" << a.detail << ")");
    CHECK(a.passed);
  }
  CHECK(r.passed());
}

}  // namespace

TEST_CASE("remark_2_6") {
  const auto short_run = repro::run_remark_2_6(3);
  require_pass(short_run);
  REQUIRE(short_run.sequence.size() == 4);
  CHECK(short_run.sequence[0] == 1.0);
  CHECK(short_run.sequence[1] == 0.5);
  CHECK(short_run.sequence[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(short_run.sequence[3] == doctest::Approx(0.25).epsilon(1e-15));

  const auto long_run = repro::run_remark_2_6(1000);
  require_pass(long_run);
  CHECK(long_run.sequence.back() == doctest::Approx(1.0 / 1001.0).epsilon(1e-12));
  CHECK_THROWS_AS(repro::run_remark_2_6(0), PreconditionError);
}

TEST_CASE("example_2_7") {
  require_pass(repro::run_example_2_7(1000));
  const auto r = repro::run_example_2_7(5);
  require_pass(r);
  CHECK(r.sequence.size() == 6);
}

TEST_CASE("example_3_1") {
  const auto r = repro::run_example_3_1(1.0, 0.5);
  require_pass(r);
  CHECK(r.sequence[0] == 0.5);
  CHECK(r.sequence[1] == -0.5);
  CHECK(r.sequence[2] == 0.5);
  const auto q = repro::run_example_3_1(0.25, 0.125);
  require_pass(q);
  CHECK(q.sequence[1] == -0.125);
  CHECK_THROWS_AS(repro::run_example_3_1(1.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(repro::run_example_3_1(1.0, 1.5), PreconditionError);
  CHECK_THROWS_AS(repro::run_example_3_1(1.0, 0.0), PreconditionError);
}

TEST_CASE("dispatch by name") {
  CHECK(repro::canonical_name("remark-2-6") == std::optional<std::string>("remark_2_6"));
  CHECK(repro::canonical_name("example_3_1") == std::optional<std::string>("example_3_1"));
  CHECK_FALSE(repro::canonical_name("example-9").has_value());
  CHECK(repro::canonical_name("halflines-cycle") == std::optional<std::string>("example_3_1"));
  CHECK(repro::canonical_name("huber_harmonic") == std::optional<std::string>("remark_2_6"));
  CHECK(repro::canonical_name("limit-outside") == std::optional<std::string>("example_2_7"));
  CHECK(repro::run("example-2-7", {.steps = 50}).passed());
  CHECK_THROWS_AS(repro::run("nope", {}), PreconditionError);
}
