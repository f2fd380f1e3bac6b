#include <cmath>

#include "banachlab/errors.hpp"
#include "banachlab/gauge.hpp"
#include "doctest.h"

using namespace banachlab;

TEST_CASE("log gauge values") {
  const auto f = GaugeFunction::log2p1();
  CHECK(eval_gauge(f, 1) == 1.0);
  CHECK(eval_gauge(f, 3) == 2.0);
  CHECK(eval_gauge(f, 7) == 3.0);
  CHECK_THROWS_AS(eval_gauge(f, 0.5), DomainError);
}

TEST_CASE("gauge names") {
  CHECK(parse_gauge("log2p1")(3) == 2.0);
  CHECK(parse_gauge("sqrt")(16) == doctest::Approx(4.0));
  CHECK(parse_gauge("one")(100) == 1.0);
  CHECK(parse_gauge("pow:0.5")(9) == doctest::Approx(3.0));
  CHECK_THROWS_AS(parse_gauge("nope"), ArgumentError);
}

TEST_CASE("class conditions on the default grid") {
  const auto grid = default_gauge_grid();
  CHECK(grid.front() == 1.0);
  CHECK(grid.back() == doctest::Approx(std::ldexp(1.0, 20)));

  const auto log_report = check_gauge_class(GaugeFunction::log2p1(), grid);
  CHECK(log_report.all_ok());

  const auto sqrt_report = check_gauge_class(GaugeFunction::sqrt(), grid);
  CHECK(sqrt_report.all_ok());
  // sqrt is multiplicative: the submultiplicativity slack is zero up to rounding.
  CHECK(sqrt_report.condition3_violation <= 1e-12);

  const auto identity = check_gauge_class(GaugeFunction([](double x) { return x; }, "x"), grid);
  CHECK_FALSE(identity.condition1_ok);
  CHECK_FALSE(identity.all_ok());
}

TEST_CASE("class check catches a convex kink and a supermultiplicative gauge") {
  const auto grid = default_gauge_grid();
  const auto kinked = check_gauge_class(GaugeFunction([](double x) { return x < 4 ? std::sqrt(x) : 2.0; }, "kink"), grid);
  CHECK(kinked.condition1_ok);
  CHECK_FALSE(kinked.condition2_ok);

  const auto super = check_gauge_class(
      GaugeFunction([](double x) { return 1.0 + 0.5 * std::log2(x) * std::log2(x); }, "super"), grid);
  CHECK_FALSE(super.condition3_ok);
}

TEST_CASE("decay hypothesis") {
  const auto grid = default_prop5_grid();
  CHECK(check_prop5_hypothesis(GaugeFunction::log2p1(), 0.5, geometric_grid(30, 8)).holds);
  CHECK(check_prop5_hypothesis(GaugeFunction::log2p1(), 0.1, grid).holds);
  CHECK_FALSE(check_prop5_hypothesis(GaugeFunction::sqrt(), 0.25, grid).holds);
  CHECK(check_prop5_hypothesis(GaugeFunction::one(), 0.1, grid).holds);

  const auto trend = check_prop5_hypothesis(GaugeFunction::log2p1(), 0.5, geometric_grid(30, 8)).trend;
  REQUIRE(trend.rows.size() > 2);
  const std::size_t last = trend.rows.size() - 1;
  CHECK(trend.number(last, trend.columns[1]) < trend.number(last - 1, trend.columns[1]));
}
