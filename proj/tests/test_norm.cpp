#include <cmath>
#include <random>

#include "banachlab/calderon.hpp"
#include "banachlab/errors.hpp"
#include "banachlab/norm.hpp"
#include "banachlab/space.hpp"
#include "doctest.h"

using namespace banachlab;

namespace {

SeqVector dense(std::vector<double> v) { return SeqVector::from_dense(v); }

SeqVector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& e : v) e = g(rng);
  return dense(v);
}

double norm(const char* space, const SeqVector& x) { return evaluate_norm(*parse_space(space), x).value; }

}  // namespace

TEST_CASE("grammar round trip") {
  for (const char* text : {"l1", "l2", "linf", "s:log2p1", "s:sqrt", "conv:s:log2p1:2", "cal:l1:linf:0.5",
                           "dual:s:log2p1", "dual:cal:l2:s:log2p1:0.25"}) {
    const auto space = parse_space(text);
    CHECK(to_string(*space) == text);
    CHECK(to_string(*parse_space(to_string(*space))) == text);
  }
  CHECK(to_string(*parse_space("s")) == "s:log2p1");
  CHECK(to_string(*parse_space("s", GaugeFunction::sqrt())) == "s:sqrt");
  CHECK(to_string(*parse_space("l4/3")) == to_string(*lp_space(4.0 / 3.0)));
  CHECK_THROWS_AS(parse_space(""), ArgumentError);
  CHECK_THROWS_AS(parse_space("q7"), ArgumentError);
  CHECK_THROWS_AS(parse_space("cal:l1"), ArgumentError);
  CHECK_THROWS_AS(parse_space("l0.5"), DomainError);
  CHECK_THROWS_AS(parse_space("cal:l1:l2:1.5"), DomainError);
}

TEST_CASE("spr descriptors") {
  CHECK(to_string(*space_spr(1, kInf, GaugeFunction::log2p1())) == "s:log2p1");
  CHECK(to_string(*space_spr(2, kInf, GaugeFunction::log2p1())) == "conv:s:log2p1:2");
  CHECK(to_string(*space_spr(1, 2, GaugeFunction::log2p1())) == "cal:l1:s:log2p1:0.5");
  CHECK_THROWS_AS(space_spr(2, 2, GaugeFunction::log2p1()), ArgumentError);
  CHECK_THROWS_AS(space_spr(0.5, 2, GaugeFunction::log2p1()), DomainError);
}

TEST_CASE("convexification") {
  CHECK(convexified_norm(lp_space(1), 2, dense({1, 1})) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  const auto s = schlumprecht_space(GaugeFunction::log2p1());
  CHECK(convexified_norm(s, 2, dense({1, 1})) == doctest::Approx(std::sqrt(2.0 / std::log2(3.0))).epsilon(1e-12));
  CHECK(convexified_norm(s, 2, SeqVector::basis(1)) == doctest::Approx(1.0));
  CHECK(norm("conv:l1:2", dense({3, 4})) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("descriptor identities against closed forms") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_vector(rng, 1 + t % 7);
    CHECK(norm("dual:l3", x) == doctest::Approx(lp_norm(x, 1.5)).epsilon(1e-12));
    CHECK(norm("dual:l1", x) == doctest::Approx(lp_norm(x, kInf)).epsilon(1e-12));
    CHECK(norm("dual:dual:s", x) == doctest::Approx(norm("s", x)).epsilon(1e-12));
    CHECK(norm("conv:l2:3", x) == doctest::Approx(lp_norm(x, 6.0)).epsilon(1e-12));
    CHECK(norm("cal:l1:linf:0.5", x) == doctest::Approx(lp_norm(x, 2.0)).epsilon(1e-8));
  }
}

TEST_CASE("norm axioms across descriptors") {
  std::mt19937_64 rng(43);
  for (const char* text : {"l1", "l3", "linf", "s", "s:sqrt", "conv:s:2", "cal:l2:s:0.5", "dual:s", "dual:conv:s:2",
                           "spr:1.5:3:log2p1"}) {
    CAPTURE(text);
    const auto space = parse_space(text);
    const NormEvaluator eval(space);
    const double tol = std::max(eval.tolerance(), 1e-12) * 4;
    for (int t = 0; t < 6; ++t) {
      const std::size_t n = 1 + static_cast<std::size_t>(t);
      const auto x = random_vector(rng, n);
      const auto y = random_vector(rng, n);
      const double nx = eval.norm(x);
      const double ny = eval.norm(y);
      CHECK(nx > 0.0);
      CHECK(eval.norm(x + y) <= (nx + ny) * (1 + tol));
      CHECK(eval.norm(x.scaled(-3.0)) == doctest::Approx(3.0 * nx).epsilon(tol));
      CHECK(eval.norm(x.abs()) == doctest::Approx(nx).epsilon(tol));
      SeqVector smaller;
      for (const auto& [i, v] : x.entries()) smaller.set(i, v * (0.25 + 0.5 * std::fabs(std::cos(double(i)))));
      CHECK(eval.norm(smaller) <= nx * (1 + tol));
      // spreading onto an increasing index set
      SeqVector spread;
      for (const auto& [i, v] : x.entries()) spread.set(3 * i + 2, v);
      CHECK(eval.norm(spread) == doctest::Approx(nx).epsilon(tol));
    }
    CHECK(eval.norm(SeqVector::basis(5)) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("brackets contain the value") {
  std::mt19937_64 rng(47);
  for (const char* text : {"s", "cal:l2:s:0.5", "dual:s", "dual:cal:l2:s:0.5"}) {
    CAPTURE(text);
    for (int t = 0; t < 5; ++t) {
      const auto v = evaluate_norm(*parse_space(text), random_vector(rng, 2 + t));
      CHECK(v.lower <= v.value);
      CHECK(v.value <= v.upper);
      CHECK(v.upper - v.lower <= 1e-6 * v.upper);
    }
  }
}

TEST_CASE("evaluator caches by canonical vector") {
  const NormEvaluator eval(parse_space("cal:l2:s:0.5"));
  const auto x = dense({1, 2, 3});
  const auto a = eval.evaluate(x);
  const auto b = eval.evaluate(dense({1, 2, 3}));
  CHECK(a.value == b.value);
  CHECK(a.lower == b.lower);
}

TEST_CASE("distortion norm") {
  FunctionalFamily fam{{dense({1, 1})}, 2.0};
  const auto y = y_distortion_space(fam);
  CHECK(evaluate_norm(*y, dense({1, 1})).value == doctest::Approx(4.0));
  CHECK(evaluate_norm(*y, dense({1, -1})).value == doctest::Approx(std::sqrt(2.0)));
  FunctionalFamily single{{SeqVector::basis(1)}, 1.0};
  CHECK(evaluate_norm(*y_distortion_space(single), SeqVector::basis(1)).value == doctest::Approx(1.0));
  CHECK_FALSE(is_lattice(*y));
  CHECK_THROWS_AS(evaluate_norm(*dual_space(y), dense({1})), UnsupportedSpaceError);
  CHECK_THROWS_AS(evaluate_norm(*calderon_space(y, lp_space(2), 0.5), dense({1})), UnsupportedSpaceError);
}

TEST_CASE("dual rewrite rules") {
  const auto s = schlumprecht_space(GaugeFunction::log2p1());
  CHECK(to_string(*detail::dual_rewrite(lp_space(3))) == "l1.5");
  CHECK(to_string(*detail::dual_rewrite(lp_space(1))) == "linf");
  CHECK(to_string(*detail::dual_rewrite(dual_space(s))) == "s:log2p1");
  CHECK(to_string(*detail::dual_rewrite(calderon_space(lp_space(1), lp_space(2), 0.5))) == "cal:linf:l2:0.5");
  CHECK(to_string(*detail::dual_rewrite(convexified_space(s, 2))) == "cal:dual:s:log2p1:l1:0.5");
  CHECK(detail::conjugate_exponent(1) == kInf);
  CHECK(detail::conjugate_exponent(kInf) == 1);
  CHECK(detail::conjugate_exponent(4) == doctest::Approx(4.0 / 3.0));
}
