#include <cmath>
#include <random>

#include "banachlab/errors.hpp"
#include "banachlab/seq_vector.hpp"
#include "doctest.h"

using namespace banachlab;

namespace {
SeqVector dense(std::initializer_list<double> v) { return SeqVector::from_dense(std::vector<double>(v)); }
}  // namespace

TEST_CASE("lp_norm closed forms") {
  CHECK(lp_norm(dense({1, 1}), 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(lp_norm(dense({3, 4}), 2) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(lp_norm(dense({1, -2, 3}), kInf) == 3.0);
  CHECK(lp_norm(dense({1, -2, 3}), 1) == 6.0);
  CHECK(lp_norm(SeqVector{}, 3) == 0.0);
  CHECK_THROWS_AS(lp_norm(dense({1}), 0.5), DomainError);
}

TEST_CASE("lp_norm is monotone decreasing in p") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> v(6);
    for (auto& e : v) e = g(rng);
    const auto x = SeqVector::from_dense(v);
    double prev = lp_norm(x, 1.0);
    for (double p : {1.5, 2.0, 3.0, 7.0, kInf}) {
      const double cur = lp_norm(x, p);
      CHECK(cur <= prev * (1 + 1e-14));
      prev = cur;
    }
  }
}

TEST_CASE("restrict keeps coordinates inside the interval") {
  CHECK(restrict(dense({1, 2, 3}), Interval(2, 3)) == SeqVector::from_dense(std::vector<double>{2, 3}, 2));
  CHECK(restrict(dense({1, 2, 3}), Interval(5, 7)).empty());
  CHECK(restrict(dense({1, 2, 3}), Interval(1, 3)) == dense({1, 2, 3}));
  CHECK_THROWS_AS(Interval(3, 2), ArgumentError);
  CHECK_THROWS_AS(Interval(0, 2), ArgumentError);
}

TEST_CASE("pointwise_power") {
  const auto r = pointwise_power(dense({4, 9}), 0.5);
  CHECK(r[1] == doctest::Approx(2.0));
  CHECK(r[2] == doctest::Approx(3.0));
  CHECK(pointwise_power(dense({2}), 1.0) == dense({2}));
  CHECK(pointwise_power(dense({1, 1}), 3.0) == dense({1, 1}));
  CHECK(pointwise_power(dense({-4}), 0.5)[1] == doctest::Approx(2.0));
}

TEST_CASE("pairing") {
  CHECK(pairing(dense({1, 2}), dense({3, 4})) == 11.0);
  CHECK(pairing(dense({1, 2}), SeqVector{}) == 0.0);
}

TEST_CASE("zero entries are never stored") {
  SeqVector v;
  v.set(3, 1.0);
  v.set(3, 0.0);
  CHECK(v.empty());
  CHECK((dense({1, 2}) - dense({1, 2})).empty());
  CHECK_THROWS_AS(v.set(0, 1.0), ArgumentError);
  CHECK_THROWS_AS(v.set(1, std::nan("")), ArgumentError);
}

TEST_CASE("vector text round trip") {
  const auto v = parse_vector("1,2.5,-3");
  CHECK(v == dense({1, 2.5, -3}));
  const auto s = parse_vector("1:1,5:2.5,7");
  CHECK(s[1] == 1.0);
  CHECK(s[5] == 2.5);
  CHECK(s[6] == 7.0);
  CHECK(parse_vector(format_vector(s)) == s);
  CHECK(parse_vector("").empty());
  CHECK_THROWS_AS(parse_vector("1,x"), ArgumentError);
  CHECK_THROWS_AS(parse_vector("0:1"), ArgumentError);
}

TEST_CASE("format_real prints 12 significant digits") {
  CHECK(format_real(2.0 / 3.0) == "0.666666666667");
  CHECK(format_real(1.0) == "1");
}
