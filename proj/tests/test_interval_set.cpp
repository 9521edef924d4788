#include <doctest.h>

#include <random>

#include "cantor/interval_set.hpp"

using namespace cantor;

namespace {

Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace


TEST_CASE("merge coalesces overlapping and touching intervals") {
  const auto set = IntervalSet::merge({{3, 4}, {0, 1}, {1, 2}, {Rational(7, 2), 5}});
  REQUIRE(set.size() == 2);
  CHECK(set[0] == Interval{0, 2});
  CHECK(set[1] == Interval{3, 5});
  CHECK(set.total_length() == 4);
  CHECK(set.largest_component_length() == 2);
  CHECK(set.contains(Rational(7, 2)));
  CHECK(!set.contains(Rational(5, 2)));
}

TEST_CASE("subset, translation, scaling") {
  const auto a = IntervalSet::merge({{0, 1}, {2, 3}});
  const auto b = IntervalSet::merge({{Rational(-1, 2), Rational(3, 2)}, {2, 4}});
  CHECK(a.subset_of(b));
  CHECK(!b.subset_of(a));
  CHECK(a.translated(5)[0] == Interval{5, 6});
  const auto neg = a.scaled(-2);
  REQUIRE(neg.size() == 2);
  CHECK(neg[0] == Interval{-6, -4});  // orientation restored after flip
  CHECK(neg[1] == Interval{-2, 0});
}

TEST_CASE("subtract_open produces left-to-right closed components") {
  const auto parts = subtract_open({0, 10}, {{2, 3}, {3, 5}, {-1, 0}, {9, 12}});
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == Interval{0, 2});
  CHECK(parts[1] == Interval{Rational(3), Rational(3)});  // pinched to the shared endpoint
  CHECK(parts[2] == Interval{5, 9});
}

TEST_CASE("membership agrees with a brute-force point check") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-40, 40);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Interval> raw;
    for (int k = 0; k < 6; ++k) {
      const Rational lo = frac(num(rng), 8), len = frac(std::abs(num(rng)) + 1, 16);
      raw.push_back({lo, lo + len});
    }
    const auto merged = IntervalSet::merge(raw);
    for (int k = 0; k < 40; ++k) {
      const Rational x = frac(num(rng), 8);
      bool raw_hit = false;
      for (const auto& iv : raw) raw_hit = raw_hit || iv.contains(x);
      CHECK(merged.contains(x) == raw_hit);
    }
    // components are disjoint and ordered with genuine gaps
    for (size_t k = 0; k + 1 < merged.size(); ++k) CHECK(merged[k].hi < merged[k + 1].lo);
  }
}
