#include <doctest.h>

#include <cmath>
#include <random>

#include "cantor/cantor_set.hpp"
#include "cantor/gamma.hpp"

using namespace cantor;

namespace {

Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace


namespace {

// Thickness oracle by gap enumeration on the level-n refinement: for each
// bounded gap, the bridge runs to the nearest strictly larger gap or hull
// end; tau_R/tau_L are the worst bridge-to-gap ratios.
Thickness thickness_oracle(const HomogeneousCantorSet& K, int n) {
  const auto pieces = refine(K, n).intervals();
  struct Gap {
    Rational lo, hi;
  };
  std::vector<Gap> gaps;
  for (size_t k = 0; k + 1 < pieces.size(); ++k) gaps.push_back({pieces[k].hi, pieces[k + 1].lo});
  Rational tau_r = -1, tau_l = -1;
  for (size_t g = 0; g < gaps.size(); ++g) {
    const Rational len = gaps[g].hi - gaps[g].lo;
    Rational right = K.hull.hi;
    for (size_t h = g + 1; h < gaps.size(); ++h)
      if (gaps[h].hi - gaps[h].lo > len) {
        right = gaps[h].lo;
        break;
      }
    Rational left = K.hull.lo;
    for (size_t h = g; h-- > 0;)
      if (gaps[h].hi - gaps[h].lo > len) {
        left = gaps[h].hi;
        break;
      }
    const Rational br = (right - gaps[g].hi) / len;
    const Rational bl = (gaps[g].lo - left) / len;
    if (tau_r < 0 || br < tau_r) tau_r = br;
    if (tau_l < 0 || bl < tau_l) tau_l = bl;
  }
  return {tau_r, tau_l};
}

}  // namespace

TEST_CASE("refinement structure") {
  const auto K = make_middle_cantor(3);
  CHECK(K.alpha() == Rational(1, 3));
  CHECK(level_count(10) == 1024);
  CHECK(level_length(K, 4) == Rational(1, 81));
  const auto l3 = refine(K, 3);
  CHECK(l3.size() == 8);
  for (const auto& iv : l3.intervals()) CHECK(iv.length() == Rational(1, 27));
  CHECK(refine(K, 4).subset_of(l3));  // nesting
  CHECK(refine(K, 0).intervals() == std::vector<Interval>{{0, 1}});
  CHECK_THROWS_AS(refine(K, 40), resource_limit);
}

TEST_CASE("closed-form thickness equals the gap-enumeration oracle") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(2001, 9000);
  for (int trial = 0; trial < 50; ++trial) {
    const Rational p = frac(num(rng), 1000);  // p in (2, 9]
    const auto K = make_middle_cantor(p);
    const Rational expect = 1 / (p - 2);
    CHECK(thickness(K).tau() == expect);
    for (int level = 1; level <= 6; level += 5) {
      const Thickness oracle = thickness_oracle(K, level);
      CHECK(oracle.tau_R == expect);
      CHECK(oracle.tau_L == expect);
    }
  }
}

TEST_CASE("dimension against a box-count slope") {
  const auto K = make_middle_cantor(Rational(7, 2));
  const double hd = hausdorff_dimension(K);
  CHECK(hd == doctest::Approx(std::log(2) / std::log(3.5)).epsilon(1e-12));
  // N(p^-n) = 2^n boxes: slope log N / -log eps
  const int n = 20;
  const double slope = (n * std::log(2)) / (n * std::log(3.5));
  CHECK(hd == doctest::Approx(slope).epsilon(1e-12));
  const auto enc = hausdorff_sum_enclosure(K, make_middle_cantor(3));
  CHECK(enc.lo <= enc.hi);
  CHECK(enc.lo <= hd + hausdorff_dimension(make_middle_cantor(3)));
  CHECK(hd + hausdorff_dimension(make_middle_cantor(3)) <= enc.hi);
}

TEST_CASE("difference scan equals the reference kernel") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> num(2100, 5000);
  std::uniform_int_distribution<int> lnum(-300, 300);
  for (int trial = 0; trial < 12; ++trial) {
    const auto K = make_middle_cantor(frac(num(rng), 1000));
    const auto Kp = make_middle_cantor(frac(num(rng), 1000));
    int l = lnum(rng);
    if (l == 0) l = 100;
    const Rational lambda = frac(l, 100);
    for (int level : {0, 1, 3, 5})
      CHECK(difference_scan(K, Kp, lambda, level) ==
            difference_scan_reference(K, Kp, lambda, level));
  }
}

TEST_CASE("difference identities and monotonicity") {
  const auto K = make_middle_cantor(3);
  const auto Kp = make_middle_cantor(Rational(7, 2));
  // K - K at level n is symmetric about 0
  const auto d = difference_scan(K, K, 1, 5);
  CHECK(d == d.scaled(-1));
  // lambda = -1 turns the difference into the sum: K - (-1)K' = K + K'
  const auto sum = difference_scan(K, Kp, -1, 4);
  const auto diff = difference_scan(K, Kp, 1, 4);
  CHECK(sum != diff);
  CHECK(sum ==
        difference_scan(K, HomogeneousCantorSet{Kp.p, {-Kp.hull.hi, -Kp.hull.lo}}, 1, 4));
  // level sets nest, so the scanned difference shrinks with the level
  for (int n = 0; n < 6; ++n)
    CHECK(difference_scan(K, Kp, Rational(1, 2), n + 1)
              .subset_of(difference_scan(K, Kp, Rational(1, 2), n)));
  // ternary - ternary fills [-1, 1] at every level
  for (int n : {1, 4, 8})
    CHECK(difference_scan(K, K, 1, n) == IntervalSet::merge({{-1, 1}}));
}

TEST_CASE("intersection oracle against difference membership") {
  const auto K = make_middle_cantor(3);
  const auto Kp = make_middle_cantor(Rational(5, 2));
  const int n = 5;
  const auto diff = difference_scan(K, Kp, 1, n);
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> num(-1300, 1300);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational t = frac(num(rng), 1000);
    CHECK(intersect_oracle(K, Kp, t, n) == diff.contains(t));
  }
}

TEST_CASE("classical criteria verdicts") {
  const auto ternary = make_middle_cantor(3);
  const auto rep_tt = criteria_report(ternary, ternary);
  CHECK(rep_tt.thickness_product == 1);  // boundary case
  CHECK(rep_tt.criterion_II == Verdict::Inconclusive);
  CHECK(rep_tt.linked);

  const auto half = make_middle_cantor(Rational(5, 2));
  const auto rep_hh = criteria_report(half, half);
  CHECK(rep_hh.thickness_product == 4);
  CHECK(rep_hh.criterion_II == Verdict::Satisfied);

  const auto thin = make_middle_cantor(8);
  const auto rep_thin = criteria_report(thin, thin);
  CHECK(rep_thin.hd_sum.hi < 1);
  CHECK(rep_thin.criterion_I == Verdict::Satisfied);
  CHECK(rep_thin.criterion_III == Verdict::NotSatisfied);

  const auto& pc = pair_constants();
  const auto rep = criteria_report(make_middle_cantor(pc.p), make_middle_cantor(pc.q));
  CHECK(rep.omega_member);
  CHECK(rep.thickness_product < 1);
  CHECK(rep.hd_sum.lo > 1);
  CHECK(rep.criterion_III == Verdict::Satisfied);

  // unlinked pair short-circuits the intersection criteria
  const auto far = make_middle_cantor(Rational(5, 2), Interval{5, 6});
  const auto rep_far = criteria_report(half, far);
  CHECK(!rep_far.linked);
  CHECK(rep_far.criterion_II != Verdict::Satisfied);
}

TEST_CASE("affine Markov system matches the homogeneous closed forms") {
  AffineCantorSystem sys;
  sys.letters = {{0, 1}};
  sys.transitions = {{0, 0, 3, 0, {0, Rational(1, 3)}},
                     {0, 0, 3, -2, {Rational(2, 3), 1}}};
  sys.validate();
  const auto K = make_middle_cantor(3);
  for (int level : {1, 2, 4}) CHECK(sys.refine(level) == refine(K, level));
  CHECK(sys.thickness_estimate(5).tau() == 1);
  AffineCantorSystem bad = sys;
  bad.transitions[0].offset = 1;
  CHECK_THROWS_AS(bad.validate(), invalid_parameter);
}

TEST_CASE("set specs parse and reject garbage") {
  const auto K = parse_set_spec(R"({"kind":"middle","p":{"gamma_exp":40}})");
  CHECK(K.p == gamma_pow(40));
  const auto K2 = parse_set_spec(R"({"kind":"middle","p":"3.54","hull":["-1","2"]})");
  CHECK(K2.p == Rational(177, 50));
  CHECK(K2.hull == Interval{-1, 2});
  CHECK_THROWS_AS(parse_set_spec("{"), invalid_parameter);
  CHECK_THROWS_AS(parse_set_spec(R"({"kind":"middle","p":"2"})"), invalid_parameter);
  CHECK_THROWS_AS(parse_set_spec(R"({"kind":"nope","p":"3"})"), invalid_parameter);
}
