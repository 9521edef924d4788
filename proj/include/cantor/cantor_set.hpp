#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cantor/interval_set.hpp"
#include "cantor/rational.hpp"

namespace cantor {

// Two-branch self-similar set with contraction 1/p placed on the hull
// [hull.lo, hull.hi] (the unit-interval set scaled and translated).
struct HomogeneousCantorSet {
  Rational p;
  Interval hull{Rational(0), Rational(1)};

  Rational alpha() const { return 1 - 2 / p; }
};

HomogeneousCantorSet make_middle_cantor(const Rational& p);
HomogeneousCantorSet make_middle_cantor(const Rational& p, const Interval& hull);

// Number of level-n pieces (2^n) and their common length, without
// materializing anything.
Integer level_count(int n);
Rational level_length(const HomogeneousCantorSet& K, int n);

// The 2^n level-n intervals.  Levels above the cap are refused rather than
// silently exhausting memory.
IntervalSet refine(const HomogeneousCantorSet& K, int n, int max_level = 32,
                   int max_materialized_level = 24);

struct Thickness {
  Rational tau_R, tau_L;
  Rational tau() const { return std::min(tau_R, tau_L); }
};

// Exact closed form for homogeneous sets: tau_R = tau_L = 1/(p-2).
Thickness thickness(const HomogeneousCantorSet& K);

double hausdorff_dimension(const HomogeneousCantorSet& K);  // log 2 / log p

// Directed enclosure of HD(K) + HD(K'), for exact-looking comparisons
// against 1 without trusting a single double rounding.
struct Enclosure {
  double lo, hi;
};
Enclosure hausdorff_sum_enclosure(const HomogeneousCantorSet& K, const HomogeneousCantorSet& Kp);

// Neither set fits inside the closure of a gap of the other (bounded gaps
// and the unbounded complement components alike).
bool is_linked(const HomogeneousCantorSet& K, const HomogeneousCantorSet& Kp);

enum class Verdict { Satisfied, NotSatisfied, Inconclusive };

struct CriteriaReport {
  Enclosure hd_sum;
  Rational thickness_product;
  Rational lateral_rl, lateral_lr;  // tau_R(K)tau_L(K'), tau_L(K)tau_R(K')
  bool linked = false;
  Verdict criterion_I;        // HD sum < 1: no translated pair intersects stably
  Verdict criterion_II;       // Newhouse: tau product > 1 and linked
  Verdict criterion_III;      // HD sum > 1 and linked: generic stable intersection
  Verdict moreira_lateral;    // both lateral products > 1 and linked
  bool omega_member = false;  // HD sum > 1 while thickness product < 1
};

CriteriaReport criteria_report(const HomogeneousCantorSet& K, const HomogeneousCantorSet& Kp);

// Exact merged level-n finite approximation of K - lambda K'.
// The default path uses a common-denominator integer kernel (OpenMP inside);
// the reference path is a direct rational implementation kept for tests and
// the benchmark.
IntervalSet difference_scan(const HomogeneousCantorSet& K, const HomogeneousCantorSet& Kp,
                            const Rational& lambda, int n, size_t merge_cap = 1 << 14);
IntervalSet difference_scan_reference(const HomogeneousCantorSet& K, const HomogeneousCantorSet& Kp,
                                      const Rational& lambda, int n, size_t merge_cap = 1 << 14);

// level_n(K) intersects level_n(K') + t ?
bool intersect_oracle(const HomogeneousCantorSet& K, const HomogeneousCantorSet& Kp,
                      const Rational& t, int n);

// General affine Cantor set over a finite alphabet with Markov transitions,
// branch maps Phi|I(n,m)(x) = p_(n,m) x + q_(n,m) mapping I(n,m) onto I(m).
struct AffineCantorSystem {
  struct Transition {
    int from = 0, to = 0;
    Rational slope, offset;  // Phi on I(from,to)
    Interval domain;         // I(from,to)
  };
  std::vector<Interval> letters;  // I(n)
  std::vector<Transition> transitions;

  void validate() const;  // throws on |slope|<=1 or Phi(I(n,m)) != I(m)
  IntervalSet refine(int level) const;
  Thickness thickness_estimate(int level) const;  // gap enumeration, best effort
};

// JSON set specification: {"kind":"middle","p":{"gamma_exp":40}} or
// {"kind":"middle","p":"3.54"}; optional "hull":[lo,hi] as decimal strings.
HomogeneousCantorSet parse_set_spec(const std::string& json_text);

}  // namespace cantor
