#pragma once

#include <vector>

#include "cantor/rational.hpp"

namespace cantor {

// Closed interval with exact endpoints, lo <= hi (degenerate allowed).
struct Interval {
  Rational lo, hi;

  Rational length() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains_strict(const Rational& x) const { return lo < x && x < hi; }
  bool operator==(const Interval&) const = default;
};

// Ordered union of pairwise disjoint closed intervals.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> sorted_disjoint);

  // Merges arbitrary input; touching intervals coalesce.
  static IntervalSet merge(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  size_t size() const { return parts_.size(); }
  const Interval& operator[](size_t i) const { return parts_[i]; }

  Rational total_length() const;
  Rational largest_component_length() const;
  bool contains(const Rational& x) const;
  // Every point of this set lies in `other`.
  bool subset_of(const IntervalSet& other) const;
  bool operator==(const IntervalSet&) const = default;

  IntervalSet translated(const Rational& d) const;
  IntervalSet scaled(const Rational& f) const;  // f may be negative

 private:
  std::vector<Interval> parts_;
};

// Closed interval minus a list of open intervals; returns the (possibly
// degenerate) closed components, left to right.
std::vector<Interval> subtract_open(const Interval& base, std::vector<Interval> open_parts);

}  // namespace cantor
