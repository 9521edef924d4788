#include "cantor/interval_set.hpp"

#include <algorithm>

namespace cantor {

IntervalSet::IntervalSet(std::vector<Interval> sorted_disjoint) : parts_(std::move(sorted_disjoint)) {
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i].lo > parts_[i].hi) throw invalid_parameter("interval with lo > hi");
    if (i && parts_[i - 1].hi >= parts_[i].lo)
      throw invalid_parameter("intervals not disjoint/sorted");
  }
}

IntervalSet IntervalSet::merge(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) {
              return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
            });
  std::vector<Interval> out;
  for (auto& iv : intervals) {
    if (iv.lo > iv.hi) throw invalid_parameter("interval with lo > hi");
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (iv.hi > out.back().hi) out.back().hi = iv.hi;
    } else {
      out.push_back(std::move(iv));
    }
  }
  IntervalSet s;
  s.parts_ = std::move(out);
  return s;
}

Rational IntervalSet::total_length() const {
  Rational sum = 0;
  for (const auto& iv : parts_) sum += iv.length();
  return sum;
}

Rational IntervalSet::largest_component_length() const {
  Rational best = 0;
  for (const auto& iv : parts_)
    if (iv.length() > best) best = iv.length();
  return best;
}

bool IntervalSet::contains(const Rational& x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](const Rational& v, const Interval& iv) { return v < iv.lo; });
  if (it == parts_.begin()) return false;
  return std::prev(it)->contains(x);
}

bool IntervalSet::subset_of(const IntervalSet& other) const {
  size_t j = 0;
  for (const auto& iv : parts_) {
    while (j < other.parts_.size() && other.parts_[j].hi < iv.lo) ++j;
    if (j == other.parts_.size() || !(other.parts_[j].lo <= iv.lo && iv.hi <= other.parts_[j].hi))
      return false;
  }
  return true;
}

IntervalSet IntervalSet::translated(const Rational& d) const {
  IntervalSet out;
  out.parts_.reserve(parts_.size());
  for (const auto& iv : parts_) out.parts_.push_back({iv.lo + d, iv.hi + d});
  return out;
}

IntervalSet IntervalSet::scaled(const Rational& f) const {
  if (f == 0) throw invalid_parameter("scale factor must be nonzero");
  IntervalSet out;
  out.parts_.reserve(parts_.size());
  if (f > 0) {
    for (const auto& iv : parts_) out.parts_.push_back({iv.lo * f, iv.hi * f});
  } else {
    for (auto it = parts_.rbegin(); it != parts_.rend(); ++it)
      out.parts_.push_back({it->hi * f, it->lo * f});
  }
  return out;
}

std::vector<Interval> subtract_open(const Interval& base, std::vector<Interval> open_parts) {
  std::sort(open_parts.begin(), open_parts.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  Rational cursor = base.lo;
  for (const auto& gap : open_parts) {
    if (gap.hi <= base.lo || gap.lo >= base.hi || gap.lo >= gap.hi) continue;
    // unclamped gap ends: a gap straddling a base endpoint removes it
    if (gap.lo >= cursor) out.push_back({cursor, gap.lo});
    if (gap.hi > cursor) cursor = gap.hi;
  }
  if (cursor <= base.hi) out.push_back({cursor, base.hi});
  return out;
}

}  // namespace cantor
