#include "cantor/region.hpp"

#include <algorithm>

#include "cantor/renorm.hpp"

namespace cantor {

Cmp compare_on(const AffineInS& a, const AffineInS& b, const SRange& r) {
  return sign_on(a - b, r);
}

Cmp sign_on(const AffineInS& a, const SRange& r) {
  const int lo = sign_of(a.eval(r.lo));
  const int hi = r.degenerate() ? lo : sign_of(a.eval(r.hi));
  if (lo > 0 && hi > 0) return Cmp::Greater;
  if (lo < 0 && hi < 0) return Cmp::Less;
  if (lo == 0 && hi == 0) return Cmp::Equal;
  return Cmp::Mixed;
}

bool HalfPlane::test(const Rational& s, const Rational& t) const {
  const Rational v = t + u * s;
  switch (sense) {
    case Sense::LT: return v < w;
    case Sense::GT: return v > w;
    case Sense::LE: return v <= w;
    case Sense::GE: return v >= w;
  }
  return false;
}

namespace {

bool in_sliver(const std::array<HalfPlane, 3>& lines, const Rational& s, const Rational& t,
               bool closed) {
  for (const auto& hp : lines) {
    HalfPlane h = hp;
    if (closed)
      h.sense = h.sense == HalfPlane::Sense::LT ? HalfPlane::Sense::LE : HalfPlane::Sense::GE;
    if (!h.test(s, t)) return false;
  }
  return true;
}

}  // namespace

bool RegionL::contains(const Rational& s, const Rational& t, bool interior) const {
  if (interior) {
    if (!(s_range.lo < s && s < s_range.hi)) return false;
    if (!(t_lo.eval(s) < t && t < t_hi.eval(s))) return false;
    return !in_sliver(delta1, s, t, true) && !in_sliver(delta2, s, t, true);
  }
  if (!(s_range.lo <= s && s <= s_range.hi)) return false;
  if (!(t_lo.eval(s) <= t && t <= t_hi.eval(s))) return false;
  return !in_sliver(delta1, s, t, false) && !in_sliver(delta2, s, t, false);
}

IntervalSet RegionL::section(const Rational& s) const {
  if (!(s_range.lo <= s && s <= s_range.hi)) return {};
  const auto& fl = family_lines();
  const Interval base{t_lo.eval(s), t_hi.eval(s)};
  std::vector<Interval> gaps;
  // Delta1: max(b2-, b2+) < t < a3;  Delta2: b1 < t < min(a2-, a2+).
  gaps.push_back({std::max(fl.b2m.eval(s), fl.b2p.eval(s)), fl.a3.eval(s)});
  gaps.push_back({fl.b1.eval(s), std::min(fl.a2m.eval(s), fl.a2p.eval(s))});
  std::erase_if(gaps, [](const Interval& g) { return g.lo >= g.hi; });
  return IntervalSet(subtract_open(base, std::move(gaps)));
}

const RegionL& region_L() {
  static const RegionL region = [] {
    const auto& pc = pair_constants();
    const Rational m = pc.margin;
    const Rational one_q = 1 / pc.q, one_p = 1 / pc.p;
    RegionL r;
    r.s_range = {pc.s_lo, pc.s_hi};
    r.t_lo = {0, m - 1};
    r.t_hi = {1, -m};
    using S = HalfPlane::Sense;
    r.delta1 = {HalfPlane{(1 - one_q) + m, 1, S::GT},          // L1
                HalfPlane{m, one_p, S::GT},                    // L2
                HalfPlane{one_q - m, 1 - one_p, S::LT}};       // L3
    r.delta2 = {HalfPlane{1 - m, 1 - one_p, S::LT},            // L4
                HalfPlane{one_q - m, 0, S::LT},                // L5
                HalfPlane{(1 - one_q) + m, one_p, S::GT}};     // L6
    return r;
  }();
  return region;
}

const FamilyLines& family_lines() {
  static const FamilyLines fl = [] {
    const auto& pc = pair_constants();
    const Rational m = pc.margin;
    const Rational one_q = 1 / pc.q, one_p = 1 / pc.p;
    FamilyLines f;
    f.a1 = {0, m - 1};
    f.b1 = {one_p, -((1 - one_q) + m)};
    f.a2m = {0, m - one_q};
    f.b2m = {1, -((1 - one_q) + m)};
    f.a2p = {1 - one_p, m - 1};
    f.b2p = {one_p, -m};
    f.a3 = {1 - one_p, m - one_q};
    f.b3 = {1, -m};
    f.j_lo = {0, -(1 - one_q + one_q * one_q) * gamma_pow(-31 * 38)};
    f.j_hi = {gamma_pow(-40 * 29), -m};
    return f;
  }();
  return fl;
}

int family_sign(const Rational& s) { return s_star(s) <= 1 ? -1 : 1; }

std::vector<Interval> interval_family(const Rational& s, int sign) {
  const auto& pc = pair_constants();
  if (s < pc.s1 || s > pc.s2) throw invalid_parameter("s outside the core window [s1, s2]");
  if (sign != -1 && sign != 1) throw invalid_parameter("sign must be -1 or +1");
  const auto& fl = family_lines();
  const AffineInS& a2 = sign < 0 ? fl.a2m : fl.a2p;
  const AffineInS& b2 = sign < 0 ? fl.b2m : fl.b2p;
  return {{fl.a1.eval(s), fl.b1.eval(s)},
          {a2.eval(s), b2.eval(s)},
          {fl.a3.eval(s), fl.b3.eval(s)}};
}

Interval j_interval(const Rational& s) {
  const auto& fl = family_lines();
  return {fl.j_lo.eval(s), fl.j_hi.eval(s)};
}

Square make_square(const std::string& label, const std::vector<int>& a_bits,
                   const std::vector<int>& b_bits) {
  if (a_bits.size() != 31 || b_bits.size() != 40)
    throw invalid_parameter("square needs 31 K-bits and 40 K'-bits");
  const auto& pc = pair_constants();
  Square sq;
  sq.label = label;
  sq.a_bits = a_bits;
  sq.b_bits = b_bits;
  sq.x0 = 0;
  sq.y0 = 0;
  Rational ic0 = 0, ic1 = 0;
  for (int k = 0; k < 31; ++k)
    if (a_bits[k]) {
      sq.x0 += (1 - 1 / pc.p) * gamma_pow(-40 * k);
      ic0 -= (pc.p - 1) * gamma_pow(40 * (30 - k));
    }
  for (int k = 0; k < 40; ++k)
    if (b_bits[k]) {
      sq.y0 += (1 - 1 / pc.q) * gamma_pow(-31 * k);
      ic1 += (pc.q - 1) * gamma_pow(31 * (39 - k));
    }
  sq.intercept = {ic0, ic1};
  sq.proj_lo = {sq.x0, -(sq.y0 + gamma_pow(-31 * 40))};
  sq.proj_hi = {sq.x0 + gamma_pow(-40 * 31), -sq.y0};
  return sq;
}

Square square_grid(int i, int j) {
  if (i < 1 || i > 4 || j < 1 || j > 4) throw invalid_parameter("grid indices must be 1..4");
  std::vector<int> a(31, 0), b(40, 0);
  if (j == 2 || j == 4) a[30] = 1;
  if (j == 3 || j == 4) a[29] = 1;
  if (i == 2 || i == 4) b[39] = 1;
  if (i == 3 || i == 4) b[38] = 1;
  return make_square("C" + std::to_string(i) + std::to_string(j), a, b);
}

std::vector<Square> square_family_14() {
  std::vector<Square> fam;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      if ((i == 4 && j == 1) || (i == 1 && j == 4)) continue;
      fam.push_back(square_grid(i, j));
    }
  return fam;
}

Square square_85() {
  std::vector<int> a(31, 0), b(40, 0);
  a[28] = 1;
  b[37] = b[38] = b[39] = 1;
  return make_square("C85", a, b);
}

Interval project(const Square& sq, const Rational& s) {
  if (s <= 0) throw invalid_parameter("projection defined for s > 0");
  return {sq.proj_lo.eval(s), sq.proj_hi.eval(s)};
}

std::vector<Interval> bad_set(const Square& sq, const Rational& s,
                              const std::vector<Interval>& family) {
  const Rational slope = gamma_pow(1240);
  const Rational a = sq.intercept.eval(s);
  const IntervalSet merged = IntervalSet::merge(family);
  std::vector<Interval> gaps;
  for (const auto& comp : merged.intervals())
    gaps.push_back({(comp.lo - a) / slope, (comp.hi - a) / slope});
  return subtract_open(project(sq, s), std::move(gaps));
}

}  // namespace cantor
