#pragma once

#include <array>
#include <string>
#include <vector>

#include "cantor/gamma.hpp"
#include "cantor/interval_set.hpp"
#include "cantor/rational.hpp"

namespace cantor {

// Affine function of the scale parameter: c0 + c1*s.  Every quantity in the
// recurrence verification (interval endpoints, operator intercepts, paving
// conditions) has this shape, so inequalities over a whole s-interval are
// certified by evaluating the difference at the two endpoints.
struct AffineInS {
  Rational c0, c1;

  Rational eval(const Rational& s) const { return c0 + c1 * s; }
  AffineInS operator+(const AffineInS& o) const { return {c0 + o.c0, c1 + o.c1}; }
  AffineInS operator-(const AffineInS& o) const { return {c0 - o.c0, c1 - o.c1}; }
  AffineInS operator*(const Rational& f) const { return {c0 * f, c1 * f}; }
  AffineInS operator+(const Rational& r) const { return {c0 + r, c1}; }
  AffineInS operator-(const Rational& r) const { return {c0 - r, c1}; }
  bool operator==(const AffineInS&) const = default;
};

inline AffineInS affine_const(const Rational& r) { return {r, 0}; }

// Closed s-interval (degenerate = a single sample point).
struct SRange {
  Rational lo, hi;

  bool degenerate() const { return lo == hi; }
  Rational mid() const { return (lo + hi) / 2; }
};

enum class Cmp { Less, Equal, Greater, Mixed };

// Sign of a-b over the whole range, decided at the endpoints (exact, since
// the difference is affine in s).  Mixed covers sign changes and touching.
Cmp compare_on(const AffineInS& a, const AffineInS& b, const SRange& r);
Cmp sign_on(const AffineInS& a, const SRange& r);  // against 0

// Constraint t + u*s {sense} w, as in the six boundary lines of the region.
struct HalfPlane {
  Rational u, w;
  enum class Sense { LT, GT, LE, GE } sense;

  bool test(const Rational& s, const Rational& t) const;
};

// The candidate recurrent region: the slab Delta minus two open slivers
// (Delta1 upper, Delta2 lower), each sliver the conjunction of three lines.
struct RegionL {
  SRange s_range;                   // [gamma^-1 s2, gamma s1]
  AffineInS t_lo, t_hi;             // Delta fiber [-s+ms, 1-ms]
  std::array<HalfPlane, 3> delta1;  // L1, L2, L3
  std::array<HalfPlane, 3> delta2;  // L4, L5, L6

  bool contains(const Rational& s, const Rational& t, bool interior = false) const;
  // Fiber {t | (s,t) in L} as closed intervals.
  IntervalSet section(const Rational& s) const;
};

const RegionL& region_L();

// Endpoints of the recurrent interval family I_s^+- as affine functions of s
// (using (1-1/p)s* = (1-1/q)s to eliminate s*), plus the J_s interval.
struct FamilyLines {
  AffineInS a1, b1, a2m, b2m, a2p, b2p, a3, b3;
  AffineInS j_lo, j_hi;
};

const FamilyLines& family_lines();

// I_s^- for s* <= 1, I_s^+ for s* > 1; throws outside [s1, s2].
// The three closed intervals, in order (gaps may be degenerate).
std::vector<Interval> interval_family(const Rational& s, int sign);
int family_sign(const Rational& s);  // -1 iff s* <= 1

Interval j_interval(const Rational& s);

// A level-(31,40) cylinder square [0,p^-31]x[0,q^-40] + (x0,y0) together
// with its return-map intercept and projection, all affine in s.
struct Square {
  std::string label;
  std::vector<int> a_bits;  // 31 K-bits (x side)
  std::vector<int> b_bits;  // 40 K'-bits (y side)
  Rational x0, y0;
  AffineInS intercept;          // a_C: T_C(t) = p^31 t + a_C(s)
  AffineInS proj_lo, proj_hi;   // projection x - s y of the square, s > 0
};

Square make_square(const std::string& label, const std::vector<int>& a_bits,
                   const std::vector<int>& b_bits);

// Grid square C_ij: i = y index, j = x index, both 1..4, over the corner
// lists {0, u/p^30, u/p^29, u(1/p^29+1/p^30)} (u = 1-1/p) and the q-side
// analogue.  The 14-square family omits C41 and C14.
Square square_grid(int i, int j);
std::vector<Square> square_family_14();
Square square_85();  // corner ((1-1/p)/p^28, (1-1/q)(1/q^37+1/q^38+1/q^39))

Interval project(const Square& sq, const Rational& s);

// Projection of the square minus the preimage of the interior of I under the
// square's own return map; 4 components strictly between s1 and s2, 2 at the
// ends (I is merged before taking interiors, as the closing gaps demand).
std::vector<Interval> bad_set(const Square& sq, const Rational& s,
                              const std::vector<Interval>& family);

}  // namespace cantor
