#include "cantor/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "cantor/renorm.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cantor {

namespace {

Rational printed_rational(const std::string& text) { return rational_from_string(text); }

// Affine sign certificates over a closed s-range: endpoint evaluation is
// exact and sufficient.  A hardware-float prefilter decides almost every
// test; the conservative margin (double arithmetic on these magnitudes is
// accurate to ~1e-15 relative) forces exact rational evaluation only where
// a quantity is nearly zero, e.g. the gaps closing at s1 and s2.
struct DEval {
  double v, mag;
};
DEval deval(const AffineInS& a, double sd) {
  const double t0 = a.c0.get_d(), t1 = a.c1.get_d() * sd;
  return {t0 + t1, std::fabs(t0) + std::fabs(t1)};
}
int decide(double v, double mag) {  // +1 / -1, or 0 = margin too small
  const double m = 1e-9 * mag + 1e-300;
  if (v > m) return 1;
  if (v < -m) return -1;
  return 0;
}
int approx_sign(const AffineInS& a, const Rational& s) {
  const DEval e = deval(a, s.get_d());
  if (const int d = decide(e.v, e.mag)) return d;
  return sign_of(a.eval(s));
}
// sign of a + b and a - b without building the combined affine form
int approx_sign_add(const AffineInS& a, const AffineInS& b, const Rational& s) {
  const double sd = s.get_d();
  const DEval ea = deval(a, sd), eb = deval(b, sd);
  if (const int d = decide(ea.v + eb.v, ea.mag + eb.mag)) return d;
  const Rational t = a.eval(s) + b.eval(s);
  return sign_of(t);
}
int approx_sign_sub(const AffineInS& a, const AffineInS& b, const Rational& s) {
  const double sd = s.get_d();
  const DEval ea = deval(a, sd), eb = deval(b, sd);
  if (const int d = decide(ea.v - eb.v, ea.mag + eb.mag)) return d;
  const Rational t = a.eval(s) - b.eval(s);
  return sign_of(t);
}

bool pos_on(const AffineInS& a, const SRange& r) {
  return approx_sign(a, r.lo) > 0 && (r.degenerate() || approx_sign(a, r.hi) > 0);
}
bool nonneg_on(const AffineInS& a, const SRange& r) {
  return approx_sign(a, r.lo) >= 0 && (r.degenerate() || approx_sign(a, r.hi) >= 0);
}
bool pos_add_on(const AffineInS& a, const AffineInS& b, const SRange& r) {
  return approx_sign_add(a, b, r.lo) > 0 && (r.degenerate() || approx_sign_add(a, b, r.hi) > 0);
}
bool pos_sub_on(const AffineInS& a, const AffineInS& b, const SRange& r) {
  return approx_sign_sub(a, b, r.lo) > 0 && (r.degenerate() || approx_sign_sub(a, b, r.hi) > 0);
}
bool nonneg_sub_on(const AffineInS& a, const AffineInS& b, const SRange& r) {
  return approx_sign_sub(a, b, r.lo) >= 0 &&
         (r.degenerate() || approx_sign_sub(a, b, r.hi) >= 0);
}
Cmp fast_sign_on(const AffineInS& a, const SRange& r) {
  const int lo = approx_sign(a, r.lo);
  const int hi = r.degenerate() ? lo : approx_sign(a, r.hi);
  if (lo > 0 && hi > 0) return Cmp::Greater;
  if (lo < 0 && hi < 0) return Cmp::Less;
  if (lo == 0 && hi == 0) return Cmp::Equal;
  return Cmp::Mixed;
}

// 16 grid squares plus the deep corner square: the operator pool used to
// rescue bad components.
const std::vector<Square>& rescue_pool() {
  static const std::vector<Square> pool = [] {
    std::vector<Square> p;
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j) p.push_back(square_grid(i, j));
    p.push_back(square_85());
    return p;
  }();
  return pool;
}

const std::vector<Square>& family14() {
  static const std::vector<Square> fam = square_family_14();
  return fam;
}

struct FamilyAffine {
  AffineInS lo[3], hi[3];
};

FamilyAffine family_affine(int sign) {
  const auto& fl = family_lines();
  FamilyAffine f;
  f.lo[0] = fl.a1;
  f.hi[0] = fl.b1;
  f.lo[1] = sign < 0 ? fl.a2m : fl.a2p;
  f.hi[1] = sign < 0 ? fl.b2m : fl.b2p;
  f.lo[2] = fl.a3;
  f.hi[2] = fl.b3;
  return f;
}

// Interval well-ordering of the family: positive lengths, nonnegative gaps
// (the gaps close exactly at s1 and s2).
bool check_ordering(const SRange& r, const FamilyAffine& f) {
  bool ok = true;
  for (int n = 0; n < 3; ++n) ok = ok && pos_sub_on(f.hi[n], f.lo[n], r);
  ok = ok && nonneg_sub_on(f.lo[1], f.hi[0], r) && nonneg_sub_on(f.lo[2], f.hi[1], r);
  return ok;
}

bool square_in_hull(const SRange& r, const Square& sq) {
  const auto& fl = family_lines();
  return nonneg_sub_on(sq.proj_lo, fl.j_lo, r) && nonneg_sub_on(fl.j_hi, sq.proj_hi, r);
}

// Left-to-right chaining of the 14 projections, order fixed at the midpoint.
bool check_chain(const SRange& r) {
  const double sm = r.mid().get_d();
  std::vector<const Square*> order;
  for (const auto& sq : family14()) order.push_back(&sq);
  std::sort(order.begin(), order.end(), [sm](const Square* a, const Square* b) {
    return deval(a->proj_lo, sm).v < deval(b->proj_lo, sm).v;
  });
  bool ok = true;
  for (size_t k = 0; k + 1 < order.size(); ++k)
    ok = ok && nonneg_sub_on(order[k]->proj_hi, order[k + 1]->proj_lo, r);
  return ok;
}

// Rescue hints: last successful (pool op, family component) per family sign,
// square and bad component.  Purely an ordering heuristic; results do not
// depend on it.
struct RescueHint {
  std::atomic<int> op{-1}, tgt{-1};
};
RescueHint g_hints[2][14][4];

// Precomputed affine forms for the rescue test.  The image of bad component
// m of square C under a pool operator T' is p^31 * comp + a'; via the
// duality p^31 proj(C) + a_C = [-s, 1] the scaled component endpoints are
// plain differences of intercepts and family lines, so every per-sample test
// reduces to evaluating cached affine functions.
struct FamilyCache {
  FamilyAffine f;
  // scaled bad-component endpoints minus the square's own intercept
  AffineInS comp_lo[14][4], comp_hi[14][4];
  AffineInS comp_width[14][4];                  // (unscaled) hi - lo, for shape
  std::array<AffineInS, 3> op_minus_flo[17];    // a' - f.lo[n]
  std::array<AffineInS, 3> fhi_minus_op[17];    // f.hi[n] - a'
};

const FamilyCache& family_cache(int sign) {
  static const auto build = [](int sg) {
    FamilyCache c;
    c.f = family_affine(sg);
    const Rational invP = 1 / gamma_pow(1240);
    for (int k = 0; k < 14; ++k) {
      const AffineInS& a = family14()[k].intercept;
      const AffineInS ends[5] = {AffineInS{0, -1}, c.f.lo[0], c.f.lo[1], c.f.lo[2],
                                 AffineInS{1, 0}};
      const AffineInS starts[5] = {AffineInS{0, -1}, c.f.hi[0], c.f.hi[1], c.f.hi[2],
                                   AffineInS{1, 0}};
      for (int m = 0; m < 4; ++m) {
        c.comp_lo[k][m] = starts[m] - a;
        c.comp_hi[k][m] = ends[m + 1] - a;
        c.comp_width[k][m] = (c.comp_hi[k][m] - c.comp_lo[k][m]) * invP;
      }
    }
    for (int o = 0; o < 17; ++o) {
      const AffineInS& a = rescue_pool()[o].intercept;
      for (int n = 0; n < 3; ++n) {
        c.op_minus_flo[o][n] = a - c.f.lo[n];
        c.fhi_minus_op[o][n] = c.f.hi[n] - a;
      }
    }
    return c;
  };
  static const FamilyCache minus = build(-1), plus = build(+1);
  return sign < 0 ? minus : plus;
}

// Every bad component of the square must be sent strictly inside a family
// interval by some pool operator.
bool rescue_square(const SRange& r, int sign, int sq_index, std::string* why) {
  const FamilyCache& c = family_cache(sign);
  const Square& sq = family14()[sq_index];
  const int sgn_idx = sign < 0 ? 0 : 1;
  for (int m = 0; m < 4; ++m) {
    if (!nonneg_on(c.comp_width[sq_index][m], r)) {
      if (why) *why = sq.label + " component " + std::to_string(m) + " inverted";
      return false;
    }
    auto try_op = [&](int oi, int n) {
      if (rescue_pool()[oi].label == sq.label) return false;  // own operator made it bad
      return pos_add_on(c.comp_lo[sq_index][m], c.op_minus_flo[oi][n], r) &&
             pos_sub_on(c.fhi_minus_op[oi][n], c.comp_hi[sq_index][m], r);
    };
    RescueHint& h = g_hints[sgn_idx][sq_index][m];
    const int hop = h.op.load(std::memory_order_relaxed);
    const int htgt = h.tgt.load(std::memory_order_relaxed);
    bool rescued = hop >= 0 && try_op(hop, htgt);
    for (int oi = 0; oi < 17 && !rescued; ++oi)
      for (int n = 0; n < 3 && !rescued; ++n)
        if (try_op(oi, n)) {
          rescued = true;
          h.op.store(oi, std::memory_order_relaxed);
          h.tgt.store(n, std::memory_order_relaxed);
        }
    if (!rescued) {
      if (why) *why = sq.label + " component " + std::to_string(m) + " unrescued";
      return false;
    }
  }
  return true;
}

enum class RangeStatus { Ok, Mixed, Fail };

// One paving step of the corner-excluded induction: at block (I,J) the
// conditions read the exponent pair (I-1, J-1).  Returns which side grows.
struct PavingStep {
  Cmp grow_x, grow_y;
};

PavingStep lemma1_step(int I, int J, const SRange& r) {
  // condition forms cached per block; I in 1..28, J in 1..37
  static const auto table = [] {
    const auto& pc = pair_constants();
    const Rational C1 = (pc.p - 2) * (pc.q - 1) / (pc.p - 1);
    const Rational C2 = (pc.q - 1) / ((pc.p - 1) * (pc.q - 2));
    std::vector<std::pair<AffineInS, AffineInS>> t(29 * 38);
    for (long i = 0; i <= 27; ++i)
      for (long j = 0; j <= 36; ++j) {
        const Rational R = gamma_pow(40 * i - 31 * j);
        const Rational M = 2 * (pc.q - 1) * gamma_pow(40 * i - 31 * 39);
        t[(i + 1) * 38 + (j + 1)] = {AffineInS{-C1, pc.kappa * (R - M)},
                                     AffineInS{-C2, pc.kappa * (R + M / (pc.q - 2))}};
      }
    return t;
  }();
  const auto& [lhs1, lhs2] = table[I * 38 + J];
  return {fast_sign_on(lhs1, r), fast_sign_on(lhs2, r)};  // x: want > 0; y: want < 0
}

PavingStep lemma2_step(int I, int J, const SRange& r) {
  // (I): p^i/q^j > q(p-2)/(p s); (II): p^i/q^j < q/(p(q-2)s); I in 0..31, J in 0..40
  static const auto table = [] {
    const auto& pc = pair_constants();
    std::vector<std::pair<AffineInS, AffineInS>> t(32 * 41);
    for (long i = -1; i <= 30; ++i)
      for (long j = -1; j <= 39; ++j) {
        const Rational R = gamma_pow(40 * i - 31 * j);
        t[(i + 1) * 41 + (j + 1)] = {AffineInS{-pc.q * (pc.p - 2), R * pc.p},
                                     AffineInS{-pc.q, R * pc.p * (pc.q - 2)}};
      }
    return t;
  }();
  const auto& [lhs1, lhs2] = table[I * 41 + J];
  return {fast_sign_on(lhs1, r), fast_sign_on(lhs2, r)};
}

// Walk a paving from (I,J) down to (Ie,Je).  step_fn gives the two growth
// conditions; exclusive means both holding at once is an error (the corner
// exclusions of the first sweep demand it).  Optionally records one certificate entry
// per step.
RangeStatus walk_paving(int I, int J, int Ie, int Je, const SRange& r,
                        PavingStep (*step_fn)(int, int, const SRange&), bool exclusive,
                        std::string& why, Certificate* cert, const std::string& id_prefix) {
  for (int guard = 0; guard < 200; ++guard) {
    if (I == Ie && J == Je) return RangeStatus::Ok;
    const PavingStep st = step_fn(I, J, r);
    if (st.grow_x == Cmp::Mixed || st.grow_y == Cmp::Mixed) return RangeStatus::Mixed;
    const bool gx = st.grow_x == Cmp::Greater && I > Ie;
    const bool gy = st.grow_y == Cmp::Less && J > Je;
    if (exclusive && st.grow_x == Cmp::Greater && st.grow_y == Cmp::Less) {
      why = "growth conditions not mutually exclusive at block " + std::to_string(I) + "," +
            std::to_string(J);
      return RangeStatus::Fail;
    }
    if (!gx && !gy) {
      why = "paving trapped at block " + std::to_string(I) + "," + std::to_string(J);
      return RangeStatus::Fail;
    }
    const bool use_x = gx;  // prefer growing in x when both are available
    if (cert)
      cert->add_check(id_prefix + "/block-" + std::to_string(I) + "-" + std::to_string(J),
                      std::string("block (") + std::to_string(I) + "," + std::to_string(J) +
                          "): grow in " + (use_x ? "x" : "y"),
                      true);
    if (use_x)
      --I;
    else
      --J;
  }
  why = "paving did not terminate";
  return RangeStatus::Fail;
}

struct RangeOutcome {
  std::string detail;
};

RangeStatus lemma1_range(const SRange& r, int sign, RangeOutcome& out) {
  const FamilyAffine& f = family_cache(sign).f;
  bool ok = check_ordering(r, f) && check_chain(r);
  for (const auto& sq : family14()) ok = ok && square_in_hull(r, sq);
  std::string why;
  for (int k = 0; k < 14 && ok; ++k) ok = rescue_square(r, sign, k, &why);
  if (!ok) {
    out.detail = why.empty() ? "ordering/covering failed" : why;
    return RangeStatus::Fail;
  }
  const RangeStatus pav = walk_paving(28, 37, 1, 1, r, lemma1_step, true, out.detail, nullptr, "");
  return pav;
}

RangeStatus lemma2_range(const SRange& r, int /*sign*/, RangeOutcome& out) {
  return walk_paving(31, 40, 0, 0, r, lemma2_step, false, out.detail, nullptr, "");
}

// Adaptive bisection of [lo, hi]: every subrange must certify; Mixed and
// (non-degenerate) failures split, since the certified structure changes at
// s1, s2 and s* = 1.
bool sweep_rigorous(const Rational& lo, const Rational& hi,
                    RangeStatus (*check)(const SRange&, int, RangeOutcome&), int sign,
                    int& subranges, std::string& why) {
  std::vector<SRange> stack{{lo, hi}};
  int guard = 0;
  while (!stack.empty()) {
    if (++guard > 1 << 16) throw resource_limit("rigorous sweep did not converge");
    SRange r = stack.back();
    stack.pop_back();
    RangeOutcome out;
    const RangeStatus st = check(r, sign, out);
    if (st == RangeStatus::Ok) {
      ++subranges;
      continue;
    }
    if (st == RangeStatus::Fail || r.degenerate()) {
      why = out.detail;
      return false;
    }
    const Rational m = r.mid();
    stack.push_back({m, r.hi});
    stack.push_back({r.lo, m});
  }
  return true;
}

// Band-certification of a single predicate with bisection on failure
// (rescue choices and chain order may change along the band).
template <typename F>
bool bisect_band(const Rational& lo, const Rational& hi, F pred, int max_depth = 24) {
  struct Item {
    SRange r;
    int depth;
  };
  std::vector<Item> stack{{{lo, hi}, 0}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (pred(it.r)) continue;
    if (it.r.degenerate() || it.depth >= max_depth) return false;
    const Rational m = it.r.mid();
    stack.push_back({{m, it.r.hi}, it.depth + 1});
    stack.push_back({{it.r.lo, m}, it.depth + 1});
  }
  return true;
}

// Certify a family-dependent predicate over [s1, s2]: minus family up to the
// split scale s* = 1, plus family beyond.
template <typename F>
bool certify_both_bands(F pred /* (SRange, sign) -> bool */) {
  const auto& pc = pair_constants();
  const Rational split = 1 / pc.kappa;
  return bisect_band(pc.s1, split, [&](const SRange& r) { return pred(r, -1); }) &&
         bisect_band(split, pc.s2, [&](const SRange& r) { return pred(r, +1); });
}

struct WindowSpec;

// The functional rescue windows: condition (i) means the shifted operator
// picks up the components against the first gap, condition (ii) against the
// family hull; negative mirrors swap the roles.
enum class WindowKind { PosI, NegI, PosII, NegII };

bool window_holds(const AffineInS& expr, WindowKind kind, const SRange& r) {
  const auto& fl = family_lines();
  const AffineInS width1 = fl.b1 - fl.a1;
  const AffineInS gap_m = fl.a2m - fl.b1;
  const AffineInS gap_p = fl.a2p - fl.b1;
  const AffineInS low2 = affine_const(Rational(1)) - fl.b1;  // 1 - b1
  const AffineInS high2 = fl.b3 - fl.a1;
  switch (kind) {
    case WindowKind::PosI:
      return pos_on(expr - gap_m, r) && pos_on(expr - gap_p, r) && pos_on(width1 - expr, r);
    case WindowKind::NegI:
      return pos_on(expr + width1, r) && pos_on(affine_const(Rational(0)) - gap_m - expr, r) &&
             pos_on(affine_const(Rational(0)) - gap_p - expr, r);
    case WindowKind::PosII:
      return pos_on(expr - low2, r) && pos_on(high2 - expr, r);
    case WindowKind::NegII:
      return pos_on(expr + high2, r) && pos_on(affine_const(Rational(0)) - low2 - expr, r);
  }
  return false;
}

AffineInS grid_intercept(int i, int j) { return square_grid(i, j).intercept; }

void add_window_entry(Certificate& cert, const std::string& id, const std::string& desc,
                      const AffineInS& expr, WindowKind kind, const SRange& r,
                      const std::string& printed) {
  const Rational v1 = expr.eval(r.lo), v2 = expr.eval(r.hi);
  const Rational lo = std::min(v1, v2), hi = std::max(v1, v2);
  bool pass = window_holds(expr, kind, r);
  // The printed pair gives strict outer bounds of the exact enclosure.
  const auto slash = printed.find('/', 1);
  if (slash != std::string::npos) {
    pass = pass && printed_rational(printed.substr(0, slash)) < lo &&
           hi < printed_rational(printed.substr(slash + 1));
  }
  cert.add_check(id, desc, pass, lo, hi, printed);
}

}  // namespace

Certificate verify_cases() {
  const auto& pc = pair_constants();
  const SRange r{pc.s1, pc.s2};
  Certificate cert;

  const AffineInS a11 = grid_intercept(1, 1), a21 = grid_intercept(2, 1),
                  a31 = grid_intercept(3, 1), a41 = grid_intercept(4, 1),
                  a12 = grid_intercept(1, 2), a22 = grid_intercept(2, 2),
                  a32 = grid_intercept(3, 2), a42 = grid_intercept(4, 2),
                  a33 = grid_intercept(3, 3), a43 = grid_intercept(4, 3);

  add_window_entry(cert, "cases/1/a31-a41", "first corner square rescued across the hull",
                   a31 - a41, WindowKind::NegII, r, "-1.925836829/-1.887440068");
  add_window_entry(cert, "cases/1/a31-a42", "first corner square rescued across the gap",
                   a31 - a42, WindowKind::PosI, r, "0.613086242/0.651483003");
  cert.add_check("cases/2/shift-identity", "a42-a32 = a41-a31 = (p-1)q s*/p exactly",
                 a42 - a32 == a41 - a31 &&
                     a42 - a32 == AffineInS{0, (pc.p - 1) * pc.q * pc.kappa / pc.p});
  add_window_entry(cert, "cases/2/a42-a31", "second case window, mirrored", a42 - a31,
                   WindowKind::NegI, r, "-0.708758125/-0.008670035");
  add_window_entry(cert, "cases/3/a32-a21", "third case window", a32 - a21, WindowKind::PosI, r,
                   "0.599935514/0.663790257");
  add_window_entry(cert, "cases/4/a21-a32", "fourth case, gap condition mirrored", a21 - a32,
                   WindowKind::NegI, r, "");
  add_window_entry(cert, "cases/4/a21-a11", "fourth case, hull condition", a21 - a11,
                   WindowKind::PosII, r, "");
  cert.add_check("cases/5/shift-identity", "a12-a22 = a33-a43 = -(p-1)q s*/p exactly",
                 a12 - a22 == a33 - a43 &&
                     a12 - a22 == AffineInS{0, -(pc.p - 1) * pc.q * pc.kappa / pc.p});
  add_window_entry(cert, "cases/5/a12-a43", "fifth case window", a12 - a43, WindowKind::NegI, r,
                   "-0.608256623/-0.467608362");
  {
    const Rational shift = (pc.p - 1) * pc.p;  // p^31 (1-1/p)/p^29
    bool ok = true;
    for (int i = 1; i <= 4; ++i)
      for (int j = 3; j <= 4; ++j)
        ok = ok && grid_intercept(i, j) == grid_intercept(i, j - 2) - shift;
    cert.add_check("cases/6/column-shift",
                   "right grid columns reduce to the left ones by the exact shift (p-1)p", ok,
                   shift, shift);
  }
  return cert;
}

Certificate verify_lemma1(VerifyMode mode, int grid) {
  const auto& pc = pair_constants();
  Certificate cert;

  {  // delta bounds are exactly the kappa-images of s1, s2
    const Rational d1 =
        (pc.q - 1) /
        ((pc.p - 1) * (pc.q - 2) + 2 * (pc.p - 1) * (pc.q - 1) * gamma_pow(-31 * 39));
    const Rational d2 = (pc.p - 2) * (pc.q - 1) /
                        ((pc.p - 1) - 2 * (pc.p - 1) * (pc.q - 1) * gamma_pow(-31 * 39));
    cert.add_check("lemma1/delta-bounds",
                   "delta1 = kappa s1 and delta2 = kappa s2 exactly; s* spans [delta1, delta2]",
                   d1 == pc.delta1 && d2 == pc.delta2 && pc.delta1 < 1 && 1 < pc.delta2,
                   pc.delta1, pc.delta2, "0.987915116/1.00801257");
  }
  {  // projection hull of the family is exactly J_s
    const auto& fl = family_lines();
    const bool ok = square_grid(3, 1).proj_lo == fl.j_lo && square_grid(2, 4).proj_hi == fl.j_hi;
    cert.add_check("lemma1/hull-identity",
                   "leftmost/rightmost projections realize the endpoints of J_s", ok);
  }
  {  // duality: each square's return map carries its projection onto [-s, 1]
    const Rational P = gamma_pow(1240);
    for (const auto& sq : rescue_pool()) {
      const bool ok = sq.proj_lo * P + sq.intercept == AffineInS{0, -1} &&
                      sq.proj_hi * P + sq.intercept == AffineInS{1, 0};
      cert.add_check("lemma1/duality/" + sq.label,
                     "p^31 * projection + intercept = [-s, 1] identically", ok);
    }
  }
  {  // base case: the y-join follows from the growth condition at (28,37),
     // the x-join needs the corner operators because condition (1) fails there
    const SRange r{pc.s1, pc.s2};
    const long i = 28, j = 37;
    const Rational C1 = (pc.p - 2) * (pc.q - 1) / (pc.p - 1);
    const Rational C2 = (pc.q - 1) / ((pc.p - 1) * (pc.q - 2));
    const Rational R = gamma_pow(40 * i - 31 * j);
    const Rational M = 2 * (pc.q - 1) * gamma_pow(40 * i - 31 * 39);
    cert.add_check("lemma1/base/grow-y", "growth condition (2) holds at exponents (28,37)",
                   pos_on(AffineInS{C2, -pc.kappa * (R + M / (pc.q - 2))}, r));
    cert.add_check("lemma1/base/no-grow-x",
                   "growth condition (1) fails at exponents (28,37), forcing the corner operators",
                   !pos_on(AffineInS{-C1, pc.kappa * (R - M)}, r));
    const AffineInS w = square_85().intercept - square_grid(1, 4).intercept;
    const Rational lo = std::min(w.eval(r.lo), w.eval(r.hi));
    const Rational hi = std::max(w.eval(r.lo), w.eval(r.hi));
    cert.add_check("lemma1/corner-window",
                   "a85 - a14 lies in the gap-filling window (max(a2-b1), b1-a1); printed "
                   "bounds are approximate",
                   window_holds(w, WindowKind::PosI, r), lo, hi, "0.025457501/0.438403979");
  }
  {  // no-trap certificate, independent of s
    const Rational m1 = (pc.p - 2) * (pc.q - 1) / ((pc.p - 1) * pc.delta1) - 1;
    const Rational m2 = 1 - (pc.q - 1) / ((pc.p - 1) * (pc.q - 2) * pc.delta2);
    bool ok = true;
    for (long i = 1; i <= 27 && ok; ++i) {
      const Rational t1 = m1 + 2 * (pc.q - 1) * gamma_pow(40 * i - 31 * 39);
      const Rational t2 = m2 + 2 * (pc.q - 1) * gamma_pow(40 * i - 31 * 39) / (pc.q - 2);
      const Rational bound = std::max(t1, t2);
      for (long j = 1; j <= 37 && ok; ++j)
        ok = abs_of(gamma_pow(40 * i - 31 * j) - 1) > bound;
    }
    cert.add_check("lemma1/no-trap",
                   "|p^i/q^j - 1| clears both stopping margins for 1<=i<=27, 1<=j<=37", ok, m1, m2,
                   "0.020343299/0.019937701");
  }
  {  // both families work at the split scale s* = 1
    const Rational split = 1 / pc.kappa;
    RangeOutcome om, op;
    const bool okm = lemma1_range({split, split}, -1, om) == RangeStatus::Ok;
    const bool okp = lemma1_range({split, split}, +1, op) == RangeStatus::Ok;
    cert.add_check("lemma1/split-point",
                   std::string("at s* = 1 the minus family ") + (okm ? "passes" : "fails") +
                       " and the plus family " + (okp ? "passes" : "fails"),
                   okm && okp, split, split);
  }
  {  // well-ordering, per family band
    const Rational split = 1 / pc.kappa;
    cert.add_check("lemma1/ordering/minus",
                   "minus-family intervals ordered with nonnegative gaps on [s1, 1/kappa]",
                   bisect_band(pc.s1, split, [](const SRange& r) {
                     return check_ordering(r, family_affine(-1));
                   }),
                   pc.s1, split);
    cert.add_check("lemma1/ordering/plus",
                   "plus-family intervals ordered with nonnegative gaps on [1/kappa, s2]",
                   bisect_band(split, pc.s2, [](const SRange& r) {
                     return check_ordering(r, family_affine(+1));
                   }),
                   split, pc.s2);
  }
  {  // covering: containment per square, then the chain
    for (int k = 0; k < 14; ++k) {
      const auto& sq = family14()[k];
      cert.add_check("lemma1/covering/" + sq.label, "projection contained in J_s over [s1, s2]",
                     bisect_band(pc.s1, pc.s2,
                                 [&sq](const SRange& r) { return square_in_hull(r, sq); }),
                     pc.s1, pc.s2);
    }
    cert.add_check("lemma1/covering/chain",
                   "the 14 projections chain left to right without holes",
                   bisect_band(pc.s1, pc.s2, [](const SRange& r) { return check_chain(r); }),
                   pc.s1, pc.s2);
  }
  {  // rescue, per square, with the family matching the band
    for (int k = 0; k < 14; ++k) {
      const auto& sq = family14()[k];
      const bool ok = certify_both_bands(
          [k](const SRange& r, int sign) { return rescue_square(r, sign, k, nullptr); });
      cert.add_check("lemma1/rescue/" + sq.label,
                     "all bad components sent strictly inside the family by pool operators", ok,
                     pc.s1, pc.s2);
    }
  }
  {  // paving path over the whole range, one entry per block
    const SRange r{pc.s1, pc.s2};
    std::string why;
    Certificate steps;
    const RangeStatus st = walk_paving(28, 37, 1, 1, r, lemma1_step, true, why, &steps,
                                       "lemma1/paving");
    if (st == RangeStatus::Ok) {
      cert.merge(steps);
    } else {
      // growth condition changes along the band: certify by bisection instead
      const bool ok = bisect_band(pc.s1, pc.s2, [](const SRange& rr) {
        RangeOutcome o;
        return walk_paving(28, 37, 1, 1, rr, lemma1_step, true, o.detail, nullptr, "") ==
               RangeStatus::Ok;
      });
      cert.add_check("lemma1/paving/path", "paving certified on s-subintervals" +
                         (why.empty() ? std::string() : "; " + why),
                     ok, pc.s1, pc.s2);
    }
    cert.add_check("lemma1/paving/mutual-exclusion",
                   "(p-2)(q-2) > 1, so the growth conditions exclude each other",
                   (pc.p - 2) * (pc.q - 2) > 1);
  }

  const Rational split = 1 / pc.kappa;
  if (mode == VerifyMode::Sample) {
    if (grid < 2) throw invalid_parameter("grid must be >= 2");
    std::vector<int> bad(grid, 0);
    std::vector<RangeOutcome> outs(grid);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < grid; ++k) {
      const Rational s = pc.s1 + (pc.s2 - pc.s1) * k / (grid - 1);
      const int sign = s * pc.kappa <= 1 ? -1 : 1;
      if (lemma1_range({s, s}, sign, outs[k]) != RangeStatus::Ok) bad[k] = 1;
    }
    int failures = 0;
    std::string first;
    for (int k = 0; k < grid; ++k)
      if (bad[k]) {
        ++failures;
        if (first.empty()) first = "sample " + std::to_string(k) + ": " + outs[k].detail;
      }
    cert.add_check("lemma1/sweep-sample",
                   "ordering+covering+rescue+paving at " + std::to_string(grid) +
                       " scales in [s1, s2]" + (first.empty() ? "" : "; " + first),
                   failures == 0, pc.s1, pc.s2);
  } else {
    int subranges = 0;
    std::string why;
    const bool ok = sweep_rigorous(pc.s1, split, lemma1_range, -1, subranges, why) &&
                    sweep_rigorous(split, pc.s2, lemma1_range, +1, subranges, why);
    cert.add_check("lemma1/sweep-rigorous",
                   "ordering+covering+rescue+paving over " + std::to_string(subranges) +
                       " certified s-subintervals covering [s1, s2]" +
                       (why.empty() ? "" : "; " + why),
                   ok, pc.s1, pc.s2);
  }
  cert.merge(verify_cases());
  return cert;
}

Certificate verify_lemma2(VerifyMode mode, int grid) {
  const auto& pc = pair_constants();
  Certificate cert;
  const std::pair<Rational, Rational> bands[2] = {{pc.s_lo, pc.s1}, {pc.s2, pc.s_hi}};
  const char* names[2] = {"lemma2/low", "lemma2/high"};
  for (int b = 0; b < 2; ++b) {
    const SRange band{bands[b].first, bands[b].second};
    std::string why;
    Certificate steps;
    const RangeStatus st =
        walk_paving(31, 40, 0, 0, band, lemma2_step, false, why, &steps, names[b]);
    if (st == RangeStatus::Ok) {
      cert.merge(steps);
    } else {
      const bool ok = bisect_band(band.lo, band.hi, [](const SRange& rr) {
        RangeOutcome o;
        return walk_paving(31, 40, 0, 0, rr, lemma2_step, false, o.detail, nullptr, "") ==
               RangeStatus::Ok;
      });
      cert.add_check(std::string(names[b]) + "/path",
                     "full-grid paving certified on s-subintervals" +
                         (why.empty() ? std::string() : "; " + why),
                     ok, band.lo, band.hi);
    }
    if (mode == VerifyMode::Sample) {
      if (grid < 2) throw invalid_parameter("grid must be >= 2");
      std::vector<int> bad(grid, 0);
      std::vector<RangeOutcome> outs(grid);
#pragma omp parallel for schedule(dynamic)
      for (int k = 0; k < grid; ++k) {
        const Rational s = band.lo + (band.hi - band.lo) * k / (grid - 1);
        if (lemma2_range({s, s}, 0, outs[k]) != RangeStatus::Ok) bad[k] = 1;
      }
      int failures = 0;
      std::string first;
      for (int k = 0; k < grid; ++k)
        if (bad[k]) {
          ++failures;
          if (first.empty()) first = outs[k].detail;
        }
      cert.add_check(std::string(names[b]) + "/sweep-sample",
                     "full-grid paving at " + std::to_string(grid) + " scales" +
                         (first.empty() ? "" : "; " + first),
                     failures == 0, band.lo, band.hi);
    } else {
      int subranges = 0;
      std::string rwhy;
      const bool ok = sweep_rigorous(band.lo, band.hi, lemma2_range, 0, subranges, rwhy);
      cert.add_check(std::string(names[b]) + "/sweep-rigorous",
                     "full-grid paving over " + std::to_string(subranges) +
                         " certified s-subintervals" + (rwhy.empty() ? "" : "; " + rwhy),
                     ok, band.lo, band.hi);
    }
  }
  return cert;
}

Certificate verify_theorem2(VerifyMode mode, int grid) {
  const auto& pc = pair_constants();
  Certificate cert;
  {
    const Rational tp = 1 / ((pc.p - 2) * (pc.q - 2));
    cert.add_check("theorem2/thickness-product", "tau(K) tau(K') = 1/((p-2)(q-2)) < 1",
                   tp < 1 && matches_printed(tp, "0.980062299"), tp, tp, "0.980062299");
  }
  {
    const bool ok = pc.s_lo < pc.s1 && pc.s1 < pc.s2 && pc.s2 < pc.s_hi;
    cert.add_check("theorem2/scale-ordering", "gamma^-1 s2 < s1 < s2 < gamma s1 strictly", ok,
                   pc.s_lo, pc.s_hi);
  }
  {
    struct LatticeCase {
      const char* id;
      long i, j, e;
    };
    const LatticeCase cases[] = {
        {"theorem2/lattice/p31-q40", 31, 40, 0},  {"theorem2/lattice/p7-q9", 7, 9, 1},
        {"theorem2/lattice/p24-q31", 24, 31, -1}, {"theorem2/lattice/p27-q34", 27, 34, 26},
        {"theorem2/lattice/p27-q35", 27, 35, -5}, {"theorem2/lattice/p26-q33", 26, 33, 17},
        {"theorem2/lattice/p26-q34", 26, 34, -14},
    };
    for (const auto& c : cases) {
      const bool ok = gamma_lattice(c.i, c.j).exponent == c.e &&
                      gamma_pow(40 * c.i) == gamma_pow(31 * c.j) * gamma_pow(c.e);
      cert.add_check(c.id,
                     "p^" + std::to_string(c.i) + "/q^" + std::to_string(c.j) + " = gamma^" +
                         std::to_string(c.e) + " exactly",
                     ok);
    }
  }
  cert.add_check("theorem2/minimal-exponent", "min |40i-31j| = 1 for 1<=i<=25, 1<=j<=37",
                 min_abs_lattice_exponent(1, 25, 1, 37) == 1, 1, 1);
  {
    long best_pos = 0, best_neg = 0;
    for (long i = 1; i <= 31; ++i)
      for (long j = 1; j <= 40; ++j) {
        const long e = 40 * i - 31 * j;
        if (e > 0 && (best_pos == 0 || e < best_pos)) best_pos = e;
        if (e < 0 && (best_neg == 0 || e > best_neg)) best_neg = e;
      }
    cert.add_check("theorem2/lattice-extremes",
                   "closest ratios to 1: gamma from above, 1/gamma from below",
                   best_pos == 1 && best_neg == -1);
  }
  {
    // pi_2 T'0^40 T1^31 = p^31 t - p^31 + 1 and pi_2 T'1^40 T0^31 = p^31 t + (p^31-1) s
    bool ok1 = true, ok2 = true;
    const Rational P = gamma_pow(1240);
    const std::vector<int> ones31(31, 1), zeros31(31, 0), ones40(40, 1), zeros40(40, 0);
    for (int k = 0; k < 5; ++k) {
      const Configuration c{pc.s1 + Rational(k, 7), Rational(2 * k - 3, 5), "", ""};
      const Configuration r1 = compose_kprime(zeros40, compose_k(ones31, c));
      const Configuration r2 = compose_kprime(ones40, compose_k(zeros31, c));
      ok1 = ok1 && r1.s == c.s && r1.t == P * c.t - P + 1;
      ok2 = ok2 && r2.s == c.s && r2.t == P * c.t + (P - 1) * c.s;
    }
    cert.add_check("theorem2/long-operator-down",
                   "all-ones K word then all-zeros K' word: p^31 t - p^31 + 1", ok1);
    cert.add_check("theorem2/long-operator-up",
                   "all-zeros K word then all-ones K' word: p^31 t + (p^31 - 1) s", ok2);
  }
  cert.add_check("theorem2/boundary-move-low", "gamma^-1 s2 scaled by p^7/q^9 returns to s2",
                 pc.s_lo * gamma_pow(1) == pc.s2, pc.s_lo, pc.s2);
  cert.add_check("theorem2/boundary-move-high", "gamma s1 scaled by p^24/q^31 returns to s1",
                 pc.s_hi * gamma_pow(-1) == pc.s1, pc.s1, pc.s_hi);
  // Digit-level agreement with the printed decimals lives in the constants
  // table; the certificate only demands that documented discrepancies stay
  // documented (a slip without a note is a failure).
  for (const auto& row : constants_table()) {
    cert.add_check("constants/" + row.id,
                   row.note.empty() ? "printed decimal regenerated from the exact rational"
                                    : row.note,
                   row.match || !row.note.empty(), row.value, row.value, row.printed);
  }
  cert.merge(verify_lemma1(mode, grid));
  cert.merge(verify_lemma2(mode, std::max(2, grid / 4)));
  {
    const bool ok = cert.all_pass();
    cert.add_check("theorem2/verdict", "recurrent compact set certified; stable intersection", ok);
  }
  return cert;
}

std::vector<ConstantRow> constants_table() {
  const auto& pc = pair_constants();
  const auto& fl = family_lines();
  const SRange r{pc.s1, pc.s2};
  std::vector<ConstantRow> rows;
  auto push = [&rows](const std::string& id, const std::string& printed, const Rational& v,
                      const std::string& note = "") {
    rows.push_back({id, printed, v, matches_printed(v, printed), note});
  };
  auto range_min = [&r](const AffineInS& f) { return std::min(f.eval(r.lo), f.eval(r.hi)); };
  auto range_max = [&r](const AffineInS& f) { return std::max(f.eval(r.lo), f.eval(r.hi)); };

  // Source window bounds are low-precision outer bounds of the exact window,
  // not truncations of its endpoints: match means the printed strict
  // inequality is certified against the exact extreme.
  auto push_bound = [&rows](const std::string& id, const std::string& printed, const Rational& v,
                            bool lower) {
    const Rational pr = printed_rational(printed);
    const bool holds = lower ? pr < v : v < pr;
    const bool close = abs_of(v - pr) < Rational(1, 100000000);
    std::string note = "printed outer bound; exact extreme is " + to_decimal(v, 12);
    if (!holds)
      note = "printed bound is crossed by the exact extreme " + to_decimal(v, 12) +
             "; the functional window requirement holds with large slack";
    rows.push_back({id, printed, v, holds && close, note});
  };

  push("p", "3.538923071", pc.p);
  push("q", "2.663024240", pc.q);
  push("thickness-product", "0.980062299", 1 / ((pc.p - 2) * (pc.q - 2)));
  push("gamma-inv-s2", "1.1220161", pc.s_lo,
       "exact value truncates to 1.1220162; the printed digits reproduce the 7-digit "
       "truncation of s2 divided by gamma");
  push("s1", "1.1349444", pc.s1);
  push("s2", "1.1580329", pc.s2);
  push("gamma-s1", "1.1713761", pc.s_hi);
  push("delta1", "0.987915116", pc.delta1,
       "exact value truncates to 0.987915117; the printed last digit is low by one");
  push("delta2", "1.00801257", pc.delta2);
  push("max-a2-b1", "0.008670035", std::max(range_max(fl.a2m - fl.b1), range_max(fl.a2p - fl.b1)));
  push("min-b1-a1", "0.708758125", range_min(fl.b1 - fl.a1));
  push("max-1-b1", "1.440604766", range_max(affine_const(Rational(1)) - fl.b1));
  push("min-b3-a1", "2.134944413", range_min(fl.b3 - fl.a1));
  const AffineInS a31_41 = grid_intercept(3, 1) - grid_intercept(4, 1);
  push_bound("a31-a41-lo", "-1.925836829", range_min(a31_41), true);
  push_bound("a31-a41-hi", "-1.887440068", range_max(a31_41), false);
  const AffineInS a31_42 = grid_intercept(3, 1) - grid_intercept(4, 2);
  push_bound("a31-a42-lo", "0.613086242", range_min(a31_42), true);
  push_bound("a31-a42-hi", "0.651483003", range_max(a31_42), false);
  const AffineInS a32_21 = grid_intercept(3, 2) - grid_intercept(2, 1);
  push_bound("a32-a21-lo", "0.599935514", range_min(a32_21), true);
  push_bound("a32-a21-hi", "0.663790257", range_max(a32_21), false);
  const AffineInS a12_43 = grid_intercept(1, 2) - grid_intercept(4, 3);
  push_bound("a12-a43-lo", "-0.608256623", range_min(a12_43), true);
  push_bound("a12-a43-hi", "-0.467608362", range_max(a12_43), false);
  const AffineInS corner = square_85().intercept - square_grid(1, 4).intercept;
  push_bound("a85-a14-lo", "0.025457501", range_min(corner), true);
  push_bound("a85-a14-hi", "0.438403979", range_max(corner), false);
  const Rational m1 = (pc.p - 2) * (pc.q - 1) / ((pc.p - 1) * pc.delta1) - 1;
  const Rational m2 = 1 - (pc.q - 1) / ((pc.p - 1) * (pc.q - 2) * pc.delta2);
  push("stop-margin-1", "0.020343299", m1);
  push("stop-margin-2", "0.019937701", m2);
  push("i27-gap", "0.146131269", std::min(abs_of(gamma_pow(26) - 1), abs_of(gamma_pow(-5) - 1)));
  push("i27-margin-1", "0.056470184", 2 * (pc.q - 1) * pc.q / (pc.p * pc.p * pc.p * pc.p));
  push("i27-margin-2", "0.085170618",
       2 * (pc.q - 1) * pc.q / ((pc.q - 2) * pc.p * pc.p * pc.p * pc.p));
  push("i26-gap", "0.357467488", std::min(abs_of(gamma_pow(17) - 1), abs_of(gamma_pow(-14) - 1)));
  push("i25-margin-1", "0.004508966", 2 * (pc.q - 1) * gamma_pow(40 * 25 - 31 * 39));
  push("i25-margin-2", "0.006800605",
       2 * (pc.q - 1) * gamma_pow(40 * 25 - 31 * 39) / (pc.q - 2));
  push("gamma-gap", "0.031101637", std::min(abs_of(gamma_pow(1) - 1), abs_of(gamma_pow(-1) - 1)));
  {
    // The printed threshold 0.028738306 is not derivable from the stated
    // margins: those give max(margin sums) = 0.026738306, and the printed
    // figure equals 0.021937701 + 0.006800605, a one-digit slip in
    // 0.019937701.  The inequality chain still holds as printed
    // (0.031101637 > 0.028738306), which is what the row certifies.
    const Rational t1 = m1 + 2 * (pc.q - 1) * gamma_pow(40 * 25 - 31 * 39);
    const Rational t2 = m2 + 2 * (pc.q - 1) * gamma_pow(40 * 25 - 31 * 39) / (pc.q - 2);
    const Rational derived = std::max(t1, t2);
    const Rational printed = printed_rational("0.028738306");
    const Rational gap = std::min(abs_of(gamma_pow(1) - 1), abs_of(gamma_pow(-1) - 1));
    ConstantRow row;
    row.id = "i25-threshold";
    row.printed = "0.028738306";
    row.value = derived;
    row.match = derived < printed && printed < gap;  // holds as an inequality threshold
    row.note = "printed threshold differs from the derived bound " + to_decimal(derived, 9) +
               " (one-digit slip in 0.019937701); the printed inequality "
               "0.031101637 > 0.028738306 is certified instead";
    rows.push_back(row);
  }
  return rows;
}

OracleReport oracle_recurrence(int grid_s, int grid_t, int max_cycles) {
  if (grid_s < 2 || grid_t < 2) throw invalid_parameter("grid sizes must be >= 2");
  const auto& pc = pair_constants();
  const auto& reg = region_L();
  OracleReport rep;

  struct Point {
    Rational s, t;
  };
  std::vector<Point> pts;
  for (int is = 0; is < grid_s; ++is) {
    const Rational s = pc.s_lo + (pc.s_hi - pc.s_lo) * is / (grid_s - 1);
    const Rational tlo = reg.t_lo.eval(s), thi = reg.t_hi.eval(s);
    for (int it = 0; it < grid_t; ++it) {
      const Rational t = tlo + (thi - tlo) * it / (grid_t - 1);
      if (reg.contains(s, t)) pts.push_back({s, t});
    }
  }
  rep.total = static_cast<int>(pts.size());

  std::vector<int> ok(pts.size(), 0), cyc(pts.size(), 0);
  std::vector<size_t> wlen(pts.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (size_t n = 0; n < pts.size(); ++n) {
    Rational s = pts[n].s, t = pts[n].t;
    size_t moved = 0;
    if (s == pc.s_lo || s == pc.s_hi) {
      // Normalize the scale with the gamma^+-1 lattice move first.
      const bool low = s == pc.s_lo;
      const int nk = low ? 7 : 24, nq = low ? 9 : 31;
      const Rational s_dest = low ? pc.s2 : pc.s1;
      const IntervalSet dest = reg.section(s_dest);
      std::vector<Rational> coefs;
      for (int k = 0; k < nk; ++k) coefs.push_back(-(pc.p - 1) * gamma_pow(40 * (nk - 1 - k)));
      const Rational lift = gamma_pow(40 * nk - 31 * nq) * s;  // = p^nk s / q^nq
      for (int k = 0; k < nq; ++k)
        coefs.push_back(lift * (pc.q - 1) * gamma_pow(31 * (nq - 1 - k)));
      const Rational base = gamma_pow(40 * nk) * t;
      auto bits = choose_bits(base, coefs, dest);
      if (!bits) continue;
      Rational tn = base;
      for (size_t i = 0; i < bits->size(); ++i)
        if ((*bits)[i]) tn += coefs[i];
      s = s_dest;
      t = tn;
      moved = static_cast<size_t>(nk + nq);
    }
    const IntervalSet target = reg.section(s);
    auto res = steer({s, t, "", ""}, target, max_cycles);
    if (!res) continue;
    if (!reg.contains(s, res->t_final, true)) continue;
    ok[n] = 1;
    cyc[n] = res->cycles;
    wlen[n] = moved + res->word_K.size() + res->word_Kp.size();
  }
  for (size_t n = 0; n < pts.size(); ++n) {
    if (ok[n]) {
      ++rep.steered;
      rep.max_cycles_used = std::max(rep.max_cycles_used, cyc[n]);
      rep.max_word_length = std::max(rep.max_word_length, wlen[n]);
    } else {
      rep.failures.push_back("s=" + to_decimal(pts[n].s, 9) + ",t=" + to_decimal(pts[n].t, 9));
    }
  }
  return rep;
}

}  // namespace cantor
