#include "cantor/cantor_set.hpp"

#include <mpfr.h>

#include <cmath>

#include "cantor/gamma.hpp"

#include <algorithm>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cantor {

HomogeneousCantorSet make_middle_cantor(const Rational& p) {
  return make_middle_cantor(p, {Rational(0), Rational(1)});
}

HomogeneousCantorSet make_middle_cantor(const Rational& p, const Interval& hull) {
  if (p <= 2) throw invalid_parameter("middle Cantor set needs p > 2 (disjoint branches)");
  if (hull.lo >= hull.hi) throw invalid_parameter("degenerate hull");
  return {p, hull};
}

Integer level_count(int n) {
  Integer c;
  mpz_ui_pow_ui(c.get_mpz_t(), 2, static_cast<unsigned long>(n));
  return c;
}

Rational level_length(const HomogeneousCantorSet& K, int n) {
  Rational len = K.hull.length();
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), K.p.get_num().get_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(den.get_mpz_t(), K.p.get_den().get_mpz_t(), static_cast<unsigned long>(n));
  Rational pn(num, den);
  pn.canonicalize();
  return len / pn;
}

IntervalSet refine(const HomogeneousCantorSet& K, int n, int max_level, int max_materialized_level) {
  if (n < 0) throw invalid_parameter("negative refinement level");
  if (n > max_level) throw resource_limit("refinement level above cap");
  if (n > max_materialized_level)
    throw resource_limit("refinement level too deep to materialize");
  std::vector<Interval> cur{K.hull};
  const Rational inv_p = 1 / K.p;
  for (int lvl = 0; lvl < n; ++lvl) {
    std::vector<Interval> next;
    next.reserve(cur.size() * 2);
    for (const auto& iv : cur) {
      const Rational piece = iv.length() * inv_p;
      next.push_back({iv.lo, iv.lo + piece});
      next.push_back({iv.hi - piece, iv.hi});
    }
    cur.swap(next);
  }
  return IntervalSet(std::move(cur));
}

Thickness thickness(const HomogeneousCantorSet& K) {
  // Self-similarity: every gap is a scaled copy of the top gap, flanked by
  // bridges of length hull/p^k, so the infimum is attained at level 1.
  const Rational t = 1 / (K.p - 2);
  return {t, t};
}

double hausdorff_dimension(const HomogeneousCantorSet& K) {
  return std::log(2.0) / std::log(K.p.get_d());
}

namespace {

// log(r) with directed rounding.
double log_dir(const Rational& r, mpfr_rnd_t rnd) {
  mpfr_t x;
  mpfr_init2(x, 128);
  mpfr_set_q(x, r.get_mpq_t(), rnd);
  mpfr_log(x, x, rnd);
  const double out = mpfr_get_d(x, rnd);
  mpfr_clear(x);
  return out;
}

double hd_dir(const Rational& p, bool down) {
  // log2/logp, p > 2 so both logs positive.
  Rational two = 2;
  if (down) return log_dir(two, MPFR_RNDD) / log_dir(p, MPFR_RNDU);
  return log_dir(two, MPFR_RNDU) / log_dir(p, MPFR_RNDD);
}

}  // namespace

Enclosure hausdorff_sum_enclosure(const HomogeneousCantorSet& K, const HomogeneousCantorSet& Kp) {
  return {std::nextafter(hd_dir(K.p, true) + hd_dir(Kp.p, true), 0.0),
          std::nextafter(hd_dir(K.p, false) + hd_dir(Kp.p, false), 4.0)};
}

namespace {

// All bounded gaps of a level-n refinement.
std::vector<Interval> gaps_of(const IntervalSet& set) {
  std::vector<Interval> gaps;
  for (size_t i = 1; i < set.size(); ++i) gaps.push_back({set[i - 1].hi, set[i].lo});
  return gaps;
}

bool fits_in_some_gap(const HomogeneousCantorSet& K, const Interval& other_hull) {
  if (other_hull.hi <= K.hull.lo || other_hull.lo >= K.hull.hi) return true;  // gap of the line
  // Gap lengths shrink by 1/p per level, so stop once they cannot hold the
  // other hull.
  const Rational other_len = other_hull.length();
  for (int n = 1; n <= 16; ++n) {
    const IntervalSet level = refine(K, n);
    for (const auto& gap : gaps_of(level))
      if (gap.lo <= other_hull.lo && other_hull.hi <= gap.hi) return true;
    const Rational gap_len = level_length(K, n - 1) * K.alpha();
    if (gap_len < other_len) break;
  }
  return false;
}

}  // namespace

bool is_linked(const HomogeneousCantorSet& K, const HomogeneousCantorSet& Kp) {
  return !fits_in_some_gap(K, Kp.hull) && !fits_in_some_gap(Kp, K.hull);
}

CriteriaReport criteria_report(const HomogeneousCantorSet& K, const HomogeneousCantorSet& Kp) {
  CriteriaReport r;
  r.hd_sum = hausdorff_sum_enclosure(K, Kp);
  const Thickness tk = thickness(K), tkp = thickness(Kp);
  r.thickness_product = tk.tau() * tkp.tau();
  r.lateral_rl = tk.tau_R * tkp.tau_L;
  r.lateral_lr = tk.tau_L * tkp.tau_R;
  r.linked = is_linked(K, Kp);

  auto from_bounds = [](bool yes, bool no) {
    return yes ? Verdict::Satisfied : (no ? Verdict::NotSatisfied : Verdict::Inconclusive);
  };
  r.criterion_I = from_bounds(r.hd_sum.hi < 1.0, r.hd_sum.lo >= 1.0);
  // a thickness product <= 1 proves nothing, so criterion II never refutes
  r.criterion_II = from_bounds(r.thickness_product > 1 && r.linked, false);
  r.criterion_III = from_bounds(r.hd_sum.lo > 1.0 && r.linked, r.hd_sum.hi <= 1.0 || !r.linked);
  r.moreira_lateral = from_bounds(r.lateral_rl > 1 && r.lateral_lr > 1 && r.linked, false);
  r.omega_member = r.hd_sum.lo > 1.0 && r.thickness_product < 1;
  return r;
}

namespace {

IntervalSet merged_with_cap(std::vector<Interval> pieces, size_t cap) {
  IntervalSet merged = IntervalSet::merge(std::move(pieces));
  if (merged.size() > cap) throw resource_limit("difference scan produced too many components");
  return merged;
}

}  // namespace

IntervalSet difference_scan_reference(const HomogeneousCantorSet& K, const HomogeneousCantorSet& Kp,
                                      const Rational& lambda, int n, size_t merge_cap) {
  if (lambda == 0) throw invalid_parameter("lambda must be nonzero");
  const IntervalSet a = refine(K, n), b = refine(Kp, n, 32, 14);
  std::vector<Interval> pieces;
  pieces.reserve(a.size() * b.size());
  for (const auto& x : a.intervals())
    for (const auto& y : b.intervals()) {
      if (lambda > 0)
        pieces.push_back({x.lo - lambda * y.hi, x.hi - lambda * y.lo});
      else
        pieces.push_back({x.lo - lambda * y.lo, x.hi - lambda * y.hi});
    }
  return merged_with_cap(std::move(pieces), merge_cap);
}

IntervalSet difference_scan(const HomogeneousCantorSet& K, const HomogeneousCantorSet& Kp,
                            const Rational& lambda, int n, size_t merge_cap) {
  if (lambda == 0) throw invalid_parameter("lambda must be nonzero");
  const IntervalSet a = refine(K, n), b = refine(Kp, n, 32, 14);

  // Every pair interval has the same length, so the merge reduces to sorting
  // the 4^n left endpoints over a common denominator.
  Integer den = 1;
  auto fold_den = [&den](const Rational& r) {
    Integer g;
    mpz_lcm(g.get_mpz_t(), den.get_mpz_t(), r.get_den().get_mpz_t());
    den = g;
  };
  for (const auto& iv : a.intervals()) fold_den(iv.lo);
  for (const auto& iv : b.intervals()) {
    fold_den(lambda * iv.lo);
    fold_den(lambda * iv.hi);
  }
  const Rational piece_len = level_length(K, n) + abs_of(lambda) * level_length(Kp, n);
  fold_den(piece_len);

  auto scaled = [&den](const Rational& r) {
    Rational v = r * Rational(den);
    return Integer(v.get_num());  // exact by construction of den
  };

  std::vector<Integer> xs(a.size()), ys(b.size());
  for (size_t i = 0; i < a.size(); ++i) xs[i] = scaled(a[i].lo);
  for (size_t j = 0; j < b.size(); ++j)
    ys[j] = lambda > 0 ? scaled(-lambda * b[j].hi) : scaled(-lambda * b[j].lo);
  const Integer len = scaled(piece_len);

  std::vector<Integer> sums(xs.size() * ys.size());
#pragma omp parallel for collapse(2) schedule(static)
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = 0; j < ys.size(); ++j) sums[i * ys.size() + j] = xs[i] + ys[j];
  std::sort(sums.begin(), sums.end());

  std::vector<Interval> out;
  Integer lo = sums.front(), hi = sums.front() + len;
  for (const auto& s : sums) {
    if (s <= hi) {
      if (s + len > hi) hi = s + len;
    } else {
      out.push_back({Rational(lo) / Rational(den), Rational(hi) / Rational(den)});
      lo = s;
      hi = s + len;
    }
    if (out.size() > merge_cap) throw resource_limit("difference scan produced too many components");
  }
  out.push_back({Rational(lo) / Rational(den), Rational(hi) / Rational(den)});
  return IntervalSet(std::move(out));
}

bool intersect_oracle(const HomogeneousCantorSet& K, const HomogeneousCantorSet& Kp,
                      const Rational& t, int n) {
  const IntervalSet a = refine(K, n);
  const IntervalSet b = refine(Kp, n).translated(t);
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].hi < b[j].lo) ++i;
    else if (b[j].hi < a[i].lo) ++j;
    else return true;
  }
  return false;
}

void AffineCantorSystem::validate() const {
  if (letters.empty() || transitions.empty()) throw invalid_parameter("empty system");
  for (const auto& tr : transitions) {
    if (tr.from < 0 || tr.from >= static_cast<int>(letters.size()) || tr.to < 0 ||
        tr.to >= static_cast<int>(letters.size()))
      throw invalid_parameter("transition letter out of range");
    if (abs_of(tr.slope) <= 1) throw invalid_parameter("branch map not expanding");
    const Rational img_lo = tr.slope * tr.domain.lo + tr.offset;
    const Rational img_hi = tr.slope * tr.domain.hi + tr.offset;
    const Interval& target = letters[tr.to];
    const bool direct = img_lo == target.lo && img_hi == target.hi;
    const bool flipped = img_lo == target.hi && img_hi == target.lo;
    if (!direct && !flipped) throw invalid_parameter("Phi(I(n,m)) != I(m)");
  }
}

IntervalSet AffineCantorSystem::refine(int level) const {
  struct Piece {
    int letter;
    Interval iv;
  };
  std::vector<Piece> cur;
  for (size_t i = 0; i < letters.size(); ++i) cur.push_back({static_cast<int>(i), letters[i]});
  for (int l = 0; l < level; ++l) {
    std::vector<Piece> next;
    for (const auto& pc : cur)
      for (const auto& tr : transitions) {
        if (tr.to != pc.letter) continue;
        // Inverse branch from I(to) into I(from,to).
        const Rational u = (pc.iv.lo - tr.offset) / tr.slope;
        const Rational v = (pc.iv.hi - tr.offset) / tr.slope;
        next.push_back({tr.from, u <= v ? Interval{u, v} : Interval{v, u}});
      }
    cur.swap(next);
    if (cur.size() > (1u << 22)) throw resource_limit("affine refinement too large");
  }
  std::vector<Interval> ivs;
  ivs.reserve(cur.size());
  for (auto& pc : cur) ivs.push_back(pc.iv);
  return IntervalSet::merge(std::move(ivs));
}

Thickness AffineCantorSystem::thickness_estimate(int level) const {
  const IntervalSet set = refine(level);
  if (set.size() < 2) throw invalid_parameter("gapless set, thickness undefined");
  std::vector<Interval> gaps = gaps_of(set);
  std::optional<Rational> tr, tl;
  for (size_t g = 0; g < gaps.size(); ++g) {
    const Rational glen = gaps[g].length();
    if (glen == 0) continue;
    // Bridge to the nearest gap at least as large, on each side.
    Rational right_bridge = set[set.size() - 1].hi - gaps[g].hi;
    for (size_t h = g + 1; h < gaps.size(); ++h)
      if (gaps[h].length() >= glen) {
        right_bridge = gaps[h].lo - gaps[g].hi;
        break;
      }
    Rational left_bridge = gaps[g].lo - set[0].lo;
    for (size_t h = g; h-- > 0;)
      if (gaps[h].length() >= glen) {
        left_bridge = gaps[g].lo - gaps[h].hi;
        break;
      }
    const Rational rr = right_bridge / glen, ll = left_bridge / glen;
    if (!tr || rr < *tr) tr = rr;
    if (!tl || ll < *tl) tl = ll;
  }
  return {*tr, *tl};
}

HomogeneousCantorSet parse_set_spec(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw invalid_parameter(std::string("set spec parse error: ") + e.what());
  }
  if (!j.is_object() || j.value("kind", "") != "middle")
    throw invalid_parameter("set spec must be {\"kind\":\"middle\", ...}");
  if (!j.contains("p")) throw invalid_parameter("set spec missing \"p\"");
  Rational p;
  const auto& pj = j["p"];
  if (pj.is_object() && pj.contains("gamma_exp")) {
    p = gamma_pow(pj["gamma_exp"].get<long>());
  } else if (pj.is_string()) {
    p = rational_from_string(pj.get<std::string>());
  } else if (pj.is_number_integer()) {
    p = Rational(pj.get<long>());
  } else {
    throw invalid_parameter("set spec \"p\" must be a decimal string or {\"gamma_exp\":k}");
  }
  Interval hull{Rational(0), Rational(1)};
  if (j.contains("hull")) {
    const auto& h = j["hull"];
    if (!h.is_array() || h.size() != 2) throw invalid_parameter("hull must be [lo, hi]");
    hull.lo = rational_from_string(h[0].get<std::string>());
    hull.hi = rational_from_string(h[1].get<std::string>());
  }
  return make_middle_cantor(p, hull);
}

}  // namespace cantor
