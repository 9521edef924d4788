// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>

#include "cantor/cantor_set.hpp"
#include "cantor/region.hpp"
#include "cantor/renorm.hpp"
#include "cantor/verify.hpp"

using namespace cantor;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int n, bool ok, const std::string& what, double seconds) {
  if (!ok) ++g_failures;
  std::printf("%s criterion %2d: %s  [%.1f s]\n", ok ? "PASS" : "FAIL", n, what.c_str(),
              seconds);
  std::fflush(stdout);
}

template <typename F>
void criterion(int n, const std::string& what, F f) {
  const auto start = Clock::now();
  bool ok = false;
  std::string detail;
  try {
    ok = f(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  report(n, ok, what + (detail.empty() ? "" : " -- " + detail), secs);
}

Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Rational pow_rational(const Rational& base, int e) {
  Rational r = 1;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

std::vector<int> random_bits(std::mt19937_64& rng, int n) {
  std::vector<int> bits(n);
  for (int& b : bits) b = static_cast<int>(rng() & 1);
  return bits;
}

bool c1_constants(std::string& detail) {
  const auto table = constants_table();
  // Three printed decimals are demonstrable digit slips in the source; they
  // carry explanatory notes and their corrected digits are asserted here.
  const std::set<std::string> slips{"gamma-inv-s2", "delta1", "a85-a14-hi"};
  int matched = 0, noted = 0;
  bool ok = table.size() >= 30;
  for (const auto& row : table) {
    if (row.match) ++matched;
    if (!row.note.empty()) ++noted;
    ok = ok && (row.match || (!row.note.empty() && slips.count(row.id)));
    if (row.id == "gamma-inv-s2") ok = ok && truncate_decimal(row.value, 7) == "1.1220162";
    if (row.id == "delta1") ok = ok && truncate_decimal(row.value, 9) == "0.987915117";
    if (row.id == "a85-a14-hi") {
      ok = ok && truncate_decimal(row.value, 9) == "0.438403982";
      ok = ok && row.value - rational_from_string("0.438403979") < Rational(1, 100000000);
    }
  }
  detail = std::to_string(matched) + "/" + std::to_string(table.size()) +
           " printed decimals reproduced; 3 documented digit slips "
           "(1.1220161->1.1220162, 0.987915116->0.987915117, 0.438403979->0.438403982)";
  return ok;
}

bool c2_identities(std::string& detail) {
  const auto& pc = pair_constants();
  const struct {
    int i, j;
    long e;
  } rows[] = {{31, 40, 0}, {7, 9, 1}, {24, 31, -1}, {27, 34, 26},
              {27, 35, -5}, {26, 33, 17}, {26, 34, -14}};
  bool ok = true;
  for (const auto& r : rows) {
    ok = ok && gamma_lattice(r.i, r.j).exponent == r.e;
    // independent multiply-out, no shared exponent arithmetic
    ok = ok && pow_rational(pc.p, r.i) == pow_rational(pc.q, r.j) * gamma_pow(r.e);
  }
  ok = ok && min_abs_lattice_exponent(1, 25, 1, 37) == 1;
  ok = ok && min_abs_lattice_exponent(1, 30, 1, 39) == 1;
  detail = "7 lattice identities and the minimal exponent, exact";
  return ok;
}

bool c3_ordering(std::string& detail) {
  const auto& pc = pair_constants();
  detail = "gamma^-1 s2 < s1 < s2 < gamma s1, strict";
  return pc.s_lo < pc.s1 && pc.s1 < pc.s2 && pc.s2 < pc.s_hi &&
         pc.s_lo == pc.s2 / pc.gamma && pc.s_hi == pc.s1 * pc.gamma;
}

bool c4_return_map(std::string& detail) {
  std::mt19937_64 rng(1009);
  std::uniform_int_distribution<int> num(-2000, 2000);
  const auto& ops = pair_operators();
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a_bits = random_bits(rng, 31);
    const auto b_bits = random_bits(rng, 40);
    const Configuration c{frac(std::abs(num(rng)) + 500, 1000), frac(num(rng), 1000),
                          "", ""};
    Configuration stepped = c;
    for (int b : a_bits) stepped = ops[b].apply(stepped);
    for (int b : b_bits) stepped = ops[2 + b].apply(stepped);
    const Configuration closed = compose_kprime(b_bits, compose_k(a_bits, c));
    const ReturnMap rm = return_map(a_bits, b_bits, c.s);
    if (closed.s != stepped.s || closed.t != stepped.t || stepped.s != c.s ||
        rm(c.t) != stepped.t) {
      detail = "mismatch at trial " + std::to_string(trial);
      return false;
    }
  }
  detail = "1000 random words, closed form == 71 elementary steps, exact";
  return true;
}

bool c5_duality(std::string& detail) {
  std::mt19937_64 rng(2003);
  const auto& pc = pair_constants();
  const Rational P = gamma_pow(1240);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a_bits = random_bits(rng, 31);
    const auto b_bits = random_bits(rng, 40);
    const Square sq = make_square("T", a_bits, b_bits);
    for (int k = 1; k <= 10; ++k) {
      const Rational s = pc.s_lo + (pc.s_hi - pc.s_lo) * k / 11;
      const ReturnMap rm = return_map(a_bits, b_bits, s);
      const Interval pr = project(sq, s);
      if (rm.intercept() != -P * (sq.x0 - s * sq.y0) || rm(pr.lo) != -s || rm(pr.hi) != 1) {
        detail = "mismatch at trial " + std::to_string(trial);
        return false;
      }
    }
  }
  detail = "100 squares x 10 scales, exact";
  return true;
}

bool c6_lemma1(std::string& detail) {
  const auto t0 = Clock::now();
  const Certificate sample = verify_lemma1(VerifyMode::Sample, 1024);
  const double t_sample = std::chrono::duration<double>(Clock::now() - t0).count();
  const auto t1 = Clock::now();
  const Certificate rig = verify_lemma1(VerifyMode::Rigorous, 1024);
  const double t_rig = std::chrono::duration<double>(Clock::now() - t1).count();
  char buf[160];
  std::snprintf(buf, sizeof buf, "sample 1024 in %.1f s, rigorous in %.1f s", t_sample, t_rig);
  detail = buf;
  return sample.all_pass() && rig.all_pass() && t_sample < 120 && t_rig < 1200;
}

bool c7_theorem2(std::string& detail) {
  const Certificate cert = verify_theorem2(VerifyMode::Sample, 1024);
  bool boundary = false;
  for (const auto& e : cert.entries())
    if (e.id.rfind("theorem2/boundary-move", 0) == 0 && e.pass) boundary = true;
  detail = std::to_string(cert.entries().size()) + " entries, boundary lattice moves included";
  return cert.all_pass() && boundary && cert.entries().size() >= 200;
}

bool c8_oracle(std::string& detail) {
  const OracleReport rep = oracle_recurrence(50, 50, 3);
  // determinism spot check: steering twice gives identical words
  const auto& pc = pair_constants();
  bool det = true;
  for (int k = 1; k <= 3; ++k) {
    const Rational s = pc.s_lo + (pc.s_hi - pc.s_lo) * k / 4;
    const IntervalSet target = region_L().section(s);
    const Configuration c{s, Rational(k, 5), "", ""};
    const auto r1 = steer(c, target, 3), r2 = steer(c, target, 3);
    det = det && r1 && r2 && r1->word_K == r2->word_K && r1->word_Kp == r2->word_Kp;
  }
  detail = std::to_string(rep.steered) + "/" + std::to_string(rep.total) +
           " steered, max cycles " + std::to_string(rep.max_cycles_used);
  return rep.total == 2500 && rep.steered == rep.total && rep.max_cycles_used <= 3 && det;
}

bool c9_difference(std::string& detail) {
  const auto& pc = pair_constants();
  const auto K = make_middle_cantor(pc.p);
  const auto Kp = make_middle_cantor(pc.q);
  const std::vector<Rational> lambdas{1, Rational(1, 2), 2, -1, gamma_pow(5)};
  for (const auto& lambda : lambdas) {
    IntervalSet prev;
    for (int n = 4; n <= 10; ++n) {
      const IntervalSet d = difference_scan(K, Kp, lambda, n);
      if (d.largest_component_length() < 1 / pow_rational(pc.p, 8)) {
        detail = "no long component at level " + std::to_string(n);
        return false;
      }
      if (n > 4 && !d.subset_of(prev)) {
        detail = "levels fail to nest at " + std::to_string(n);
        return false;
      }
      prev = d;
    }
  }
  detail = "5 factors, levels 4..10 nested with a component >= p^-8 throughout";
  return true;
}

bool c10_criteria(std::string& detail) {
  const auto ternary = make_middle_cantor(3);
  const auto half = make_middle_cantor(Rational(5, 2));
  const auto thin = make_middle_cantor(8);
  const auto& pc = pair_constants();
  const auto rep_tt = criteria_report(ternary, ternary);
  const auto rep_hh = criteria_report(half, half);
  const auto rep_thin = criteria_report(thin, thin);
  const auto rep = criteria_report(make_middle_cantor(pc.p), make_middle_cantor(pc.q));
  detail = "boundary, Newhouse, dimension and mysterious-region cases";
  return rep_tt.thickness_product == 1 && rep_tt.criterion_II == Verdict::Inconclusive &&
         rep_hh.thickness_product == 4 && rep_hh.criterion_II == Verdict::Satisfied &&
         rep_thin.hd_sum.hi < 1 && rep_thin.criterion_I == Verdict::Satisfied &&
         rep.omega_member && rep.thickness_product < 1 && rep.hd_sum.lo > 1;
}

}  // namespace

int main() {
  criterion(1, "printed constants regenerated from exact rationals", c1_constants);
  criterion(2, "resonance and lattice identities", c2_identities);
  criterion(3, "scale-window ordering", c3_ordering);
  criterion(4, "return map closed form vs elementary composition", c4_return_map);
  criterion(5, "projection duality", c5_duality);
  criterion(6, "three-interval recurrence, sample and rigorous", c6_lemma1);
  criterion(7, "full recurrence certificate", c7_theorem2);
  criterion(8, "steering oracle on the 50x50 grid", c8_oracle);
  criterion(9, "arithmetic difference contains long components", c9_difference);
  criterion(10, "classical intersection criteria", c10_criteria);
  std::printf("%s: %d/10 criteria passed\n", g_failures == 0 ? "ACCEPTED" : "REJECTED",
              10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
