#include <doctest.h>

#include <cstdlib>

#include "cantor/gamma.hpp"

using namespace cantor;

namespace {

// Independent oracle: gamma^e from integer powers of 10321 and 10000.
Rational gamma_direct(long e) {
  Integer num = 1, den = 1, b1 = 10321, b2 = 10000;
  const unsigned long a = static_cast<unsigned long>(std::labs(e));
  mpz_pow_ui(num.get_mpz_t(), b1.get_mpz_t(), a);
  mpz_pow_ui(den.get_mpz_t(), b2.get_mpz_t(), a);
  Rational r(num, den);
  r.canonicalize();
  return e >= 0 ? r : Rational(1 / r);
}

}  // namespace

TEST_CASE("memoized powers against direct integer powers") {
  for (long e : {0L, 1L, -1L, 31L, 40L, -31L, 124L, 1240L, -1240L})
    CHECK(gamma_pow(e) == gamma_direct(e));
  CHECK(gamma_pow(40) * gamma_pow(-31) == gamma_pow(9));
  CHECK(GammaPower(7).value() == gamma_direct(7));
  CHECK((GammaPower(40) / GammaPower(31)).exponent == 9);
}

TEST_CASE("lattice exponents and resonance") {
  CHECK(gamma_lattice(31, 40).exponent == 0);
  CHECK(gamma_lattice(7, 9).exponent == 1);
  CHECK(gamma_lattice(24, 31).exponent == -1);
  const auto& pc = pair_constants();
  CHECK(pc.p == gamma_pow(40));
  CHECK(pc.q == gamma_pow(31));
  // p^31 = q^40 as raw integers, no shared code path
  Integer lhs_n, rhs_n;
  mpz_pow_ui(lhs_n.get_mpz_t(), pc.p.get_num().get_mpz_t(), 31);
  mpz_pow_ui(rhs_n.get_mpz_t(), pc.q.get_num().get_mpz_t(), 40);
  Integer lhs_d, rhs_d;
  mpz_pow_ui(lhs_d.get_mpz_t(), pc.p.get_den().get_mpz_t(), 31);
  mpz_pow_ui(rhs_d.get_mpz_t(), pc.q.get_den().get_mpz_t(), 40);
  CHECK(lhs_n * rhs_d == rhs_n * lhs_d);
}

TEST_CASE("minimal lattice exponent by brute force") {
  long best = 1L << 40;
  for (long i = 1; i <= 25; ++i)
    for (long j = 1; j <= 37; ++j) {
      const long e = std::labs(40 * i - 31 * j);
      if (e < best) best = e;
    }
  CHECK(min_abs_lattice_exponent(1, 25, 1, 37) == best);
  CHECK(best == 1);
  CHECK(min_abs_lattice_exponent(1, 5, 1, 5) == 4);  // 40*3 - 31*4
}

TEST_CASE("pair constants from their defining formulas") {
  const auto& pc = pair_constants();
  const Rational p = pc.p, q = pc.q;
  CHECK(pc.kappa == p * (q - 1) / (q * (p - 1)));
  CHECK(pc.margin == (1 - 1 / q) / gamma_pow(31 * 39));
  CHECK(pc.s1 == (1 / p) / (1 - 2 / q + 2 * pc.margin));
  CHECK(pc.s2 == (1 - 2 / p) / (1 / q - 2 * pc.margin));
  CHECK(pc.delta1 == pc.kappa * pc.s1);
  CHECK(pc.delta2 == pc.kappa * pc.s2);
  CHECK(pc.s_lo == pc.s2 / pc.gamma);
  CHECK(pc.s_hi == pc.s1 * pc.gamma);
  // ordering of the scale window, strict
  CHECK(pc.s_lo < pc.s1);
  CHECK(pc.s1 < pc.s2);
  CHECK(pc.s2 < pc.s_hi);
  CHECK(pc.delta1 < 1);
  CHECK(1 < pc.delta2);
}
