#include "cantor/gamma.hpp"

#include <cstdlib>
#include <mutex>
#include <unordered_map>

namespace cantor {

namespace {

std::mutex pow_mutex;
std::unordered_map<long, Rational> pow_cache;

Rational compute_gamma_pow(long e) {
  Rational g(10321, 10000);
  const unsigned long n = static_cast<unsigned long>(std::labs(e));
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), g.get_num().get_mpz_t(), n);
  mpz_pow_ui(den.get_mpz_t(), g.get_den().get_mpz_t(), n);
  Rational r = e >= 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

}  // namespace

const Rational& gamma_pow(long e) {
  std::lock_guard<std::mutex> lock(pow_mutex);
  auto it = pow_cache.find(e);
  if (it == pow_cache.end()) it = pow_cache.emplace(e, compute_gamma_pow(e)).first;
  return it->second;
}

Rational GammaPower::value() const { return gamma_pow(exponent); }

GammaPower gamma_lattice(long i, long j) { return GammaPower(40 * i - 31 * j); }

long min_abs_lattice_exponent(long imin, long imax, long jmin, long jmax) {
  long best = -1;
  for (long i = imin; i <= imax; ++i)
    for (long j = jmin; j <= jmax; ++j) {
      const long e = std::labs(40 * i - 31 * j);
      if (best < 0 || e < best) best = e;
    }
  return best;
}

const PairConstants& pair_constants() {
  static const PairConstants c = [] {
    PairConstants k;
    k.gamma = gamma_pow(1);
    k.p = gamma_pow(40);
    k.q = gamma_pow(31);
    k.kappa = k.p * (k.q - 1) / (k.q * (k.p - 1));
    const Rational inv_q39 = gamma_pow(-31 * 39);
    k.margin = (1 - 1 / k.q) * inv_q39;
    k.s1 = (1 / k.p) / (1 - 2 / k.q + 2 * k.margin);
    k.s2 = (1 - 2 / k.p) / (1 / k.q - 2 * k.margin);
    k.s_lo = k.s2 / k.gamma;
    k.s_hi = k.s1 * k.gamma;
    k.delta1 = k.kappa * k.s1;
    k.delta2 = k.kappa * k.s2;
    return k;
  }();
  return c;
}

}  // namespace cantor
