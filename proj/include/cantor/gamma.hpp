#pragma once

#include <compare>

#include "cantor/rational.hpp"

namespace cantor {

// Exact power of gamma = 10321/10000.  Every constant in the certified
// construction is a rational function of these, so keeping the exponent
// symbolic makes resonance identities (p^31 = q^40) trivially exact.
struct GammaPower {
  long exponent = 0;

  GammaPower() = default;
  explicit GammaPower(long e) : exponent(e) {}

  GammaPower operator*(GammaPower o) const { return GammaPower(exponent + o.exponent); }
  GammaPower operator/(GammaPower o) const { return GammaPower(exponent - o.exponent); }
  GammaPower inverse() const { return GammaPower(-exponent); }
  auto operator<=>(const GammaPower&) const = default;

  // Exact rational value gamma^exponent.
  Rational value() const;
};

// gamma^e, memoized; thread safe.
const Rational& gamma_pow(long e);

// p^i / q^j as a gamma power: exponent 40*i - 31*j.
GammaPower gamma_lattice(long i, long j);

// min |40*i - 31*j| over the rectangle [imin,imax] x [jmin,jmax].
long min_abs_lattice_exponent(long imin, long imax, long jmin, long jmax);

// Constants of the resonant pair, all exact.
struct PairConstants {
  Rational gamma;   // 10321/10000
  Rational p;       // gamma^40
  Rational q;       // gamma^31
  Rational kappa;   // p(q-1)/(q(p-1)); s* = kappa * s
  Rational s1, s2;  // core scale window of the three-interval sweep
  Rational s_lo;    // gamma^-1 * s2, left edge of Delta
  Rational s_hi;    // gamma * s1, right edge of Delta
  Rational delta1, delta2;  // kappa*s1, kappa*s2
  Rational margin;          // (1-1/q)/q^39, the Delta t-margin per unit s
};

const PairConstants& pair_constants();

}  // namespace cantor
