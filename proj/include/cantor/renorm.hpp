#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cantor/cantor_set.hpp"
#include "cantor/gamma.hpp"
#include "cantor/interval_set.hpp"
#include "cantor/rational.hpp"

namespace cantor {

// Affine embedding x -> a*x + b of a Cantor set into the line.
struct AffinePair {
  Rational a = 1, b = 0;
};

// Relative configuration of two embedded sets: scale s = a'/a, offset
// t = (b'-b)/a, plus the letters of the operators applied so far.
struct Configuration {
  Rational s = 1, t = 0;
  std::string word_K, word_Kp;  // '0'/'1', most recent last
};

Configuration l_map(const AffinePair& h, const AffinePair& hp);
std::pair<AffinePair, AffinePair> l_inverse(const Configuration& c);

// Renormalization by one expanding branch, transferred to (s,t) coordinates.
// K side (branch x -> p x + c):   (s,t) -> (p s, p t + c)
// K' side (branch x -> p'x + c'): (s,t) -> (s/p', t - (c'/p') s)
struct ElementaryOperator {
  enum class Side { K, Kp };
  Side side;
  int letter;              // 0 or 1
  Rational slope, offset;  // branch coefficients

  Configuration apply(const Configuration& c) const;
};

// The four operators of the homogeneous pair: branches px, px-p+1 and
// qx, qx-q+1.
const std::vector<ElementaryOperator>& pair_operators();  // T0, T1, T'0, T'1

// Operators transferred from a general Markov system (one per transition).
std::vector<ElementaryOperator> transfer_operators(const AffineCantorSystem& sys,
                                                   ElementaryOperator::Side side);

// Closed forms of iterated K-side / K'-side words for the homogeneous pair:
//   K words:  (p^m s, p^m t - (p-1) sum a_k p^(m-1-k))
//   K' words: (s/q^n, t + (s/q^n)(q-1) sum b_k q^(n-1-k))
Configuration compose_k(const std::vector<int>& word, const Configuration& c);
Configuration compose_kprime(const std::vector<int>& word, const Configuration& c);

// One full return cycle: 31 K-letters then 40 K'-letters.  The scale comes
// back (p^31 = q^40) and t maps through an affine map with slope p^31.
struct ReturnMap {
  std::vector<int> a_bits;  // length 31
  std::vector<int> b_bits;  // length 40
  Rational s;

  Rational slope() const;      // p^31 = gamma^1240
  Rational intercept() const;  // a_s
  Rational operator()(const Rational& t) const { return slope() * t + intercept(); }
};

ReturnMap return_map(const std::vector<int>& a_bits, const std::vector<int>& b_bits,
                     const Rational& s);

// s* = (p(q-1)/(q(p-1))) s; the natural parameter of the interval families.
Rational s_star(const Rational& s);

// Search for a word of complete return cycles sending t strictly inside the
// target (a union of intervals on the fixed vertical line s).  Depth-first
// branch-and-bound over the cycle bits, largest coefficient first, bit 0
// preferred; deterministic.
struct SteerResult {
  std::string word_K, word_Kp;
  Rational t_final;
  int cycles = 0;
};

std::optional<SteerResult> steer(const Configuration& c, const IntervalSet& target,
                                 int max_cycles);

// Branch-and-bound core used by steer and the lattice moves: find bits with
// base + sum coef_i * bit_i strictly inside some target component.  Largest
// |coefficient| decided first, bit 0 preferred; deterministic; nullopt when
// no assignment lands inside.
std::optional<std::vector<int>> choose_bits(const Rational& base,
                                            const std::vector<Rational>& coefs,
                                            const IntervalSet& target);

}  // namespace cantor
