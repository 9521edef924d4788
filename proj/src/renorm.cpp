#include "cantor/renorm.hpp"

#include <algorithm>

namespace cantor {

Configuration l_map(const AffinePair& h, const AffinePair& hp) {
  if (h.a == 0 || hp.a == 0) throw invalid_parameter("embedding with zero slope");
  return {Rational(hp.a / h.a), Rational((hp.b - h.b) / h.a), "", ""};
}

std::pair<AffinePair, AffinePair> l_inverse(const Configuration& c) {
  if (c.s == 0) throw invalid_parameter("configuration with s = 0");
  return {AffinePair{1, 0}, AffinePair{c.s, c.t}};
}

Configuration ElementaryOperator::apply(const Configuration& c) const {
  Configuration out = c;
  if (side == Side::K) {
    out.s = slope * c.s;
    out.t = slope * c.t + offset;
    out.word_K.push_back(letter ? '1' : '0');
  } else {
    out.s = c.s / slope;
    out.t = c.t - (offset / slope) * c.s;
    out.word_Kp.push_back(letter ? '1' : '0');
  }
  return out;
}

const std::vector<ElementaryOperator>& pair_operators() {
  static const std::vector<ElementaryOperator> ops = [] {
    const auto& pc = pair_constants();
    return std::vector<ElementaryOperator>{
        {ElementaryOperator::Side::K, 0, pc.p, Rational(0)},
        {ElementaryOperator::Side::K, 1, pc.p, Rational(1 - pc.p)},
        {ElementaryOperator::Side::Kp, 0, pc.q, Rational(0)},
        {ElementaryOperator::Side::Kp, 1, pc.q, Rational(1 - pc.q)},
    };
  }();
  return ops;
}

std::vector<ElementaryOperator> transfer_operators(const AffineCantorSystem& sys,
                                                   ElementaryOperator::Side side) {
  sys.validate();
  std::vector<ElementaryOperator> ops;
  int letter = 0;
  for (const auto& tr : sys.transitions)
    ops.push_back({side, letter++, tr.slope, tr.offset});
  return ops;
}

namespace {

void check_bits(const std::vector<int>& w) {
  for (int b : w)
    if (b != 0 && b != 1) throw invalid_parameter("word letters must be 0 or 1");
}

}  // namespace

Configuration compose_k(const std::vector<int>& word, const Configuration& c) {
  if (word.empty()) throw invalid_parameter("empty word");
  check_bits(word);
  const auto& pc = pair_constants();
  // p^m t - (p-1) sum a_k p^(m-1-k), accumulated Horner-style.
  Rational t = c.t, s = c.s;
  Configuration out = c;
  for (int b : word) {
    t = pc.p * t - (pc.p - 1) * b;
    s = pc.p * s;
    out.word_K.push_back(b ? '1' : '0');
  }
  out.s = s;
  out.t = t;
  return out;
}

Configuration compose_kprime(const std::vector<int>& word, const Configuration& c) {
  if (word.empty()) throw invalid_parameter("empty word");
  check_bits(word);
  const auto& pc = pair_constants();
  Rational s = c.s, t = c.t;
  Configuration out = c;
  for (int b : word) {
    s = s / pc.q;
    t = t + (pc.q - 1) / pc.q * b * s * pc.q;  // + ((q-1)/q) b s_old
    out.word_Kp.push_back(b ? '1' : '0');
  }
  // Rewrite of the closed form t + (s/q^n)(q-1) sum b_k q^(n-1-k): each step
  // adds ((q-1)/q) b_k s_k with s_k the scale before the step.
  out.s = s;
  out.t = t;
  return out;
}

Rational ReturnMap::slope() const { return gamma_pow(1240); }

Rational ReturnMap::intercept() const {
  const auto& pc = pair_constants();
  Rational sum_a = 0, sum_b = 0;
  for (int k = 0; k < 31; ++k)
    if (a_bits[k]) sum_a += gamma_pow(40 * (30 - k));
  for (int k = 0; k < 40; ++k)
    if (b_bits[k]) sum_b += gamma_pow(31 * (39 - k));
  return -(pc.p - 1) * sum_a + s * (pc.q - 1) * sum_b;
}

ReturnMap return_map(const std::vector<int>& a_bits, const std::vector<int>& b_bits,
                     const Rational& s) {
  if (a_bits.size() != 31 || b_bits.size() != 40)
    throw invalid_parameter("return map needs 31 K-bits and 40 K'-bits");
  check_bits(a_bits);
  check_bits(b_bits);
  if (s == 0) throw invalid_parameter("s must be nonzero");
  return {a_bits, b_bits, s};
}

Rational s_star(const Rational& s) {
  if (s == 0) throw invalid_parameter("s must be nonzero");
  return pair_constants().kappa * s;
}

namespace {

struct BnbState {
  const std::vector<size_t>& order;
  const std::vector<Rational>& coefs;
  const std::vector<Rational>& pos_suffix;
  const std::vector<Rational>& neg_suffix;
  const IntervalSet& target;
  std::vector<int>& bits;
};

bool bnb_dfs(BnbState& st, size_t idx, const Rational& cur) {
  const Rational reach_lo = cur + st.neg_suffix[idx];
  const Rational reach_hi = cur + st.pos_suffix[idx];
  bool reachable = false;
  for (const auto& comp : st.target.intervals())
    if (comp.lo < reach_hi && reach_lo < comp.hi) {
      reachable = true;
      break;
    }
  if (!reachable) return false;
  if (idx == st.order.size()) {
    for (const auto& comp : st.target.intervals())
      if (comp.contains_strict(cur)) return true;
    return false;
  }
  const size_t which = st.order[idx];
  st.bits[which] = 0;
  if (bnb_dfs(st, idx + 1, cur)) return true;
  st.bits[which] = 1;
  if (bnb_dfs(st, idx + 1, cur + st.coefs[which])) return true;
  st.bits[which] = 0;
  return false;
}

}  // namespace

std::optional<std::vector<int>> choose_bits(const Rational& base,
                                            const std::vector<Rational>& coefs,
                                            const IntervalSet& target) {
  if (target.empty()) throw invalid_parameter("empty search target");
  std::vector<size_t> order(coefs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&coefs](size_t a, size_t b) {
    return abs_of(coefs[a]) > abs_of(coefs[b]);
  });
  std::vector<Rational> pos_suffix(coefs.size() + 1, Rational(0));
  std::vector<Rational> neg_suffix(coefs.size() + 1, Rational(0));
  for (size_t i = coefs.size(); i-- > 0;) {
    const Rational& c = coefs[order[i]];
    pos_suffix[i] = pos_suffix[i + 1] + (c > 0 ? c : Rational(0));
    neg_suffix[i] = neg_suffix[i + 1] + (c < 0 ? c : Rational(0));
  }
  std::vector<int> bits(coefs.size(), 0);
  BnbState st{order, coefs, pos_suffix, neg_suffix, target, bits};
  if (!bnb_dfs(st, 0, base)) return std::nullopt;
  return bits;
}

std::optional<SteerResult> steer(const Configuration& c, const IntervalSet& target,
                                 int max_cycles) {
  if (target.empty()) throw invalid_parameter("empty steering target");
  const auto& pc = pair_constants();
  for (const auto& comp : target.intervals())
    if (comp.contains_strict(c.t)) return SteerResult{"", "", c.t, 0};

  for (int cycles = 1; cycles <= max_cycles; ++cycles) {
    // One cycle: 31 K-bits then 40 K'-bits; earlier cycles get lifted by the
    // return-map slope once per later cycle.
    std::vector<Rational> coefs;
    for (int r = 0; r < cycles; ++r) {
      const Rational lift = gamma_pow(1240 * (cycles - 1 - r));
      for (int k = 0; k < 31; ++k)
        coefs.push_back(-(pc.p - 1) * gamma_pow(40 * (30 - k)) * lift);
      for (int k = 0; k < 40; ++k)
        coefs.push_back(c.s * (pc.q - 1) * gamma_pow(31 * (39 - k)) * lift);
    }
    const Rational base = gamma_pow(1240 * cycles) * c.t;
    if (auto bits = choose_bits(base, coefs, target)) {
      SteerResult res;
      res.cycles = cycles;
      Rational t = base;
      for (size_t i = 0; i < bits->size(); ++i)
        if ((*bits)[i]) t += coefs[i];
      for (int r = 0; r < cycles; ++r) {
        for (int k = 0; k < 31; ++k) res.word_K.push_back((*bits)[71 * r + k] ? '1' : '0');
        for (int k = 0; k < 40; ++k) res.word_Kp.push_back((*bits)[71 * r + 31 + k] ? '1' : '0');
      }
      res.t_final = t;
      return res;
    }
  }
  return std::nullopt;
}

}  // namespace cantor
