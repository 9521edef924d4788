#include "cantor/rational.hpp"

#include <cctype>

namespace cantor {

Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw invalid_parameter("empty rational literal");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational r;
    if (r.set_str(text, 10) != 0)
      throw invalid_parameter("bad fraction literal: " + text);
    if (r.get_den() == 0) throw invalid_parameter("zero denominator: " + text);
    r.canonicalize();
    return r;
  }
  std::string digits;
  digits.reserve(text.size());
  bool negative = false;
  long frac_digits = -1;
  size_t i = 0;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  bool any = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.') {
      if (frac_digits >= 0) throw invalid_parameter("bad decimal literal: " + text);
      frac_digits = 0;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (frac_digits >= 0) ++frac_digits;
      any = true;
    } else {
      throw invalid_parameter("bad decimal literal: " + text);
    }
  }
  if (!any) throw invalid_parameter("bad decimal literal: " + text);
  Integer num(digits.empty() ? "0" : digits, 10);
  Integer den = 1;
  if (frac_digits > 0) {
    Integer ten = 10;
    mpz_pow_ui(den.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(frac_digits));
  }
  Rational r(num, den);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

namespace {

// Digits of |value| scaled by 10^digits, plus the discarded remainder for
// rounding decisions.
void scaled_parts(const Rational& value, int digits, Integer& quot, Integer& rem, Integer& den) {
  Integer ten = 10;
  Integer scale;
  mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(digits));
  Integer num = abs_of(value).get_num() * scale;
  den = abs_of(value).get_den();
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
}

std::string assemble(const Integer& scaled, int digits, bool negative) {
  std::string s = scaled.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out;
  if (negative) out.push_back('-');
  out += s.substr(0, s.size() - digits);
  if (digits > 0) {
    out.push_back('.');
    out += s.substr(s.size() - digits);
  }
  return out;
}

}  // namespace

std::string to_decimal(const Rational& value, int digits, bool round_half_even) {
  if (digits < 0) throw invalid_parameter("negative digit count");
  Integer quot, rem, den;
  scaled_parts(value, digits, quot, rem, den);
  if (round_half_even) {
    const Integer twice = rem * 2;
    if (twice > den || (twice == den && mpz_odd_p(quot.get_mpz_t()))) quot += 1;
  }
  if (value == 0) return assemble(quot, digits, false);
  return assemble(quot, digits, value < 0);
}

std::string truncate_decimal(const Rational& value, int digits) {
  return to_decimal(value, digits, false);
}

bool matches_printed(const Rational& value, const std::string& printed) {
  std::string wanted = printed;
  // Normalize unicode minus and trailing ellipsis dots.
  while (!wanted.empty() && wanted.back() == '.') wanted.pop_back();
  const auto dot = wanted.find('.');
  const int digits = dot == std::string::npos ? 0 : static_cast<int>(wanted.size() - dot - 1);
  return truncate_decimal(value, digits) == wanted || to_decimal(value, digits) == wanted;
}

}  // namespace cantor
