#include "heatsos/rational.hpp"

#include <cmath>
#include <regex>

namespace heatsos {

Rational parse_rational(std::string_view text) {
  static const std::regex pattern(R"(^\s*([+-]?[0-9]+)(?:\s*/\s*([0-9]+))?\s*$)");
  std::string s(text);
  std::smatch match;
  if (!std::regex_match(s, match, pattern)) {
    throw StructuralError("malformed rational literal: '" + s + "'");
  }
  std::string num = match[1].str();
  if (!num.empty() && num.front() == '+') num.erase(0, 1);
  Integer numerator(num, 10);
  Integer denominator(1);
  if (match[2].matched) {
    denominator = Integer(match[2].str(), 10);
    if (denominator == 0) throw StructuralError("zero denominator in '" + s + "'");
  }
  Rational value(numerator, denominator);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational rationalize(double value, long max_denominator) {
  if (!std::isfinite(value)) throw DomainError("cannot rationalize a non-finite value");
  if (max_denominator < 1) throw DomainError("max_denominator must be positive");
  // Work on the exact binary value of the double so the expansion is exact.
  Rational target(value);
  bool negative = target < 0;
  if (negative) target = -target;

  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rest = target;
  const Integer bound(max_denominator);
  while (true) {
    Integer a = rest.get_num() / rest.get_den();
    Integer q2 = a * q1 + q0;
    if (q2 > bound) {
      // Best semiconvergent that still fits the bound.
      Integer k = (bound - q0) / q1;
      Rational semi(k * p1 + p0, k * q1 + q0);
      semi.canonicalize();
      Rational conv(p1, q1);
      conv.canonicalize();
      Rational result = abs(semi - target) < abs(conv - target) ? semi : conv;
      return negative ? Rational(-result) : result;
    }
    Integer p2 = a * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rational frac = rest - Rational(a);
    if (frac == 0) break;
    rest = 1 / frac;
  }
  Rational result(p1, q1);
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

Integer factorial(unsigned n) {
  Integer result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

Integer binomial(unsigned n, unsigned k) {
  Integer result;
  mpz_bin_uiui(result.get_mpz_t(), n, k);
  return result;
}

Integer double_factorial_odd(unsigned j) {
  if (j == 0) return 1;
  Integer result;
  mpz_2fac_ui(result.get_mpz_t(), 2 * j - 1);
  return result;
}

}  // namespace heatsos
