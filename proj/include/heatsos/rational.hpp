#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace heatsos {

/// Exact rational scalar. GMP keeps it canonical (gcd 1, positive denominator)
/// after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Raised when operands have incompatible shapes (variable counts, lengths).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input lies outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parses "17", "-3", "1/6" or "-2/15". Throws StructuralError otherwise.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

/// Best rational approximation with denominator <= max_denominator
/// (continued-fraction convergents and semiconvergents).
Rational rationalize(double value, long max_denominator);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);
/// (2j-1)!!, with (-1)!! = 1.
Integer double_factorial_odd(unsigned j);

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational factor = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= factor;
    exponent >>= 1U;
    if (exponent > 0) factor *= factor;
  }
  return result;
}

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace heatsos
