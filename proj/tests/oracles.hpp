#pragma once

// Reference computations written independently of the library code paths
// they check.

#include <vector>

#include "heatsos/kernels.hpp"
#include "heatsos/polynomial.hpp"

namespace heatsos::testing {

/// exp(t * Laplacian) f as the terminating series sum_k t^k Lap^k f / k!.
inline Polynomial heat_series(const Polynomial& f, const Rational& t) {
  Polynomial out(f.variables());
  Polynomial term = f;
  Rational factor = 1;
  for (unsigned k = 0; !term.is_zero(); ++k) {
    out = out + term * factor;
    term = laplacian(term);
    factor = factor * t / Rational(k + 1);
  }
  return out;
}

/// 1-D heat solution coefficient of t^j x^(k-2j) by repeated
/// differentiation: Lap^j x^k / j!.
inline Integer heat_basis_coefficient(unsigned k, unsigned j) {
  Integer c = 1;
  for (unsigned i = 0; i < 2 * j; ++i) c *= (k - i);
  Integer jf = 1;
  for (unsigned i = 2; i <= j; ++i) jf *= i;
  return c / jf;
}

inline kernels::DensePolynomial densify(const Polynomial& p) {
  kernels::DensePolynomial d;
  d.variables = p.variable_count();
  for (const auto& [m, c] : p.terms()) {
    d.coefficients.push_back(to_double(c));
    for (unsigned e : m.exponents()) d.exponents.push_back(e);
  }
  return d;
}

/// int_a^b x^k (c0 + c1 x)^p dx in exact arithmetic via an antiderivative.
inline Rational integrate_linear_power(unsigned k, unsigned p, const Rational& c0, const Rational& c1,
                                       const Rational& a, const Rational& b) {
  // Expand (c0 + c1 x)^p x^k and integrate monomials.
  std::vector<Rational> coeff(p + 1);
  for (unsigned i = 0; i <= p; ++i) {
    Integer binom = 1;
    for (unsigned j = 0; j < i; ++j) binom = binom * (p - j) / (j + 1);
    Rational c = Rational(binom);
    for (unsigned j = 0; j < p - i; ++j) c *= c0;
    for (unsigned j = 0; j < i; ++j) c *= c1;
    coeff[i] = c;
  }
  Rational out = 0;
  for (unsigned i = 0; i <= p; ++i) {
    const unsigned e = i + k + 1;
    Rational ab = 1, aa = 1;
    for (unsigned j = 0; j < e; ++j) {
      ab *= b;
      aa *= a;
    }
    out += coeff[i] * (ab - aa) / Rational(e);
  }
  return out;
}

}  // namespace heatsos::testing
