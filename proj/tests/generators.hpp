#pragma once

// Hand-rolled random generators for property tests. Seeds are fixed so that
// failures reproduce.

#include <random>
#include <vector>

#include "heatsos/polynomial.hpp"

namespace heatsos::testing {

/// n/d in canonical form (the two-argument mpq constructor does not reduce).
inline Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  Rational rational(int max_num = 9, int max_den = 7) {
    return frac(integer(-max_num, max_num), integer(1, max_den));
  }
  Rational positive_rational(int max_num = 9, int max_den = 7) {
    return frac(integer(1, max_num), integer(1, max_den));
  }

  /// Random polynomial in `n` variables with up to `terms` terms of degree
  /// <= max_degree. Never zero.
  Polynomial polynomial(std::size_t n, unsigned max_degree, int terms = 6) {
    Polynomial p(default_variable_names(n));
    while (p.is_zero()) {
      for (int k = 0; k < terms; ++k) {
        const unsigned total = unsigned(integer(0, int(max_degree)));
        Monomial m(n);
        for (unsigned d = 0; d < total; ++d) ++m[std::size_t(integer(0, int(n) - 1))];
        p.add_term(m, rational());
      }
    }
    return p;
  }

  /// Polynomial with n <= 3 variables and degree <= 8, the property range.
  Polynomial small_polynomial() {
    return polynomial(std::size_t(integer(1, 3)), unsigned(integer(0, 8)), integer(1, 7));
  }

  std::vector<Rational> point(std::size_t n) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(rational());
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline Polynomial var(const std::vector<std::string>& names, std::size_t i) {
  return Polynomial::variable(names, i);
}

inline Polynomial constant(const std::vector<std::string>& names, const Rational& c) {
  return Polynomial::constant(names, c);
}

}  // namespace heatsos::testing
