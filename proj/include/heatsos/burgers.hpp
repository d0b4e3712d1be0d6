#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "heatsos/polynomial.hpp"

namespace heatsos {

/// Initial moments s_{k,p}(0) = int x^k f_0(x)^p dx keyed by (k, p).
struct BurgersMomentTable {
  int max_k = 0;
  int max_p = 0;
  std::map<std::pair<int, int>, Rational> initial;
};

/// s_{k,p}(t) = sum_{i=0}^{k} s_{k-i,p+i}(0) t^i / i!
///              * prod_{j=0}^{i-1} (p+j)(k-j) / (1 + (p+j)^2)
/// as a polynomial in the single variable "t". Throws DomainError listing
/// the missing (k, p) entries.
Polynomial burgers_moment(const BurgersMomentTable& table, int k, int p);

/// Moments of the tent f_0 = 1 - |x| on [-1, 1], computed exactly by
/// expanding (1 -+ x)^p on each half. Covers every entry that
/// burgers_moment(k, p) needs for k <= max_k, p <= max_p. For p = 0 the
/// integral is taken over the support [-1, 1].
BurgersMomentTable one_tooth_initial_moments(int max_k, int max_p);

/// a + b * sqrt(d), d a positive squarefree integer (d = 1 means rational).
struct QuadraticSurd {
  Rational a;
  Rational b;
  Integer d = 1;

  double value() const;
  /// The square when it is rational (a == 0 or b == 0).
  std::optional<Rational> rational_square() const;
};

std::string to_string(const QuadraticSurd& x);

struct ViolationWitness {
  /// q(t) = s_{2,1}(t) - 2t s_{1,1}(t) + t^2 s_{0,1}(t), the Riesz functional
  /// of (x - t)^2 applied to the p = 1 moments.
  Polynomial q;
  /// Smallest positive root of q after which q < 0; nullopt if q never turns
  /// negative for t > 0.
  std::optional<double> t_star;
  /// Exact form of t_star when q has degree <= 2.
  std::optional<QuadraticSurd> t_star_exact;
};

ViolationWitness nonneg_violation_witness(const BurgersMomentTable& table);

}  // namespace heatsos
