#include "heatsos/burgers.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace heatsos {

namespace {

const std::vector<std::string> kTime{"t"};

Polynomial in_t(const std::vector<Rational>& coefficients) {
  Polynomial p(kTime);
  for (std::size_t i = 0; i < coefficients.size(); ++i) p.add_term(Monomial{unsigned(i)}, coefficients[i]);
  return p;
}

// Splits n = s^2 * r with r squarefree as far as trial division to `limit`
// allows; a leftover perfect square is absorbed too.
std::pair<Integer, Integer> square_part(Integer n) {
  Integer s = 1;
  for (unsigned long f = 2; f <= 100000; ++f) {
    const Integer ff = Integer(f) * f;
    if (ff > n) break;
    while (n % ff == 0) {
      n /= ff;
      s *= f;
    }
  }
  if (mpz_perfect_square_p(n.get_mpz_t()) && n > 1) {
    Integer root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    s *= root;
    n = 1;
  }
  return {s, n};
}

double evaluate_t(const Polynomial& q, double t) {
  const double point[1] = {t};
  return evaluate(q, std::span<const double>(point, 1));
}

// Roots of c0 + c1 t + c2 t^2 as exact surds, ascending by value.
std::vector<QuadraticSurd> quadratic_roots(const Rational& c0, const Rational& c1, const Rational& c2) {
  std::vector<QuadraticSurd> roots;
  if (c2 == 0) {
    if (c1 != 0) roots.push_back(QuadraticSurd{-c0 / c1, 0, 1});
    return roots;
  }
  const Rational disc = c1 * c1 - 4 * c2 * c0;
  if (disc < 0) return roots;
  // sqrt(num/den) = sqrt(num * den) / den = s sqrt(r) / den
  const Integer num = disc.get_num();
  const Integer den = disc.get_den();
  auto [s, r] = square_part(num * den);
  const Rational centre = -c1 / (2 * c2);
  Rational half_width = Rational(s) / Rational(den) / (2 * c2);
  if (half_width < 0) half_width = -half_width;
  if (r == 1 || half_width == 0) {
    const Rational w = r == 1 ? half_width : Rational(0);
    roots.push_back(QuadraticSurd{centre - w, 0, 1});
    if (w != 0) roots.push_back(QuadraticSurd{centre + w, 0, 1});
  } else {
    roots.push_back(QuadraticSurd{centre, -half_width, r});
    roots.push_back(QuadraticSurd{centre, half_width, r});
  }
  return roots;
}

}  // namespace

Polynomial burgers_moment(const BurgersMomentTable& table, int k, int p) {
  if (k < 0 || p < 0) throw DomainError("Burgers moment indices must be non-negative");
  std::string missing;
  for (int i = 0; i <= k; ++i) {
    if (!table.initial.contains({k - i, p + i})) {
      missing += (missing.empty() ? "" : ", ") + std::to_string(k - i) + "," + std::to_string(p + i);
    }
  }
  if (!missing.empty()) throw DomainError("Burgers table lacks entries (k,p): " + missing);

  std::vector<Rational> coefficients(std::size_t(k) + 1);
  Rational factor = 1;  // prod_{j<i} (p+j)(k-j) / (1 + (p+j)^2), divided by i!
  for (int i = 0; i <= k; ++i) {
    if (i > 0) {
      const int j = i - 1;
      Rational step((p + j) * (k - j), 1 + (p + j) * (p + j));
      step.canonicalize();
      factor *= step;
      factor /= i;
    }
    coefficients[std::size_t(i)] = table.initial.at({k - i, p + i}) * factor;
  }
  return in_t(coefficients);
}

BurgersMomentTable one_tooth_initial_moments(int max_k, int max_p) {
  if (max_k < 0 || max_p < 0) throw DomainError("table bounds must be non-negative");
  BurgersMomentTable table;
  table.max_k = max_k;
  table.max_p = max_p;
  for (int k = 0; k <= max_k; ++k) {
    for (int p = 0; p <= max_p + (max_k - k); ++p) {
      // Right half: int_0^1 x^k (1 - x)^p dx = sum_j C(p,j) (-1)^j / (k+j+1).
      // The left half is its mirror image under x -> -x, i.e. (-1)^k times it.
      Rational right = 0;
      for (int j = 0; j <= p; ++j) {
        Rational term(binomial(unsigned(p), unsigned(j)), Integer(k + j + 1));
        right += j % 2 == 0 ? term : Rational(-term);
      }
      right.canonicalize();
      const Rational left = k % 2 == 0 ? right : Rational(-right);
      table.initial[{k, p}] = left + right;
    }
  }
  return table;
}

double QuadraticSurd::value() const {
  return to_double(a) + to_double(b) * std::sqrt(d.get_d());
}

std::optional<Rational> QuadraticSurd::rational_square() const {
  if (b == 0) return a * a;
  if (a == 0) return b * b * Rational(d);
  return std::nullopt;
}

std::string to_string(const QuadraticSurd& x) {
  if (x.b == 0 || x.d == 1) return to_string(Rational(x.a + (x.d == 1 ? x.b : Rational(0))));
  std::string root = "sqrt(" + x.d.get_str() + ")";
  std::string surd;
  if (x.b == 1) {
    surd = root;
  } else if (x.b == -1) {
    surd = "-" + root;
  } else if (x.b.get_den() == 1) {
    surd = x.b.get_num().get_str() + "*" + root;
  } else {
    const Integer num = x.b.get_num();
    const std::string lead = num == 1 ? root : num == -1 ? "-" + root : num.get_str() + "*" + root;
    surd = lead + "/" + x.b.get_den().get_str();
  }
  if (x.a == 0) return surd;
  return to_string(x.a) + (surd.front() == '-' ? " - " + surd.substr(1) : " + " + surd);
}

ViolationWitness nonneg_violation_witness(const BurgersMomentTable& table) {
  const Polynomial t = Polynomial::variable(kTime, 0);
  const Polynomial s21 = burgers_moment(table, 2, 1);
  const Polynomial s11 = burgers_moment(table, 1, 1);
  const Polynomial s01 = burgers_moment(table, 0, 1);
  ViolationWitness w;
  w.q = s21 - t * s11 * Rational(2) + t * t * s01;

  const unsigned degree = w.q.degree().value_or(0);
  if (degree <= 2) {
    const auto c = [&](unsigned i) { return w.q.coefficient(Monomial{i}); };
    for (const auto& root : quadratic_roots(c(0), c(1), c(2))) {
      const double r = root.value();
      if (!(r > 0.0)) continue;
      // Only a root after which q is negative marks a violation.
      const double after = evaluate_t(w.q, r + 1e-6 * std::max(1.0, r));
      if (after < 0.0) {
        w.t_star = r;
        w.t_star_exact = root;
        break;
      }
    }
    return w;
  }

  // General degree: scan for the first sign change to negative, then bisect.
  const double bound = [&] {
    const double lead = std::abs(to_double(w.q.coefficient(Monomial{degree})));
    double m = 0.0;
    for (const auto& [mono, coef] : w.q.terms()) {
      if (mono[0] != degree) m = std::max(m, std::abs(to_double(coef)) / lead);
    }
    return 1.0 + m;
  }();
  const int samples = 100000;
  double prev_t = 0.0;
  double prev_v = evaluate_t(w.q, 0.0);
  for (int i = 1; i <= samples; ++i) {
    const double cur_t = bound * double(i) / samples;
    const double cur_v = evaluate_t(w.q, cur_t);
    if (prev_v >= 0.0 && cur_v < 0.0) {
      double lo = prev_t, hi = cur_t;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (evaluate_t(w.q, mid) >= 0.0 ? lo : hi) = mid;
      }
      w.t_star = 0.5 * (lo + hi);
      break;
    }
    prev_t = cur_t;
    prev_v = cur_v;
  }
  return w;
}

}  // namespace heatsos
