#include <doctest.h>

#include <cmath>

#include "heatsos/burgers.hpp"
#include "oracles.hpp"

using namespace heatsos;

namespace {

// int_{-1}^{1} x^k (1 - |x|)^p dx from the Beta integral
// int_0^1 x^k (1 - x)^p dx = k! p! / (k + p + 1)!.
Rational tent_moment(unsigned k, unsigned p) {
  const Rational half = Rational(factorial(k) * factorial(p)) / Rational(factorial(k + p + 1));
  return k % 2 == 0 ? 2 * half : Rational(0);
}

Polynomial in_t(std::initializer_list<Rational> coefficients) {
  Polynomial p({"t"});
  unsigned power = 0;
  for (const auto& c : coefficients) p.add_term(Monomial{power++}, c);
  return p;
}

BurgersMomentTable table_of(std::initializer_list<std::pair<std::pair<int, int>, Rational>> entries) {
  BurgersMomentTable t;
  for (const auto& [key, value] : entries) {
    t.initial[key] = value;
    t.max_k = std::max(t.max_k, key.first);
    t.max_p = std::max(t.max_p, key.second);
  }
  return t;
}

// Table whose p = 1 witness is 1/6 - 2/15 t^2.
BurgersMomentTable quadratic_witness_table() {
  return table_of({{{0, 1}, 1}, {{1, 1}, 0}, {{2, 1}, Rational(1, 6)}, {{0, 2}, Rational(4, 3)},
                   {{1, 2}, 0}, {{0, 3}, 1}});
}

}  // namespace

TEST_CASE("one-tooth initial moments") {
  const auto table = one_tooth_initial_moments(4, 3);
  CHECK(table.initial.at({0, 1}) == 1);
  CHECK(table.initial.at({1, 1}) == 0);
  CHECK(table.initial.at({2, 1}) == Rational(1, 6));
  for (const auto& [key, value] : table.initial) {
    const auto [k, p] = key;
    CAPTURE(k);
    CAPTURE(p);
    CHECK(value == tent_moment(unsigned(k), unsigned(p)));
    const Rational pieces = testing::integrate_linear_power(unsigned(k), unsigned(p), 1, 1, -1, 0) +
                            testing::integrate_linear_power(unsigned(k), unsigned(p), 1, -1, 0, 1);
    CHECK(value == pieces);
  }
}

TEST_CASE("closed-form moments") {
  const auto table = one_tooth_initial_moments(3, 2);
  CHECK(burgers_moment(table, 0, 2) == in_t({table.initial.at({0, 2})}));
  CHECK(burgers_moment(table, 1, 1) == in_t({table.initial.at({1, 1}), table.initial.at({0, 2}) / 2}));

  // s_{2,1}: i = 1 factor (1*2)/(1+1) = 1, i = 2 factor (1*2)(2*1)/((1+1)(1+4)) / 2! = 1/5.
  CHECK(burgers_moment(table, 2, 1) ==
        in_t({table.initial.at({2, 1}), table.initial.at({1, 2}), table.initial.at({0, 3}) / 5}));

  // d/dt at t = 0 is the i = 1 term s_{k-1,p+1}(0) p k / (1 + p^2).
  for (int k = 1; k <= 3; ++k) {
    for (int p = 0; p <= 2; ++p) {
      const Polynomial s = burgers_moment(table, k, p);
      CHECK(s.coefficient(Monomial{1}) == table.initial.at({k - 1, p + 1}) * p * k / (1 + p * p));
    }
  }
}

TEST_CASE("missing entries are listed") {
  const auto table = table_of({{{2, 1}, 1}});
  try {
    burgers_moment(table, 2, 1);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("1,2") != std::string::npos);
    CHECK(msg.find("0,3") != std::string::npos);
  }
}

TEST_CASE("witness with a quadratic") {
  const auto w = nonneg_violation_witness(quadratic_witness_table());
  CHECK(w.q == in_t({Rational(1, 6), 0, Rational(-2, 15)}));
  REQUIRE(w.t_star);
  REQUIRE(w.t_star_exact);
  CHECK(*w.t_star == doctest::Approx(std::sqrt(5.0) / 2));
  CHECK(w.t_star_exact->rational_square() == Rational(5, 4));
  CHECK(to_string(*w.t_star_exact) == "sqrt(5)/2");

  auto doubled = quadratic_witness_table();
  for (auto& [key, value] : doubled.initial) value *= 2;
  const auto w2 = nonneg_violation_witness(doubled);
  CHECK(w2.q == w.q * Rational(2));
  CHECK(w2.t_star_exact->rational_square() == Rational(5, 4));
}

TEST_CASE("witness without a violation") {
  const auto table = table_of({{{0, 1}, 1}, {{1, 1}, 0}, {{2, 1}, 0}, {{0, 2}, 0}, {{1, 2}, 0}, {{0, 3}, 0}});
  const auto w = nonneg_violation_witness(table);
  CHECK(w.q == in_t({0, 0, 1}));
  CHECK_FALSE(w.t_star);
}

TEST_CASE("tent witness from its own moments") {
  const auto table = one_tooth_initial_moments(2, 1);
  const auto w = nonneg_violation_witness(table);
  // q = s21 - 2t s11 + t^2 s01 with every s from the closed form.
  const Polynomial t = Polynomial::variable({"t"}, 0);
  const Polynomial expected = burgers_moment(table, 2, 1) - t * burgers_moment(table, 1, 1) * Rational(2) +
                              t * t * burgers_moment(table, 0, 1);
  CHECK(w.q == expected);
  CHECK(nonneg_violation_witness(one_tooth_initial_moments(2, 1)).q == w.q);
}

TEST_CASE("surds") {
  const QuadraticSurd r{0, Rational(1, 2), 5};
  CHECK(r.value() == doctest::Approx(std::sqrt(5.0) / 2));
  CHECK(r.rational_square() == Rational(5, 4));
  const QuadraticSurd mixed{1, 1, 2};
  CHECK_FALSE(mixed.rational_square());
  CHECK(to_string(QuadraticSurd{Rational(3, 4), 0, 1}) == "3/4");
}
