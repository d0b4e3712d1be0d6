#include <doctest.h>

#include "generators.hpp"
#include "heatsos/catalog.hpp"
#include "heatsos/poly_json.hpp"

using namespace heatsos;
using heatsos::testing::Gen;

namespace {

const std::vector<std::string> kXY{"x", "y"};

Polynomial xy(unsigned a, unsigned b, const Rational& c = 1) { return Polynomial::monomial(kXY, {a, b}, c); }

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("-2/15") == Rational(-2, 15));
  CHECK(parse_rational("4/6") == Rational(2, 3));
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(Rational(-5)) == "-5");
  CHECK_THROWS_AS(parse_rational("1/0"), StructuralError);
  CHECK_THROWS_AS(parse_rational("abc"), StructuralError);
  CHECK(rationalize(0.3333333333, 1000) == Rational(1, 3));
  CHECK(rationalize(1063.0 / 592.0, 1000000) == Rational(1063, 592));
}

TEST_CASE("multiply") {
  CHECK(xy(2, 0) * xy(0, 2) == xy(2, 2));
  const Polynomial one = Polynomial::constant(kXY, 1);
  CHECK((one + xy(1, 0)) * (one - xy(1, 0)) == one - xy(2, 0));

  const std::vector<std::string> tx{"t", "x"};
  const auto x = Polynomial::variable(tx, 1);
  const auto t = Polynomial::variable(tx, 0);
  const auto s = x + t * Rational(2);
  CHECK(s * s == x * x + t * x * Rational(4) + t * t * Rational(4));

  CHECK_THROWS_AS(xy(1, 0) * Polynomial::variable({"x"}, 0), StructuralError);
}

TEST_CASE("evaluate") {
  const Polynomial motz = *example_polynomial("motzkin");
  const std::vector<Rational> one{1, 1}, zero{0, 0};
  CHECK(evaluate(motz, one) == 0);
  CHECK(evaluate(motz, zero) == 1);
  const std::vector<Rational> bad{1};
  CHECK_THROWS_AS(evaluate(motz, bad), StructuralError);
}

TEST_CASE("laplacian") {
  CHECK(laplacian(xy(2, 0)) == Polynomial::constant(kXY, 2));
  CHECK(laplacian(xy(4, 2)) == xy(2, 2, 12) + xy(4, 0, 2));

  Gen gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial p = gen.polynomial(2, 8);
    Polynomial q = p;
    for (int k = 0; k <= 4; ++k) q = laplacian(q);
    CHECK(q.is_zero());
  }
}

TEST_CASE("homogeneous parts") {
  const Polynomial motz = *example_polynomial("motzkin");
  CHECK(homogeneous_part(motz, 6) == xy(4, 2) + xy(2, 4));
  CHECK(homogeneous_part(motz, 0) == Polynomial::constant(kXY, 1));
  CHECK(homogeneous_part(motz, 7).is_zero());
}

TEST_CASE("zero polynomial has no degree") {
  const Polynomial zero(kXY);
  CHECK_FALSE(zero.degree().has_value());
  CHECK((xy(1, 1) - xy(1, 1)).is_zero());
  CHECK((xy(1, 1) - xy(1, 1)).term_count() == 0);
  CHECK(xy(3, 1).degree() == 4u);
}

TEST_CASE("ring axioms and homomorphism on random inputs") {
  Gen gen(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = std::size_t(gen.integer(1, 3));
    const auto a = gen.polynomial(n, 4), b = gen.polynomial(n, 4), c = gen.polynomial(n, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    const auto pt = gen.point(n);
    CHECK(evaluate(a * b, pt) == evaluate(a, pt) * evaluate(b, pt));
    CHECK(evaluate(a + b, pt) == evaluate(a, pt) + evaluate(b, pt));

    const Rational alpha = gen.rational(), beta = gen.rational();
    CHECK(laplacian(a * alpha + b * beta) == laplacian(a) * alpha + laplacian(b) * beta);

    Polynomial sum(a.variables());
    for (unsigned k = 0; k <= *a.degree(); ++k) sum = sum + homogeneous_part(a, k);
    CHECK(sum == a);
  }
}

TEST_CASE("anisotropic laplacian weights") {
  const std::vector<Rational> w{3, Rational(1, 2)};
  CHECK(laplacian(xy(2, 2), w) == xy(0, 2, 6) + xy(2, 0, 1));
}

TEST_CASE("canonical text output is graded") {
  const auto p = xy(0, 0, Rational(1, 6)) - xy(2, 0, Rational(2, 15));
  CHECK(to_string(p) == "1/6 - 2/15*x^2");
}

TEST_CASE("polynomial JSON round trip") {
  Gen gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial p = gen.small_polynomial();
    const auto text = dump(to_json(p));
    CHECK(polynomial_from_json(parse_json_text(text)) == p);
    CHECK(dump(to_json(polynomial_from_json(parse_json_text(text)))) == text);
  }
}

TEST_CASE("polynomial JSON errors") {
  CHECK_THROWS_AS(polynomial_from_json(parse_json_text(R"({"vars":["x"]})")), StructuralError);
  CHECK_THROWS_AS(polynomial_from_json(parse_json_text(R"({"vars":["x"],"terms":[{"coef":"1","exp":[1,2]}]})")),
                  StructuralError);
  try {
    parse_json_text("{\n  \"vars\": [x]\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}
