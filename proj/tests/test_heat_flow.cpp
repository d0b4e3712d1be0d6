#include <doctest.h>

#include "generators.hpp"
#include "heatsos/catalog.hpp"
#include "heatsos/heat_flow.hpp"
#include "heatsos/kernels.hpp"
#include "oracles.hpp"

using namespace heatsos;
using heatsos::testing::Gen;

namespace {

Polynomial example(const char* name) { return *example_polynomial(name); }

Polynomial txy(std::initializer_list<unsigned> e, const Rational& c = 1) {
  return Polynomial::monomial({"t", "x", "y"}, Monomial(e), c);
}

}  // namespace

TEST_CASE("heat basis") {
  CHECK(heat_basis(0).poly() == Polynomial::constant({"t", "x"}, 1));
  const std::vector<std::string> tx{"t", "x"};
  CHECK(heat_basis(2).poly() ==
        Polynomial::monomial(tx, {1, 0}, 2) + Polynomial::monomial(tx, {0, 2}));
  CHECK(heat_basis(6).poly() == Polynomial::monomial(tx, {3, 0}, 120) + Polynomial::monomial(tx, {2, 2}, 180) +
                                    Polynomial::monomial(tx, {1, 4}, 30) + Polynomial::monomial(tx, {0, 6}));
  for (unsigned k = 0; k <= 15; ++k) {
    const auto& c = HeatBasisCache::shared().coefficients(k);
    REQUIRE(c.size() == k / 2 + 1);
    for (unsigned j = 0; j < c.size(); ++j) CHECK(c[j] == testing::heat_basis_coefficient(k, j));
    const TimePolynomial p = heat_basis(k);
    CHECK(p.time_derivative() == p.spatial_laplacian());
  }
}

TEST_CASE("Motzkin evolution") {
  // 1 - 12t^2 + 48t^3 + 6t(-1 + 6t)(x^2 + y^2) + (-3 + 24t)x^2y^2 + 2t(x^4 + y^4) + x^4y^2 + x^2y^4
  const Polynomial expected = txy({0, 0, 0}) + txy({2, 0, 0}, -12) + txy({3, 0, 0}, 48) + txy({1, 2, 0}, -6) +
                              txy({2, 2, 0}, 36) + txy({1, 0, 2}, -6) + txy({2, 0, 2}, 36) +
                              txy({0, 2, 2}, -3) + txy({1, 2, 2}, 24) + txy({1, 4, 0}, 2) + txy({1, 0, 4}, 2) +
                              txy({0, 4, 2}) + txy({0, 2, 4});
  CHECK(evolve(example("motzkin")).poly() == expected);
}

TEST_CASE("Choi-Lam evolution") {
  const Polynomial f = example("choi_lam");
  const std::vector<std::string> v{"x", "y", "z"};
  const auto x = Polynomial::variable(v, 0), y = Polynomial::variable(v, 1), z = Polynomial::variable(v, 2);
  const auto c = [&](const Rational& r) { return Polynomial::constant(v, r); };
  const Rational t(1, 9);
  CHECK(evolve_at(f, t) == f + c(12 * t * t) + (x * x + y * y + z * z) * (4 * t));

  const auto a = x * y - z * Rational(2, 3), b = x * z - y * Rational(2, 3), d = y * z - x * Rational(2, 3);
  CHECK(evolve_at(f, t) == c(Rational(31, 27)) + a * a + b * b + d * d);
}

TEST_CASE("simple evolutions") {
  const std::vector<std::string> v{"x"};
  const auto x = Polynomial::variable(v, 0);
  CHECK(evolve_at(x * x, Rational(1, 2)) == x * x + Polynomial::constant(v, 1));
  CHECK(evolve_at(example("motzkin"), 0) == example("motzkin"));
  const auto seven = Polynomial::constant({"x", "y"}, 7);
  CHECK(evolve(seven).at(Rational(123, 4)) == seven);
  CHECK(gaussian_convolution_oracle(x * x, 1) == x * x + Polynomial::constant(v, 2));
  CHECK(gaussian_convolution_oracle(x, Rational(5, 3)) == x);
  CHECK(gaussian_convolution_oracle(example("motzkin"), 1) == evolve_at(example("motzkin"), 1));
  CHECK_THROWS_AS(gaussian_convolution_oracle(x, 0), DomainError);
  CHECK_THROWS_AS(gaussian_convolution_oracle(x, -1), DomainError);
}

TEST_CASE("anisotropic diffusivity") {
  const std::vector<std::string> v{"x", "y"};
  const auto x = Polynomial::variable(v, 0), y = Polynomial::variable(v, 1);
  const std::vector<Rational> nu{2, Rational(1, 3)};
  const TimePolynomial p = evolve(x * x * y * y, nu);
  CHECK(p.time_derivative() == p.spatial_laplacian(nu));
  // (x^2 + 4t)(y^2 + 2t/3) at t = 3
  CHECK(p.at(3) == (x * x + Polynomial::constant(v, 12)) * (y * y + Polynomial::constant(v, 2)));
}

TEST_CASE("exact identities on random polynomials") {
  Gen gen(314159);
  for (int trial = 0; trial < 60; ++trial) {
    const Polynomial f = gen.small_polynomial();
    const TimePolynomial p = evolve(f);
    CAPTURE(to_string(f));
    CHECK(p.time_derivative() == p.spatial_laplacian());
    CHECK(evolve_at(f, 0) == f);

    const Rational s = gen.rational(), u = gen.rational();
    CHECK(evolve_at(evolve_at(f, s), u) == evolve_at(f, s + u));

    const Rational tau = gen.positive_rational();
    CHECK(gaussian_convolution_oracle(f, tau) == evolve_at(f, tau));
    CHECK(testing::heat_series(f, tau) == evolve_at(f, tau));

    const Rational any = gen.rational();
    CHECK(evolve_at(f, any).degree() == f.degree());
    CHECK(homogeneous_part(evolve_at(f, any), *f.degree()) == homogeneous_part(f, *f.degree()));
  }
}

TEST_CASE("PDE identity up to degree 10") {
  Gen gen(99);
  for (int trial = 0; trial < 10; ++trial) {
    const Polynomial f = gen.polynomial(3, 10, 8);
    const TimePolynomial p = evolve(f);
    CHECK(p.time_derivative() == p.spatial_laplacian());
  }
}

TEST_CASE("positivity is preserved on a grid") {
  for (const auto& name : example_names()) {
    const Polynomial f = *example_polynomial(name);
    for (const Rational t : {Rational(1, 100), Rational(1, 10), Rational(1), Rational(10)}) {
      const Polynomial p = evolve_at(f, t);
      const kernels::Grid grid{p.variable_count(), 41, -5.0, 5.0};
      const double lo = kernels::grid_minimum_parallel(testing::densify(p), grid);
      CAPTURE(name);
      CAPTURE(to_double(t));
      CHECK(lo > 0.0);
    }
  }
}

TEST_CASE("dual evolution with constant coefficients") {
  const std::vector<std::string> v{"x", "y"};
  const auto x = Polynomial::variable(v, 0), y = Polynomial::variable(v, 1);
  const auto t = Polynomial::variable({"t"}, 0);
  const Polynomial zero_t({"t"});
  const Polynomial p0 = x * x * y + y;

  DriftScaleSpec translate{{0}, {t, zero_t}, zero_t};
  const auto shifted = evolve_dual_const_coeff(p0, translate, 3);
  const auto x3 = x + Polynomial::constant(v, 3);
  CHECK(shifted.scale_exponent == 0);
  CHECK(shifted.polynomial == x3 * x3 * y + y);

  DriftScaleSpec grow{{0}, {zero_t, zero_t}, t};
  const auto scaled = evolve_dual_const_coeff(p0, grow, Rational(5, 2));
  CHECK(scaled.scale_exponent == Rational(5, 2));
  CHECK(scaled.polynomial == p0);

  const auto xs = Polynomial::variable({"x"}, 0);
  DriftScaleSpec heat{{1}, {zero_t}, zero_t};
  CHECK(evolve_dual_const_coeff(xs * xs, heat, 1).polynomial == xs * xs + Polynomial::constant({"x"}, 2));

  DriftScaleSpec bad{{0}, {t + Polynomial::constant({"t"}, 1), zero_t}, zero_t};
  CHECK_THROWS_AS(evolve_dual_const_coeff(p0, bad, 1), DomainError);
}

TEST_CASE("Waring terms") {
  const std::vector<std::string> v{"x", "y"};
  const std::vector<Rational> a{1, 1};
  const TimePolynomial w = evolve_waring_term(a, 0, 2, v);
  const auto t = Polynomial::variable({"t", "x", "y"}, 0);
  const auto s = Polynomial::variable({"t", "x", "y"}, 1) + Polynomial::variable({"t", "x", "y"}, 2);
  CHECK(w.poly() == s * s + t * Rational(4));

  const std::vector<Rational> e1{1};
  CHECK(evolve_waring_term(e1, 0, 2, {"x"}).poly() == heat_basis(2).poly());
  CHECK(evolve_waring_term(a, 5, 0, v).poly() == Polynomial::constant({"t", "x", "y"}, 1));
  const std::vector<Rational> zero{0, 0};
  CHECK_THROWS_AS(evolve_waring_term(zero, 1, 2, v), DomainError);

  // Linearity: evolving a sum of powers equals the sum of evolved powers.
  Gen gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    Polynomial sum(v);
    Polynomial evolved({"t", "x", "y"});
    for (int i = 0; i < 3; ++i) {
      const std::vector<Rational> dir{gen.rational(), gen.positive_rational()};
      const Rational b = gen.rational();
      const auto form = Polynomial::variable(v, 0) * dir[0] + Polynomial::variable(v, 1) * dir[1] +
                        Polynomial::constant(v, b);
      Polynomial power = Polynomial::constant(v, 1);
      for (int k = 0; k < 4; ++k) power = power * form;
      sum = sum + power;
      evolved = evolved + evolve_waring_term(dir, b, 4, v).poly();
    }
    CHECK(evolve(sum).poly() == evolved);
  }
}

TEST_CASE("asymptotic constant") {
  CHECK(asymptotic_constant(Polynomial::monomial({"x"}, {2})) == 2);
  CHECK(asymptotic_constant(Polynomial::constant({"x"}, 1)) == 1);
  CHECK(asymptotic_constant(example("motzkin")) == 48);
  for (const auto& name : example_names()) {
    CAPTURE(name);
    CHECK(asymptotic_constant(*example_polynomial(name)) > 0);
  }
  CHECK_THROWS_AS(asymptotic_constant(Polynomial::monomial({"x"}, {3})), DomainError);
}
