#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "heatsos/atom_flow.hpp"

using namespace heatsos;
using heatsos::testing::Gen;

namespace {

VectorFieldSpec field(std::size_t n, VectorFieldSpec::Drift g, VectorFieldSpec::Rate h = nullptr) {
  VectorFieldSpec spec;
  spec.dimension = n;
  spec.g = std::move(g);
  spec.h = h ? std::move(h) : [](std::span<const double>, double) { return 0.0; };
  return spec;
}

VectorFieldSpec squared() {
  return field(1, [](std::span<const double> x, double, std::span<double> out) { out[0] = x[0] * x[0]; });
}

VectorFieldSpec still(std::size_t n, double rate = 0.0) {
  return field(
      n, [](std::span<const double>, double, std::span<double> out) { std::fill(out.begin(), out.end(), 0.0); },
      [rate](std::span<const double>, double) { return rate; });
}

// Bounded random field: g_i = a_i tanh(b_i . x + c_i t), h = r cos(x_0).
VectorFieldSpec random_bounded(Gen& gen, std::size_t n) {
  std::vector<double> a(n), c(n), b(n * n);
  for (auto& v : a) v = gen.real(-0.5, 0.5);
  for (auto& v : b) v = gen.real(-1.0, 1.0);
  for (auto& v : c) v = gen.real(-1.0, 1.0);
  const double r = gen.real(-0.5, 0.5);
  auto spec = field(
      n,
      [=](std::span<const double> x, double t, std::span<double> out) {
        for (std::size_t i = 0; i < n; ++i) {
          double s = c[i] * t;
          for (std::size_t j = 0; j < n; ++j) s += b[i * n + j] * x[j];
          out[i] = a[i] * std::tanh(s);
        }
      },
      [=](std::span<const double> x, double) { return r * std::cos(x[0]); });
  spec.bounded = true;
  return spec;
}

AtomicMeasure random_measure(Gen& gen, std::size_t n, std::size_t k) {
  AtomicMeasure mu{n, {}};
  while (mu.atoms.size() < k) {
    std::vector<double> x(n);
    for (auto& v : x) v = gen.real(-1.0, 1.0);
    bool separated = true;
    for (const auto& a : mu.atoms) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += (a.location[i] - x[i]) * (a.location[i] - x[i]);
      separated = separated && std::sqrt(d) > 0.3;
    }
    if (separated) mu.atoms.push_back({gen.real(0.2, 2.0), x});
  }
  return mu;
}

}  // namespace

TEST_CASE("trajectories with closed forms") {
  const std::vector<double> x0{2.5, -1.0};
  const auto rest = integrate_trajectory(still(2), x0, 1.0, 0.1);
  for (const auto& p : rest.points) CHECK(p == x0);

  const auto drift = field(2, [](std::span<const double>, double, std::span<double> out) {
    out[0] = 0.75;
    out[1] = -2.0;
  });
  const auto line = integrate_trajectory(drift, x0, 2.0, 0.01);
  for (std::size_t k = 0; k < line.times.size(); ++k) {
    CHECK(std::abs(line.points[k][0] - (2.5 + 0.75 * line.times[k])) <= 1e-12);
    CHECK(std::abs(line.points[k][1] - (-1.0 - 2.0 * line.times[k])) <= 1e-12);
  }
  CHECK(line.times.back() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("x' = x^2 blows up at t = 1") {
  const std::vector<double> x0{1.0};
  const auto tr = integrate_trajectory(squared(), x0, 2.0, 1e-3);
  for (std::size_t k = 0; k < tr.times.size() && tr.times[k] <= 0.9; ++k) {
    const double exact = 1.0 / (1.0 - tr.times[k]);
    CHECK(std::abs(tr.points[k][0] - exact) <= 1e-6 * exact);
  }
  REQUIRE(tr.blow_up_time);
  CHECK(*tr.blow_up_time > 0.99);
  CHECK(*tr.blow_up_time < 1.01);
  CHECK(tr.times.back() == *tr.blow_up_time);
}

TEST_CASE("RK4 order: halving the step cuts the error by at least 12") {
  const std::vector<double> x0{1.0};
  const auto error_at = [&](double h) {
    const auto tr = integrate_trajectory(squared(), x0, 0.8, h);
    return std::abs(tr.points.back()[0] - 5.0);
  };
  const double coarse = error_at(0.02), fine = error_at(0.01);
  CHECK(coarse / fine >= 12.0);
  const auto tr = integrate_trajectory(squared(), x0, 0.8, 0.01);
  CHECK(tr.error_estimate > 0.0);
  CHECK(tr.error_estimate < 10 * fine + 1e-12);
}

TEST_CASE("weights") {
  const AtomicMeasure mu{1, {{1.5, {0.0}}, {0.5, {2.0}}}};
  const auto same = evolve_measure(squared(), AtomicMeasure{1, {{1.5, {0.0}}, {0.5, {-3.0}}}}, 0.25, 1e-3);
  CHECK(same.atoms[0].weight == 1.5);
  CHECK(same.atoms[1].weight == 0.5);

  const double lambda = -0.7;
  const auto grown = evolve_measure(still(1, lambda), mu, 1.3, 1e-2);
  for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
    const double exact = mu.atoms[i].weight * std::exp(lambda * 1.3);
    CHECK(std::abs(grown.atoms[i].weight - exact) <= 1e-8 * exact);
  }

  // h(x) = x along x(t) = x0 + t: c(t) = c0 exp(x0 t + t^2 / 2). Odd step
  // counts exercise the closing panel of the quadrature.
  const auto drift = field(
      1, [](std::span<const double>, double, std::span<double> out) { out[0] = 1.0; },
      [](std::span<const double> x, double) { return x[0]; });
  for (double step : {0.1, 1.0 / 7.0, 0.5}) {
    const auto path = evolve_atom(drift, {2.0, {0.5}}, 1.0, step);
    for (std::size_t k = 0; k < path.weights.size(); ++k) {
      const double t = path.trajectory.times[k];
      CHECK(path.weights[k] == doctest::Approx(2.0 * std::exp(0.5 * t + 0.5 * t * t)).epsilon(1e-12));
    }
  }

  const auto half = evolve_measure(squared(), AtomicMeasure{1, {{1.0, {1.0}}}}, 0.5, 1e-3);
  CHECK(half.atoms[0].location[0] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(half.atoms[0].weight == 1.0);
}

TEST_CASE("blow-up names the atom") {
  const AtomicMeasure mu{1, {{1.0, {0.1}}, {1.0, {2.0}}}};
  try {
    evolve_measure(squared(), mu, 1.0, 1e-3);
    FAIL("expected a blow-up");
  } catch (const BlowUpError& e) {
    CHECK(e.atom() == 1);
    CHECK(e.time() == doctest::Approx(0.5).epsilon(0.01));
  }
}

TEST_CASE("measure validation") {
  CHECK_THROWS_AS((AtomicMeasure{1, {{-1.0, {0.0}}}}.validate()), DomainError);
  CHECK_THROWS_AS((AtomicMeasure{1, {{1.0, {0.0}}, {2.0, {0.0}}}}.validate()), DomainError);
  CHECK_THROWS_AS((AtomicMeasure{2, {{1.0, {0.0}}}}.validate()), DomainError);
  CHECK_THROWS(integrate_trajectory(still(1), std::vector<double>{0.0}, 1.0, 0.0));
}

TEST_CASE("moments") {
  const auto delta0 = moments_of_measure(AtomicMeasure{2, {{1.0, {0.0, 0.0}}}}, 4);
  for (const auto& [alpha, value] : delta0.values) CHECK(value == (alpha.degree() == 0 ? 1.0 : 0.0));
  CHECK(moment_matrix_rank(delta0) == 1);

  const auto twice = moments_of_measure(AtomicMeasure{2, {{2.0, {1.0, 1.0}}}}, 2);
  CHECK(twice.values.size() == 6);
  for (const auto& [alpha, value] : twice.values) CHECK(value == 2.0);

  const auto pair = moments_of_measure(AtomicMeasure{1, {{1.0, {-1.0}}, {1.0, {1.0}}}}, 2);
  CHECK(pair[Monomial{0}] == 2.0);
  CHECK(pair[Monomial{1}] == 0.0);
  CHECK(pair[Monomial{2}] == 2.0);

  const auto three = moments_of_measure(AtomicMeasure{1, {{1.0, {-1.0}}, {0.5, {0.25}}, {2.0, {1.5}}}}, 4);
  CHECK(moment_matrix_rank(three) == 3);

  Gen gen(8);
  for (std::size_t k = 1; k <= 6; ++k) {
    CHECK(moment_matrix_rank(moments_of_measure(random_measure(gen, 2, k), 4)) == k);
  }
}

TEST_CASE("serial and parallel evolution agree exactly") {
  Gen gen(3);
  const auto spec = random_bounded(gen, 2);
  const auto mu = random_measure(gen, 2, 8);
  const auto a = evolve_atoms_serial(spec, mu, 1.0, 1e-3);
  const auto b = evolve_atoms_parallel(spec, mu, 1.0, 1e-3);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].trajectory.points == b[i].trajectory.points);
    CHECK(a[i].weights == b[i].weights);
  }
}

TEST_CASE("random bounded scenarios") {
  Gen gen(20240611);
  for (int scenario = 0; scenario < 20; ++scenario) {
    const std::size_t n = std::size_t(gen.integer(1, 2));
    const std::size_t k = std::size_t(gen.integer(1, 4));
    const unsigned degree = n == 1 ? 6 : 4;
    const auto spec = random_bounded(gen, n);
    const auto mu = random_measure(gen, n, k);
    const auto paths = evolve_atoms_serial(spec, mu, 1.0, 1e-3);
    const std::size_t steps = paths.front().trajectory.times.size() - 1;
    CAPTURE(scenario);

    for (std::size_t idx : {std::size_t(0), steps / 2, steps}) {
      const auto at = measure_at(paths, n, idx);
      CHECK(moment_matrix_rank(moments_of_measure(at, degree)) == k);
    }

    double closest = INFINITY;
    for (std::size_t s = 0; s <= steps; ++s) {
      for (std::size_t i = 0; i < k; ++i) {
        CHECK(paths[i].weights[s] > 0.0);
        for (std::size_t j = i + 1; j < k; ++j) {
          double d = 0.0;
          for (std::size_t c = 0; c < n; ++c) {
            const double diff = paths[i].trajectory.points[s][c] - paths[j].trajectory.points[s][c];
            d += diff * diff;
          }
          closest = std::min(closest, std::sqrt(d));
        }
      }
    }
    if (k > 1) CHECK(closest > 0.0);
  }
}

TEST_CASE("the boundary polynomial stays in the kernel of the moment functional") {
  Gen gen(6);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t k = std::size_t(gen.integer(1, 3));
    const auto spec = random_bounded(gen, 1);
    const auto mu = random_measure(gen, 1, k);
    const auto paths = evolve_atoms_serial(spec, mu, 1.0, 1e-2);
    for (std::size_t s : {std::size_t(0), std::size_t(50), std::size_t(100)}) {
      const auto at = measure_at(paths, 1, s);
      // Coefficients of prod (x - x_i)^2, lowest degree first.
      std::vector<double> poly{1.0};
      for (const auto& atom : at.atoms) {
        for (int rep = 0; rep < 2; ++rep) {
          std::vector<double> next(poly.size() + 1, 0.0);
          for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= atom.location[0] * poly[i];
          }
          poly = next;
        }
      }
      const auto s_t = moments_of_measure(at, unsigned(poly.size() - 1));
      double value = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < poly.size(); ++i) {
        value += poly[i] * s_t[Monomial{unsigned(i)}];
        scale += std::abs(poly[i] * s_t[Monomial{unsigned(i)}]);
      }
      CHECK(std::abs(value) <= 1e-13 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("fields from polynomials") {
  const std::vector<std::string> v{"x", "t"};
  const auto x = Polynomial::variable(v, 0), t = Polynomial::variable(v, 1);
  const auto spec = VectorFieldSpec::from_polynomials({x * t}, Polynomial::constant(v, 1), false);
  const std::vector<double> pt{2.0};
  std::vector<double> out(1);
  spec.g(pt, 3.0, out);
  CHECK(out[0] == 6.0);
  CHECK(spec.h(pt, 0.0) == 1.0);
  CHECK_THROWS_AS(VectorFieldSpec::from_polynomials({x}, Polynomial::constant({"y"}, 1), false), StructuralError);
}
