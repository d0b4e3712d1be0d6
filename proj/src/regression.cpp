#include "heatsos/regression.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "heatsos/atom_flow.hpp"
#include "heatsos/burgers.hpp"
#include "heatsos/catalog.hpp"
#include "heatsos/heat_flow.hpp"
#include "heatsos/sos.hpp"
#include "heatsos/threshold.hpp"

namespace heatsos {

namespace {

std::string fixed(double v, int digits = 7) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, v);
  return buffer;
}

Polynomial example(const char* name) { return *example_polynomial(name); }

SosOptions validating() {
  SosOptions o;
  o.validate = true;
  return o;
}

// SOS with an exactly validated certificate at each listed time.
RegressionCheck sos_at(const char* name, const char* label, std::vector<const char*> times) {
  std::string expected = "SOS at t =";
  for (const char* t : times) expected += std::string(" ") + t;
  return {label, expected, [name, times](bool& passed) {
            passed = true;
            std::string observed;
            for (const char* t : times) {
              const auto v = sos_feasibility(evolve_at(example(name), parse_rational(t)), validating());
              const bool ok = v.status == SosStatus::kSos && v.certificate && v.certificate->validated;
              passed = passed && ok;
              observed += (observed.empty() ? "" : ", ") + to_string(v.status) + (ok ? "" : "(unvalidated)");
            }
            return observed;
          }};
}

RegressionCheck threshold_check(const char* name, const char* label, long lo, long hi) {
  const std::string expected = "T in (" + fixed(lo / 1e6, 6) + ", " + fixed(hi / 1e6, 6) + ")";
  return {label, expected, [name, lo, hi](bool& passed) {
            const auto r = find_sos_threshold(example(name), Rational(1, 100000));
            Rational a(lo, 1000000);
            Rational b(hi, 1000000);
            a.canonicalize();
            b.canonicalize();
            passed = r.status == ThresholdStatus::kBracketed && r.lower < b && r.upper > a;
            return to_string(r.status) + " [" + fixed(to_double(r.lower)) + ", " + fixed(to_double(r.upper)) + "]";
          }};
}

}  // namespace

std::vector<RegressionCheck> regression_checks() {
  std::vector<RegressionCheck> checks;
  checks.push_back({"heat basis p_6", "120t^3 + 180t^2x^2 + 30tx^4 + x^6", [](bool& passed) {
                      const auto p = heat_basis(6).poly();
                      passed = p.coefficient({3, 0}) == 120 && p.coefficient({2, 2}) == 180 &&
                               p.coefficient({1, 4}) == 30 && p.coefficient({0, 6}) == 1 && p.term_count() == 4;
                      return to_string(p);
                    }});
  checks.push_back({"Motzkin not SOS", "NOT_SOS at t = 0", [](bool& passed) {
                      const auto v = sos_feasibility(example("motzkin"));
                      passed = v.status == SosStatus::kNotSos;
                      return to_string(v.status);
                    }});
  checks.push_back(sos_at("motzkin", "Motzkin SOS at t = 1", {"1"}));
  checks.push_back({"Motzkin t = 1 decomposition", "exact Gram certificate valid", [](bool& passed) {
                      // 37 (1 - 11/148 x^2 - 11/148 y^2)^2 + 71/2 (x - 4/71 xy^2)^2 + ...
                      const std::vector<std::string> v{"x", "y"};
                      const auto m = [&](unsigned a, unsigned b) { return Polynomial::monomial(v, {a, b}); };
                      const std::vector<Polynomial> squares{
                          m(0, 0) - m(2, 0) * Rational(11, 148) - m(0, 2) * Rational(11, 148),
                          m(1, 0) - m(1, 2) * Rational(4, 71),
                          m(0, 1) - m(2, 1) * Rational(4, 71),
                          m(1, 1),
                          m(2, 0) + m(0, 2) * Rational(27, 1063),
                          m(0, 2),
                          m(2, 1),
                          m(1, 2)};
                      const std::vector<Rational> weights{37, Rational(71, 2), Rational(71, 2), Rational(57, 2),
                                                          Rational(1063, 592), Rational(3815, 2126),
                                                          Rational(63, 71), Rational(63, 71)};
                      const auto target = evolve_at(example("motzkin"), 1);
                      const auto basis = gram_basis(target, false);
                      passed = gram_matrix_represents(target, basis, gram_from_squares(basis, squares, weights));
                      return passed ? "valid" : "invalid";
                    }});
  checks.push_back(threshold_check("motzkin", "Motzkin entry time", 31998, 31999));
  checks.push_back(threshold_check("robinson", "Robinson entry time", 20946, 20947));
  checks.push_back(sos_at("choi_lam", "Choi-Lam SOS at t = 1/9", {"1/9"}));
  checks.push_back({"Choi-Lam entry time", "|T - 1/9| <= 1e-6", [](bool& passed) {
                      const auto r = find_sos_threshold(example("choi_lam"), Rational(1, 10000000));
                      const double centre = to_double((r.lower + r.upper) / 2);
                      passed = r.status == ThresholdStatus::kBracketed && std::abs(centre - 1.0 / 9.0) <= 1e-6;
                      return "[" + fixed(to_double(r.lower), 9) + ", " + fixed(to_double(r.upper), 9) + "]";
                    }});
  checks.push_back(sos_at("schmudgen", "Schmudgen SOS", {"2/10000", "1"}));
  checks.push_back(sos_at("harris", "Harris SOS", {"8/10000", "1"}));
  checks.push_back(sos_at("bcj", "Berg-Christensen-Jensen SOS", {"1/6"}));
  checks.push_back({"homogeneous Motzkin", "OBSTRUCTED", [](bool& passed) {
                      const auto r = find_sos_threshold(example("homogeneous_motzkin"), Rational(1, 100000));
                      passed = r.status == ThresholdStatus::kObstructed;
                      return to_string(r.status);
                    }});
  checks.push_back({"Motzkin asymptotic constant", "48", [](bool& passed) {
                      const Rational c = asymptotic_constant(example("motzkin"));
                      passed = c == 48;
                      return to_string(c);
                    }});
  checks.push_back({"x' = x^2 blow-up", "BLOW_UP in (0.99, 1.01)", [](bool& passed) {
                      VectorFieldSpec spec;
                      spec.dimension = 1;
                      spec.g = [](std::span<const double> x, double, std::span<double> out) { out[0] = x[0] * x[0]; };
                      spec.h = [](std::span<const double>, double) { return 0.0; };
                      const double x0[1] = {1.0};
                      const auto tr = integrate_trajectory(spec, x0, 2.0, 1e-3);
                      passed = tr.blow_up_time && *tr.blow_up_time > 0.99 && *tr.blow_up_time < 1.01;
                      return tr.blow_up_time ? "BLOW_UP at " + fixed(*tr.blow_up_time, 3) : std::string("no blow-up");
                    }});
  checks.push_back({"tent Burgers witness", "1/6 - 2/15*t^2", [](bool& passed) {
                      const auto w = nonneg_violation_witness(one_tooth_initial_moments(2, 1));
                      const auto observed = to_string(w.q);
                      passed = observed == "1/6 - 2/15*t^2";
                      return observed;
                    }});
  return checks;
}

std::vector<RegressionOutcome> run_regression(const std::vector<RegressionCheck>& checks, int threads) {
  std::vector<RegressionOutcome> outcomes(checks.size());
  const auto count = static_cast<std::ptrdiff_t>(checks.size());
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto& check = checks[std::size_t(i)];
    auto& out = outcomes[std::size_t(i)];
    out.name = check.name;
    out.expected = check.expected;
    const auto start = std::chrono::steady_clock::now();
    try {
      out.observed = check.run(out.passed);
    } catch (const std::exception& e) {
      out.passed = false;
      out.observed = std::string("error: ") + e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return outcomes;
}

std::string format_regression_table(const std::vector<RegressionOutcome>& outcomes) {
  std::size_t name_width = 4;
  std::size_t expected_width = 8;
  for (const auto& o : outcomes) {
    name_width = std::max(name_width, o.name.size());
    expected_width = std::max(expected_width, o.expected.size());
  }
  std::ostringstream out;
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - std::min(w, s.size()), ' '); };
  out << pad("check", name_width) << "  " << pad("expected", expected_width) << "  result  observed\n";
  std::size_t passed = 0;
  for (const auto& o : outcomes) {
    passed += o.passed ? 1 : 0;
    out << pad(o.name, name_width) << "  " << pad(o.expected, expected_width) << "  "
        << (o.passed ? "PASS  " : "FAIL  ") << "  " << o.observed << "\n";
  }
  out << passed << "/" << outcomes.size() << " checks passed\n";
  return out.str();
}

}  // namespace heatsos
