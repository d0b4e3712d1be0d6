#include "heatsos/heat_flow.hpp"

#include <mutex>

namespace heatsos {

namespace {

std::vector<Integer> compute_basis_coefficients(unsigned k) {
  std::vector<Integer> out;
  Integer kfact = factorial(k);
  for (unsigned j = 0; 2 * j <= k; ++j) out.push_back(kfact / (factorial(k - 2 * j) * factorial(j)));
  return out;
}

std::vector<Rational> resolve_diffusivity(std::span<const Rational> diffusivity, std::size_t n) {
  if (diffusivity.empty()) return std::vector<Rational>(n, Rational(1));
  if (diffusivity.size() == 1) return std::vector<Rational>(n, diffusivity.front());
  if (diffusivity.size() != n) {
    throw StructuralError("diffusivity needs one entry or one per spatial variable");
  }
  for (const auto& v : diffusivity) {
    if (v < 0) throw DomainError("diffusivity must be non-negative");
  }
  return {diffusivity.begin(), diffusivity.end()};
}

// Visits every choice (j_1, ..., j_n) with 2 j_i <= alpha_i, passing the
// product of basis coefficients and the resulting x- and t-exponents.
template <typename Visit>
void for_each_basis_product(const Monomial& alpha, Visit&& visit) {
  auto& cache = HeatBasisCache::shared();
  const std::size_t n = alpha.size();
  std::vector<const std::vector<Integer>*> tables(n);
  for (std::size_t i = 0; i < n; ++i) tables[i] = &cache.coefficients(alpha[i]);
  std::vector<unsigned> j(n, 0);
  while (true) {
    Integer coef = 1;
    for (std::size_t i = 0; i < n; ++i) coef *= (*tables[i])[j[i]];
    visit(coef, j);
    std::size_t slot = 0;
    while (slot < n) {
      if (2 * (j[slot] + 1) <= alpha[slot]) {
        ++j[slot];
        break;
      }
      j[slot] = 0;
      ++slot;
    }
    if (slot == n) break;
  }
}

}  // namespace

const std::vector<Integer>& HeatBasisCache::coefficients(unsigned k) {
  {
    std::shared_lock lock(mutex_);
    auto it = table_.find(k);
    if (it != table_.end()) return it->second;
  }
  auto fresh = compute_basis_coefficients(k);
  std::unique_lock lock(mutex_);
  // std::map never invalidates references, so returned entries stay valid.
  return table_.try_emplace(k, std::move(fresh)).first->second;
}

TimePolynomial HeatBasisCache::basis(unsigned k) {
  const auto& coefs = coefficients(k);
  Polynomial p({"t", "x"});
  for (unsigned j = 0; j < coefs.size(); ++j) p.add_term(Monomial{j, k - 2 * j}, Rational(coefs[j]));
  return TimePolynomial(std::move(p));
}

HeatBasisCache& HeatBasisCache::shared() {
  static HeatBasisCache cache;
  return cache;
}

TimePolynomial heat_basis(unsigned k) { return HeatBasisCache::shared().basis(k); }

TimePolynomial evolve(const Polynomial& f0, std::span<const Rational> diffusivity) {
  const std::size_t n = f0.variable_count();
  auto nu = resolve_diffusivity(diffusivity, n);
  std::vector<std::string> vars{"t"};
  vars.insert(vars.end(), f0.variables().begin(), f0.variables().end());
  Polynomial out(vars);
  for (const auto& [alpha, c] : f0.terms()) {
    for_each_basis_product(alpha, [&](const Integer& coef, const std::vector<unsigned>& j) {
      Monomial m(n + 1);
      Rational value = c * Rational(coef);
      for (std::size_t i = 0; i < n; ++i) {
        m[0] += j[i];
        m[i + 1] = alpha[i] - 2 * j[i];
        if (j[i] != 0) value *= pow(nu[i], j[i]);
      }
      out.add_term(m, value);
    });
  }
  return TimePolynomial(std::move(out));
}

Polynomial evolve_at(const Polynomial& f0, const Rational& time,
                     std::span<const Rational> diffusivity) {
  const std::size_t n = f0.variable_count();
  auto nu = resolve_diffusivity(diffusivity, n);
  std::vector<Rational> scaled_time(n);
  for (std::size_t i = 0; i < n; ++i) scaled_time[i] = nu[i] * time;
  Polynomial out(f0.variables());
  for (const auto& [alpha, c] : f0.terms()) {
    for_each_basis_product(alpha, [&](const Integer& coef, const std::vector<unsigned>& j) {
      Monomial m(n);
      Rational value = c * Rational(coef);
      for (std::size_t i = 0; i < n; ++i) {
        m[i] = alpha[i] - 2 * j[i];
        if (j[i] != 0) value *= pow(scaled_time[i], j[i]);
      }
      out.add_term(m, value);
    });
  }
  return out;
}

Polynomial gaussian_convolution_oracle(const Polynomial& f0, const Rational& time) {
  if (time <= 0) throw DomainError("heat kernel needs a positive time");
  const std::size_t n = f0.variable_count();
  const Rational variance = 2 * time;
  Polynomial out(f0.variables());
  for (const auto& [alpha, c] : f0.terms()) {
    // (x - y)^alpha = prod_i sum_k C(alpha_i, k) x_i^(alpha_i - k) (-y_i)^k;
    // the Gaussian integrates (-y_i)^k to 0 for odd k and (k-1)!! (2t)^(k/2)
    // for even k, independently per coordinate.
    Polynomial product = Polynomial::constant(f0.variables(), c);
    for (std::size_t i = 0; i < n; ++i) {
      Polynomial factor(f0.variables());
      for (unsigned k = 0; k <= alpha[i]; k += 2) {
        Monomial m(n);
        m[i] = alpha[i] - k;
        Rational moment = Rational(double_factorial_odd(k / 2)) * pow(variance, k / 2);
        factor.add_term(m, Rational(binomial(alpha[i], k)) * moment);
      }
      product = product * factor;
    }
    out = out + product;
  }
  return out;
}

void DriftScaleSpec::validate(std::size_t spatial_count) const {
  if (nu.size() != 1 && nu.size() != spatial_count) {
    throw StructuralError("nu needs one entry or one per spatial variable");
  }
  for (const auto& v : nu) {
    if (v < 0) throw DomainError("nu must be non-negative");
  }
  if (!drift_integral.empty() && drift_integral.size() != spatial_count) {
    throw StructuralError("drift integral needs one component per spatial variable");
  }
  Rational zero = 0;
  for (const auto& g : drift_integral) {
    if (g.variable_count() != 1) throw StructuralError("G components must be polynomials in t");
    if (evaluate(g, std::span<const Rational>(&zero, 1)) != 0) throw DomainError("G(0) must vanish");
  }
  if (scale_integral.variable_count() > 1) throw StructuralError("H must be a polynomial in t");
  if (scale_integral.variable_count() == 1 &&
      evaluate(scale_integral, std::span<const Rational>(&zero, 1)) != 0) {
    throw DomainError("H(0) must vanish");
  }
}

ScaledPolynomial evolve_dual_const_coeff(const Polynomial& p0, const DriftScaleSpec& spec,
                                         const Rational& time) {
  const std::size_t n = p0.variable_count();
  spec.validate(n);
  bool diffusive = false;
  for (const auto& v : spec.nu) diffusive = diffusive || v > 0;
  if (diffusive && time < 0) throw DomainError("diffusive evolution needs time >= 0");

  Polynomial smoothed = evolve_at(p0, time, spec.nu);
  std::vector<Rational> offset(n, Rational(0));
  for (std::size_t i = 0; i < spec.drift_integral.size(); ++i) {
    offset[i] = evaluate(spec.drift_integral[i], std::span<const Rational>(&time, 1));
  }
  Rational exponent = 0;
  if (spec.scale_integral.variable_count() == 1) {
    exponent = evaluate(spec.scale_integral, std::span<const Rational>(&time, 1));
  }
  return {exponent, smoothed.shift(offset)};
}

TimePolynomial evolve_waring_term(std::span<const Rational> direction, const Rational& offset,
                                  unsigned power, std::vector<std::string> variables) {
  const std::size_t n = direction.size();
  if (variables.empty()) variables = default_variable_names(n);
  if (variables.size() != n) throw StructuralError("variable names must match the direction length");
  Rational norm2 = 0;
  for (const auto& a : direction) norm2 += a * a;
  if (norm2 == 0) throw DomainError("Waring direction must be non-zero");
  if (power % 2 != 0) throw DomainError("Waring power must be even");

  std::vector<std::string> vars{"t"};
  vars.insert(vars.end(), variables.begin(), variables.end());
  Polynomial form = Polynomial::constant(vars, offset);
  for (std::size_t i = 0; i < n; ++i) form = form + Polynomial::variable(vars, i + 1) * direction[i];

  // Powers form^0 .. form^power, reused across the t-expansion.
  std::vector<Polynomial> powers{Polynomial::constant(vars, 1)};
  for (unsigned k = 1; k <= power; ++k) powers.push_back(powers.back() * form);

  const auto& coefs = HeatBasisCache::shared().coefficients(power);
  Polynomial out(vars);
  for (unsigned j = 0; j < coefs.size(); ++j) {
    Monomial tj(n + 1);
    tj[0] = j;
    Polynomial time_part = Polynomial::monomial(vars, tj, Rational(coefs[j]) * pow(norm2, j));
    out = out + time_part * powers[power - 2 * j];
  }
  return TimePolynomial(std::move(out));
}

Rational asymptotic_constant(const Polynomial& f) {
  auto deg = f.degree();
  if (!deg) throw DomainError("asymptotic constant is undefined for the zero polynomial");
  if (*deg % 2 != 0) throw DomainError("asymptotic constant needs even degree");
  unsigned d = *deg / 2;
  Polynomial top = evolve(f).time_coefficient(d);
  if (top.degree().value_or(0) != 0) throw DomainError("leading time coefficient is not constant");
  return top.coefficient(Monomial(f.variable_count()));
}

}  // namespace heatsos
