#include "heatsos/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace heatsos {

unsigned Monomial::degree() const {
  return std::accumulate(exponents_.begin(), exponents_.end(), 0U);
}

Monomial Monomial::operator+(const Monomial& other) const {
  if (other.size() != size()) throw StructuralError("monomial length mismatch");
  Monomial out(*this);
  for (std::size_t i = 0; i < size(); ++i) out.exponents_[i] += other.exponents_[i];
  return out;
}

bool GradedLex::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = a.degree();
  unsigned db = b.degree();
  if (da != db) return da < db;
  return a.exponents() < b.exponents();
}

std::vector<Monomial> monomials_up_to(std::size_t variables, unsigned max_degree) {
  std::vector<Monomial> out;
  Monomial current(variables);
  // Odometer over the box [0, max_degree]^n, keeping the simplex.
  auto recurse = [&](auto&& self, std::size_t slot, unsigned remaining) -> void {
    if (slot == variables) {
      out.push_back(current);
      return;
    }
    for (unsigned e = 0; e <= remaining; ++e) {
      current[slot] = e;
      self(self, slot + 1, remaining - e);
    }
    current[slot] = 0;
  };
  recurse(recurse, 0, max_degree);
  std::sort(out.begin(), out.end(), GradedLex{});
  return out;
}

std::vector<std::string> default_variable_names(std::size_t count) {
  if (count <= 3) {
    static const char* names[] = {"x", "y", "z"};
    return {names, names + count};
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

Polynomial::Polynomial(std::vector<std::string> variables) : variables_(std::move(variables)) {}

Polynomial Polynomial::constant(std::vector<std::string> variables, const Rational& value) {
  Polynomial p(std::move(variables));
  p.add_term(Monomial(p.variable_count()), value);
  return p;
}

Polynomial Polynomial::variable(std::vector<std::string> variables, std::size_t index) {
  Polynomial p(std::move(variables));
  if (index >= p.variable_count()) throw StructuralError("variable index out of range");
  Monomial m(p.variable_count());
  m[index] = 1;
  p.add_term(m, 1);
  return p;
}

Polynomial Polynomial::monomial(std::vector<std::string> variables, Monomial exponent,
                                const Rational& coefficient) {
  Polynomial p(std::move(variables));
  if (exponent.size() != p.variable_count()) throw StructuralError("monomial length mismatch");
  p.add_term(exponent, coefficient);
  return p;
}

std::optional<unsigned> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first.degree();
}

std::optional<unsigned> Polynomial::degree_in(std::size_t variable) const {
  if (terms_.empty()) return std::nullopt;
  unsigned best = 0;
  for (const auto& [m, c] : terms_) best = std::max(best, m[variable]);
  return best;
}

Rational Polynomial::coefficient(const Monomial& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& exponent, const Rational& coefficient) {
  if (exponent.size() != variable_count()) throw StructuralError("monomial length mismatch");
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::require_compatible(const Polynomial& other, const char* op) const {
  if (other.variable_count() != variable_count()) {
    throw StructuralError(std::string(op) + ": variable count mismatch (" +
                          std::to_string(variable_count()) + " vs " +
                          std::to_string(other.variable_count()) + ")");
  }
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  require_compatible(other, "add");
  Polynomial out(*this);
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  require_compatible(other, "subtract");
  Polynomial out(*this);
  for (const auto& [m, c] : other.terms_) out.add_term(m, -c);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  require_compatible(other, "multiply");
  Polynomial out(variables_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) out.add_term(ma + mb, ca * cb);
  }
  return out;
}

Polynomial Polynomial::operator*(const Rational& scalar) const {
  Polynomial out(variables_);
  if (scalar == 0) return out;
  out.terms_ = terms_;
  for (auto& [m, c] : out.terms_) c *= scalar;
  return out;
}

bool Polynomial::operator==(const Polynomial& other) const {
  return variable_count() == other.variable_count() && terms_ == other.terms_;
}

Polynomial Polynomial::derivative(std::size_t index) const {
  if (index >= variable_count()) throw StructuralError("derivative: variable index out of range");
  Polynomial out(variables_);
  for (const auto& [m, c] : terms_) {
    if (m[index] == 0) continue;
    Monomial d(m);
    d[index] -= 1;
    out.add_term(d, c * m[index]);
  }
  return out;
}

Polynomial Polynomial::substitute(std::size_t index, const Rational& value) const {
  if (index >= variable_count()) throw StructuralError("substitute: variable index out of range");
  std::vector<std::string> vars = variables_;
  vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(index));
  Polynomial out(std::move(vars));
  for (const auto& [m, c] : terms_) {
    std::vector<unsigned> e = m.exponents();
    unsigned power = e[index];
    e.erase(e.begin() + static_cast<std::ptrdiff_t>(index));
    out.add_term(Monomial(std::move(e)), c * pow(value, power));
  }
  return out;
}

Polynomial Polynomial::shift(std::span<const Rational> offset) const {
  if (offset.size() != variable_count()) throw StructuralError("shift: offset length mismatch");
  Polynomial out(variables_);
  for (const auto& [m, c] : terms_) {
    // prod_i (x_i + o_i)^{m_i}
    Polynomial term = Polynomial::constant(variables_, c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      Polynomial factor(variables_);
      for (unsigned k = 0; k <= m[i]; ++k) {
        Monomial e(variable_count());
        e[i] = k;
        factor.add_term(e, Rational(binomial(m[i], k)) * pow(offset[i], m[i] - k));
      }
      term = term * factor;
    }
    out = out + term;
  }
  return out;
}

Polynomial Polynomial::renamed(std::vector<std::string> variables) const {
  if (variables.size() != variable_count()) throw StructuralError("renamed: variable count mismatch");
  Polynomial out(*this);
  out.variables_ = std::move(variables);
  return out;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) { return a * b; }

Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
  if (point.size() != p.variable_count()) throw StructuralError("evaluate: point length mismatch");
  Rational sum = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] != 0) term *= pow(point[i], m[i]);
    }
    sum += term;
  }
  return sum;
}

double evaluate(const Polynomial& p, std::span<const double> point) {
  if (point.size() != p.variable_count()) throw StructuralError("evaluate: point length mismatch");
  double sum = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double term = c.get_d();
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (unsigned k = 0; k < m[i]; ++k) term *= point[i];
    }
    sum += term;
  }
  return sum;
}

Polynomial laplacian(const Polynomial& p, std::span<const Rational> weights,
                     std::size_t first_spatial) {
  if (first_spatial + weights.size() != p.variable_count()) {
    throw StructuralError("laplacian: weight count does not match spatial variable count");
  }
  Polynomial out(p.variables());
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 0; i < weights.size(); ++i) {
      std::size_t v = first_spatial + i;
      if (m[v] < 2 || weights[i] == 0) continue;
      Monomial d(m);
      d[v] -= 2;
      out.add_term(d, c * weights[i] * (m[v] * (m[v] - 1)));
    }
  }
  return out;
}

Polynomial laplacian(const Polynomial& p) {
  std::vector<Rational> ones(p.variable_count(), Rational(1));
  return laplacian(p, ones);
}

Polynomial homogeneous_part(const Polynomial& p, unsigned degree) {
  Polynomial out(p.variables());
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() == degree) out.add_term(m, c);
  }
  return out;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational magnitude = abs(c);
    bool negative = c < 0;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool constant = m.degree() == 0;
    if (constant || magnitude != 1) {
      os << to_string(magnitude);
      if (!constant) os << "*";
    }
    bool first_factor = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!first_factor) os << "*";
      first_factor = false;
      os << p.variables()[i];
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

TimePolynomial::TimePolynomial(Polynomial poly) : poly_(std::move(poly)) {
  if (poly_.variable_count() == 0 || poly_.variables().front() != "t") {
    throw StructuralError("time polynomial must have 't' as variable 0");
  }
}

std::vector<std::string> TimePolynomial::spatial_variables() const {
  return {poly_.variables().begin() + 1, poly_.variables().end()};
}

Polynomial TimePolynomial::at(const Rational& time) const { return poly_.substitute(0, time); }

Polynomial TimePolynomial::time_coefficient(unsigned power) const {
  Polynomial out(spatial_variables());
  for (const auto& [m, c] : poly_.terms()) {
    if (m[0] != power) continue;
    std::vector<unsigned> e(m.exponents().begin() + 1, m.exponents().end());
    out.add_term(Monomial(std::move(e)), c);
  }
  return out;
}

Polynomial TimePolynomial::time_derivative() const { return poly_.derivative(0); }

Polynomial TimePolynomial::spatial_laplacian(std::span<const Rational> weights) const {
  return laplacian(poly_, weights, 1);
}

Polynomial TimePolynomial::spatial_laplacian() const {
  std::vector<Rational> ones(spatial_count(), Rational(1));
  return spatial_laplacian(ones);
}

}  // namespace heatsos
