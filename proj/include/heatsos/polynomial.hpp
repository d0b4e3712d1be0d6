#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heatsos/rational.hpp"

namespace heatsos {

/// Exponent vector x^alpha. Length equals the ambient variable count.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t variables) : exponents_(variables, 0) {}
  explicit Monomial(std::vector<unsigned> exponents) : exponents_(std::move(exponents)) {}
  Monomial(std::initializer_list<unsigned> exponents) : exponents_(exponents) {}

  std::size_t size() const { return exponents_.size(); }
  unsigned operator[](std::size_t i) const { return exponents_[i]; }
  unsigned& operator[](std::size_t i) { return exponents_[i]; }
  const std::vector<unsigned>& exponents() const { return exponents_; }

  unsigned degree() const;
  Monomial operator+(const Monomial& other) const;

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<unsigned> exponents_;
};

/// Graded lexicographic order: total degree first, then lexicographic.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// All monomials in `variables` variables with total degree <= max_degree,
/// ascending in graded lex order.
std::vector<Monomial> monomials_up_to(std::size_t variables, unsigned max_degree);

/// Default names: x, y, z for up to three variables, x1..xn otherwise.
std::vector<std::string> default_variable_names(std::size_t count);

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Values are immutable in practice: every operation returns a new
/// polynomial. Zero coefficients are never stored.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GradedLex>;

  Polynomial() = default;
  explicit Polynomial(std::vector<std::string> variables);

  static Polynomial constant(std::vector<std::string> variables, const Rational& value);
  static Polynomial variable(std::vector<std::string> variables, std::size_t index);
  static Polynomial monomial(std::vector<std::string> variables, Monomial exponent,
                             const Rational& coefficient = 1);

  std::size_t variable_count() const { return variables_.size(); }
  const std::vector<std::string>& variables() const { return variables_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree; std::nullopt for the zero polynomial.
  std::optional<unsigned> degree() const;
  /// Degree in a single variable; std::nullopt for the zero polynomial.
  std::optional<unsigned> degree_in(std::size_t variable) const;

  Rational coefficient(const Monomial& exponent) const;

  /// Adds `coefficient * x^exponent`, dropping the term if it cancels.
  void add_term(const Monomial& exponent, const Rational& coefficient);

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(const Rational& scalar) const;

  bool operator==(const Polynomial& other) const;
  bool operator!=(const Polynomial& other) const { return !(*this == other); }

  /// Partial derivative with respect to variable `index`.
  Polynomial derivative(std::size_t index) const;

  /// Substitutes `value` for variable `index` and removes that variable.
  Polynomial substitute(std::size_t index, const Rational& value) const;

  /// p(x + offset), computed exactly by binomial expansion.
  Polynomial shift(std::span<const Rational> offset) const;

  /// Same terms under new variable names (count must match).
  Polynomial renamed(std::vector<std::string> variables) const;

 private:
  void require_compatible(const Polynomial& other, const char* op) const;

  std::vector<std::string> variables_;
  TermMap terms_;
};

Polynomial multiply(const Polynomial& a, const Polynomial& b);
Rational evaluate(const Polynomial& p, std::span<const Rational> point);
double evaluate(const Polynomial& p, std::span<const double> point);

/// sum_i weights[i] * d^2 p / dx_i^2 over the first weights.size() variables
/// after `first_spatial` (which lets a time slot be skipped).
Polynomial laplacian(const Polynomial& p, std::span<const Rational> weights,
                     std::size_t first_spatial = 0);
/// Isotropic Laplacian over all variables.
Polynomial laplacian(const Polynomial& p);

Polynomial homogeneous_part(const Polynomial& p, unsigned degree);

/// Human-readable form in ascending graded order, e.g. "1/6 - 2/15*t^2".
std::string to_string(const Polynomial& p);

/// Polynomial whose variable 0 is the time variable "t".
class TimePolynomial {
 public:
  TimePolynomial() = default;
  /// Throws StructuralError unless variable 0 is named "t".
  explicit TimePolynomial(Polynomial poly);

  const Polynomial& poly() const { return poly_; }
  std::size_t spatial_count() const { return poly_.variable_count() - 1; }
  std::vector<std::string> spatial_variables() const;

  /// Substitutes t := time; the result lives in the spatial variables only.
  Polynomial at(const Rational& time) const;
  /// Coefficient of t^power as a spatial polynomial.
  Polynomial time_coefficient(unsigned power) const;
  Polynomial time_derivative() const;
  /// sum_i weights[i] * d^2/dx_i^2 over spatial variables.
  Polynomial spatial_laplacian(std::span<const Rational> weights) const;
  Polynomial spatial_laplacian() const;

  bool operator==(const TimePolynomial& other) const { return poly_ == other.poly_; }

 private:
  Polynomial poly_;
};

}  // namespace heatsos
