#pragma once

#include <map>
#include <shared_mutex>
#include <span>
#include <vector>

#include "heatsos/polynomial.hpp"

namespace heatsos {

/// Memoized table of the univariate heat solutions p_k(x, t) with
/// p_k(x, 0) = x^k and d/dt p_k = d^2/dx^2 p_k.
///
/// Entries are stored as coefficient lists: coefficients()[j] multiplies
/// t^j x^(k-2j), and equals k! / ((k-2j)! j!). Safe for concurrent use.
class HeatBasisCache {
 public:
  const std::vector<Integer>& coefficients(unsigned k);
  /// p_k as a time polynomial in variables (t, x).
  TimePolynomial basis(unsigned k);

  static HeatBasisCache& shared();

 private:
  std::shared_mutex mutex_;
  std::map<unsigned, std::vector<Integer>> table_;
};

TimePolynomial heat_basis(unsigned k);

/// Heat evolution d/dt f = sum_i nu_i d^2 f/dx_i^2 with f(., 0) = f0, as a
/// polynomial in (t, x_1, ..., x_n). An empty `diffusivity` means nu = 1.
TimePolynomial evolve(const Polynomial& f0, std::span<const Rational> diffusivity = {});

/// evolve(f0) at t = time. Any rational time is allowed, including negative.
Polynomial evolve_at(const Polynomial& f0, const Rational& time,
                     std::span<const Rational> diffusivity = {});

/// Convolution of f0 with the heat kernel of variance 2t per coordinate,
/// computed from Gaussian moments without the heat basis. Requires time > 0.
Polynomial gaussian_convolution_oracle(const Polynomial& f0, const Rational& time);

/// Integrated drift and scale for the constant-in-space dual evolution.
struct DriftScaleSpec {
  /// One entry (isotropic) or one per spatial variable.
  std::vector<Rational> nu;
  /// G(t) per spatial variable, each a polynomial in the single variable "t".
  std::vector<Polynomial> drift_integral;
  /// H(t), polynomial in "t".
  Polynomial scale_integral;

  /// Throws DomainError unless nu >= 0, G(0) = 0 and H(0) = 0.
  void validate(std::size_t spatial_count) const;
};

/// exp(scale_exponent) * polynomial. The exponential is kept symbolic.
struct ScaledPolynomial {
  Rational scale_exponent;
  Polynomial polynomial;
};

/// exp(H(time)) * [heat kernel(nu * time) * p0](x + G(time)).
ScaledPolynomial evolve_dual_const_coeff(const Polynomial& p0, const DriftScaleSpec& spec,
                                         const Rational& time);

/// Heat evolution of (a . x + b)^d. Along the direction a the flow is the
/// univariate one with diffusivity |a|^2, so the result is
/// sum_j c_j (|a|^2 t)^j (a . x + b)^(d - 2j): every t-coefficient is a
/// positive multiple of an even power of the same affine form when d is even.
TimePolynomial evolve_waring_term(std::span<const Rational> direction, const Rational& offset,
                                  unsigned power, std::vector<std::string> variables = {});

/// Coefficient of t^d in evolve(f) for deg f = 2d. It is constant in x and
/// equals Laplacian^d(f_2d) / d!.
Rational asymptotic_constant(const Polynomial& f);

}  // namespace heatsos
