#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "heatsos/polynomial.hpp"

namespace heatsos {

/// Transport field g and growth rate h of d/dt mu = -div(g mu) + h mu,
/// both possibly time dependent. Callables must be pure (they are invoked
/// from several threads at once).
struct VectorFieldSpec {
  using Drift = std::function<void(std::span<const double> x, double t, std::span<double> out)>;
  using Rate = std::function<double(std::span<const double> x, double t)>;

  std::size_t dimension = 0;
  Drift g;
  Rate h;
  /// Caller's claim that g is bounded; informational only.
  bool bounded = false;

  /// Fields given as polynomials over the spatial variables and optionally a
  /// variable named "t". Every polynomial must use the same variable list.
  static VectorFieldSpec from_polynomials(const std::vector<Polynomial>& g, const Polynomial& h, bool bounded);
};

struct Atom {
  double weight = 0.0;
  std::vector<double> location;
};

/// Finite sum of weighted point masses. Weights positive, locations distinct.
struct AtomicMeasure {
  std::size_t dimension = 0;
  std::vector<Atom> atoms;

  /// Throws DomainError on non-positive weights, duplicate or wrong-length
  /// locations.
  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> points;
  /// Last grid time before the state escaped (norm above 1e12 or not
  /// finite); samples stop there.
  std::optional<double> blow_up_time;
  /// Richardson estimate max |x_h - x_{h/2}| / 15 over shared grid points.
  double error_estimate = 0.0;
};

constexpr double kBlowUpThreshold = 1e12;

/// Classical RK4 on the uniform grid t_k = k * tEnd / ceil(tEnd / step).
Trajectory integrate_trajectory(const VectorFieldSpec& spec, std::span<const double> x0, double t_end,
                                double step);

/// One atom's path with its weight c(0) exp(int_0^t h(x(s), s) ds) at every
/// grid time (composite Simpson on the RK grid).
struct AtomPath {
  Trajectory trajectory;
  std::vector<double> weights;
};

AtomPath evolve_atom(const VectorFieldSpec& spec, const Atom& atom, double t_end, double step);

/// All atoms, one after another (reference) or spread over OpenMP threads.
/// Both give identical results.
std::vector<AtomPath> evolve_atoms_serial(const VectorFieldSpec& spec, const AtomicMeasure& mu0, double t_end,
                                          double step);
std::vector<AtomPath> evolve_atoms_parallel(const VectorFieldSpec& spec, const AtomicMeasure& mu0,
                                            double t_end, double step);

class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(std::size_t atom, double time);
  std::size_t atom() const { return atom_; }
  double time() const { return time_; }

 private:
  std::size_t atom_;
  double time_;
};

/// The measure at t_end; throws BlowUpError naming the first escaping atom.
AtomicMeasure evolve_measure(const VectorFieldSpec& spec, const AtomicMeasure& mu0, double t_end, double step,
                             bool parallel = true);

/// Measure at grid index k of previously evolved paths (all paths share the
/// grid). Throws BlowUpError if some path ended before k.
AtomicMeasure measure_at(const std::vector<AtomPath>& paths, std::size_t dimension, std::size_t k);

struct MomentSequence {
  std::size_t dimension = 0;
  unsigned degree = 0;
  double time = 0.0;
  std::map<Monomial, double, GradedLex> values;

  double operator[](const Monomial& alpha) const;
};

/// s_alpha = sum_i c_i x_i^alpha for all |alpha| <= degree.
MomentSequence moments_of_measure(const AtomicMeasure& mu, unsigned degree, double time = 0.0);

/// Numerical rank of M[a, b] = s_{a+b} over monomials of degree <= d, with
/// d = degree / 2: singular values above svd_tolerance * sigma_max.
std::size_t moment_matrix_rank(const MomentSequence& s, double svd_tolerance = 1e-8);

}  // namespace heatsos
