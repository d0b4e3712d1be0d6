#include "heatsos/atom_flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "heatsos/kernels.hpp"

namespace heatsos {

namespace {

// Polynomial compiled for double evaluation at (x, t).
struct CompiledField {
  kernels::DensePolynomial poly;
  std::optional<std::size_t> time_slot;
  std::vector<std::size_t> spatial_slots;

  double operator()(std::span<const double> x, double t, std::vector<double>& scratch) const {
    for (std::size_t i = 0; i < spatial_slots.size(); ++i) scratch[spatial_slots[i]] = x[i];
    if (time_slot) scratch[*time_slot] = t;
    return poly(scratch);
  }
};

CompiledField compile(const Polynomial& p) {
  CompiledField f;
  const auto& vars = p.variables();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] == "t") {
      f.time_slot = i;
    } else {
      f.spatial_slots.push_back(i);
    }
  }
  f.poly.variables = vars.size();
  for (const auto& [m, c] : p.terms()) {
    f.poly.coefficients.push_back(to_double(c));
    f.poly.exponents.insert(f.poly.exponents.end(), m.exponents().begin(), m.exponents().end());
  }
  return f;
}

bool escaped(std::span<const double> x) {
  double norm2 = 0.0;
  for (double v : x) {
    if (!std::isfinite(v)) return true;
    norm2 += v * v;
  }
  return !(std::sqrt(norm2) <= kBlowUpThreshold);
}

std::size_t step_count(double t_end, double step) {
  if (!(step > 0.0)) throw DomainError("integration step must be positive");
  if (!(t_end >= 0.0)) throw DomainError("integration end time must be non-negative");
  const double ratio = t_end / step;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) return std::size_t(nearest);
  return std::size_t(std::ceil(ratio));
}

// RK4 over `steps` uniform steps; stops at the first escape.
Trajectory run_rk4(const VectorFieldSpec& spec, std::span<const double> x0, double t_end, std::size_t steps) {
  const std::size_t n = spec.dimension;
  Trajectory out;
  std::vector<double> x(x0.begin(), x0.end());
  out.times.push_back(0.0);
  out.points.push_back(x);
  if (steps == 0) return out;
  const double h = t_end / double(steps);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (std::size_t s = 0; s < steps; ++s) {
    const double t = double(s) * h;
    spec.g(x, t, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    spec.g(tmp, t + 0.5 * h, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    spec.g(tmp, t + 0.5 * h, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
    spec.g(tmp, t + h, k4);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (escaped(tmp)) {
      out.blow_up_time = t;
      return out;
    }
    x = tmp;
    out.times.push_back(double(s + 1) * h);
    out.points.push_back(x);
  }
  return out;
}

// Running integral of samples f_0..f_N on a uniform grid: Simpson on even
// prefixes, Simpson plus a closing 3/8 panel on odd ones, trapezoid for one
// interval.
std::vector<double> cumulative_simpson(const std::vector<double>& f, double h) {
  std::vector<double> out(f.size(), 0.0);
  double even_prefix = 0.0;  // integral over [t_0, t_{2m}]
  for (std::size_t k = 1; k < f.size(); ++k) {
    if (k % 2 == 0) {
      even_prefix += h / 3.0 * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
      out[k] = even_prefix;
    } else if (k == 1) {
      out[k] = 0.5 * h * (f[0] + f[1]);
    } else {
      out[k] = out[k - 3] + 3.0 * h / 8.0 * (f[k - 3] + 3.0 * f[k - 2] + 3.0 * f[k - 1] + f[k]);
    }
  }
  return out;
}

}  // namespace

VectorFieldSpec VectorFieldSpec::from_polynomials(const std::vector<Polynomial>& g, const Polynomial& h,
                                                  bool bounded) {
  const auto& vars = h.variables();
  for (const auto& gi : g) {
    if (gi.variables() != vars) throw StructuralError("all field polynomials must share one variable list");
  }
  const std::size_t spatial = vars.size() - std::size_t(std::count(vars.begin(), vars.end(), "t"));
  if (g.size() != spatial) {
    throw StructuralError("drift needs one component per spatial variable (" + std::to_string(spatial) + ")");
  }
  std::vector<CompiledField> drift;
  for (const auto& gi : g) drift.push_back(compile(gi));
  CompiledField rate = compile(h);
  VectorFieldSpec spec;
  spec.dimension = spatial;
  spec.bounded = bounded;
  const std::size_t slots = vars.size();
  spec.g = [drift, slots](std::span<const double> x, double t, std::span<double> out) {
    std::vector<double> scratch(slots);
    for (std::size_t i = 0; i < drift.size(); ++i) out[i] = drift[i](x, t, scratch);
  };
  spec.h = [rate, slots](std::span<const double> x, double t) {
    std::vector<double> scratch(slots);
    return rate(x, t, scratch);
  };
  return spec;
}

void AtomicMeasure::validate() const {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(atoms[i].weight > 0.0)) throw DomainError("atom " + std::to_string(i) + " has non-positive weight");
    if (atoms[i].location.size() != dimension) {
      throw DomainError("atom " + std::to_string(i) + " location has the wrong dimension");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (atoms[i].location == atoms[j].location) {
        throw DomainError("atoms " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
      }
    }
  }
}

Trajectory integrate_trajectory(const VectorFieldSpec& spec, std::span<const double> x0, double t_end,
                                double step) {
  if (x0.size() != spec.dimension) throw StructuralError("start point dimension does not match the field");
  const std::size_t steps = step_count(t_end, step);
  Trajectory coarse = run_rk4(spec, x0, t_end, steps);
  if (steps > 0) {
    const Trajectory fine = run_rk4(spec, x0, t_end, 2 * steps);
    double estimate = 0.0;
    for (std::size_t k = 0; k < coarse.points.size() && 2 * k < fine.points.size(); ++k) {
      for (std::size_t i = 0; i < spec.dimension; ++i) {
        estimate = std::max(estimate, std::abs(coarse.points[k][i] - fine.points[2 * k][i]) / 15.0);
      }
    }
    coarse.error_estimate = estimate;
  }
  return coarse;
}

AtomPath evolve_atom(const VectorFieldSpec& spec, const Atom& atom, double t_end, double step) {
  AtomPath path;
  path.trajectory = integrate_trajectory(spec, atom.location, t_end, step);
  const auto& tr = path.trajectory;
  std::vector<double> rate(tr.times.size());
  for (std::size_t k = 0; k < tr.times.size(); ++k) rate[k] = spec.h(tr.points[k], tr.times[k]);
  const double h = tr.times.size() > 1 ? tr.times[1] - tr.times[0] : 0.0;
  const auto integral = cumulative_simpson(rate, h);
  path.weights.resize(integral.size());
  for (std::size_t k = 0; k < integral.size(); ++k) path.weights[k] = atom.weight * std::exp(integral[k]);
  return path;
}

std::vector<AtomPath> evolve_atoms_serial(const VectorFieldSpec& spec, const AtomicMeasure& mu0, double t_end,
                                          double step) {
  mu0.validate();
  std::vector<AtomPath> paths(mu0.atoms.size());
  for (std::size_t i = 0; i < paths.size(); ++i) paths[i] = evolve_atom(spec, mu0.atoms[i], t_end, step);
  return paths;
}

std::vector<AtomPath> evolve_atoms_parallel(const VectorFieldSpec& spec, const AtomicMeasure& mu0,
                                            double t_end, double step) {
  mu0.validate();
  step_count(t_end, step);  // argument errors surface here, not inside the threads
  std::vector<AtomPath> paths(mu0.atoms.size());
  const auto count = static_cast<std::ptrdiff_t>(paths.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    paths[std::size_t(i)] = evolve_atom(spec, mu0.atoms[std::size_t(i)], t_end, step);
  }
  return paths;
}

BlowUpError::BlowUpError(std::size_t atom, double time)
    : std::runtime_error("atom " + std::to_string(atom) + " blew up after t = " + std::to_string(time)),
      atom_(atom),
      time_(time) {}

AtomicMeasure measure_at(const std::vector<AtomPath>& paths, std::size_t dimension, std::size_t k) {
  AtomicMeasure mu;
  mu.dimension = dimension;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& tr = paths[i].trajectory;
    if (k >= tr.points.size()) throw BlowUpError(i, tr.blow_up_time.value_or(tr.times.back()));
    mu.atoms.push_back(Atom{paths[i].weights[k], tr.points[k]});
  }
  return mu;
}

AtomicMeasure evolve_measure(const VectorFieldSpec& spec, const AtomicMeasure& mu0, double t_end, double step,
                             bool parallel) {
  const auto paths = parallel ? evolve_atoms_parallel(spec, mu0, t_end, step)
                              : evolve_atoms_serial(spec, mu0, t_end, step);
  return measure_at(paths, mu0.dimension, step_count(t_end, step));
}

double MomentSequence::operator[](const Monomial& alpha) const {
  auto it = values.find(alpha);
  if (it == values.end()) throw DomainError("moment outside the truncation degree");
  return it->second;
}

MomentSequence moments_of_measure(const AtomicMeasure& mu, unsigned degree, double time) {
  MomentSequence s;
  s.dimension = mu.dimension;
  s.degree = degree;
  s.time = time;
  for (const auto& alpha : monomials_up_to(mu.dimension, degree)) {
    double sum = 0.0;
    for (const auto& atom : mu.atoms) {
      double term = atom.weight;
      for (std::size_t i = 0; i < mu.dimension; ++i) term *= std::pow(atom.location[i], double(alpha[i]));
      sum += term;
    }
    s.values.emplace(alpha, sum);
  }
  return s;
}

std::size_t moment_matrix_rank(const MomentSequence& s, double svd_tolerance) {
  const auto basis = monomials_up_to(s.dimension, s.degree / 2);
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) m(a, b) = s[basis[std::size_t(a)] + basis[std::size_t(b)]];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > svd_tolerance * sigma(0)) ++rank;
  }
  return rank;
}

}  // namespace heatsos
