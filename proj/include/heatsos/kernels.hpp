#pragma once

// Data-parallel inner loops. Each kernel has a serial reference and an
// OpenMP version; both produce bit-identical results because every output
// element is computed by exactly one iteration with the same arithmetic.

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace heatsos::kernels {

/// Schur complement of the HKM direction: M(k, l) = <A_k, X A_l Z^{-1}>.
Eigen::MatrixXd schur_complement_serial(std::span<const Eigen::MatrixXd> a, const Eigen::MatrixXd& x,
                                        const Eigen::MatrixXd& z_inv);
Eigen::MatrixXd schur_complement_parallel(std::span<const Eigen::MatrixXd> a,
                                          const Eigen::MatrixXd& x, const Eigen::MatrixXd& z_inv);

/// Flattened polynomial for fast floating-point evaluation: each term is a
/// coefficient followed by `variables` exponents.
struct DensePolynomial {
  std::size_t variables = 0;
  std::vector<double> coefficients;
  std::vector<unsigned> exponents;  // term-major, `variables` per term

  double operator()(std::span<const double> point) const;
};

/// Uniform tensor grid: `points_per_axis` samples on [lower, upper] per axis.
struct Grid {
  std::size_t dimension = 0;
  std::size_t points_per_axis = 0;
  double lower = 0.0;
  double upper = 0.0;

  std::size_t size() const;
  void point(std::size_t index, std::span<double> out) const;
};

/// Minimum of p over the grid.
double grid_minimum_serial(const DensePolynomial& p, const Grid& grid);
double grid_minimum_parallel(const DensePolynomial& p, const Grid& grid);

}  // namespace heatsos::kernels
