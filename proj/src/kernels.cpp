#include "heatsos/kernels.hpp"

#include <algorithm>
#include <limits>

namespace heatsos::kernels {

namespace {

// Column l of the lower triangle: M(k, l) for k >= l.
void schur_column(std::span<const Eigen::MatrixXd> a, const Eigen::MatrixXd& x,
                  const Eigen::MatrixXd& z_inv, Eigen::Index l, Eigen::MatrixXd& m) {
  const Eigen::MatrixXd g = x * a[static_cast<std::size_t>(l)] * z_inv;
  const Eigen::Index count = static_cast<Eigen::Index>(a.size());
  for (Eigen::Index k = l; k < count; ++k) {
    m(k, l) = a[static_cast<std::size_t>(k)].cwiseProduct(g.transpose()).sum();
  }
}

void mirror_lower(Eigen::MatrixXd& m) {
  for (Eigen::Index l = 0; l < m.cols(); ++l) {
    for (Eigen::Index k = l + 1; k < m.rows(); ++k) m(l, k) = m(k, l);
  }
}

}  // namespace

Eigen::MatrixXd schur_complement_serial(std::span<const Eigen::MatrixXd> a, const Eigen::MatrixXd& x,
                                        const Eigen::MatrixXd& z_inv) {
  const auto count = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(count, count);
  for (Eigen::Index l = 0; l < count; ++l) schur_column(a, x, z_inv, l, m);
  mirror_lower(m);
  return m;
}

Eigen::MatrixXd schur_complement_parallel(std::span<const Eigen::MatrixXd> a,
                                          const Eigen::MatrixXd& x, const Eigen::MatrixXd& z_inv) {
  const auto count = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(count, count);
#pragma omp parallel for schedule(dynamic, 4)
  for (Eigen::Index l = 0; l < count; ++l) schur_column(a, x, z_inv, l, m);
  mirror_lower(m);
  return m;
}

double DensePolynomial::operator()(std::span<const double> point) const {
  double sum = 0.0;
  for (std::size_t t = 0; t < coefficients.size(); ++t) {
    double term = coefficients[t];
    const unsigned* e = exponents.data() + t * variables;
    for (std::size_t i = 0; i < variables; ++i) {
      for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
    }
    sum += term;
  }
  return sum;
}

std::size_t Grid::size() const {
  std::size_t total = 1;
  for (std::size_t i = 0; i < dimension; ++i) total *= points_per_axis;
  return total;
}

void Grid::point(std::size_t index, std::span<double> out) const {
  const double spacing = points_per_axis > 1 ? (upper - lower) / double(points_per_axis - 1) : 0.0;
  for (std::size_t i = 0; i < dimension; ++i) {
    out[i] = lower + spacing * double(index % points_per_axis);
    index /= points_per_axis;
  }
}

double grid_minimum_serial(const DensePolynomial& p, const Grid& grid) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> pt(grid.dimension);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.point(i, pt);
    best = std::min(best, p(pt));
  }
  return best;
}

double grid_minimum_parallel(const DensePolynomial& p, const Grid& grid) {
  double best = std::numeric_limits<double>::infinity();
  const auto total = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel reduction(min : best)
  {
    std::vector<double> pt(grid.dimension);
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < total; ++i) {
      grid.point(static_cast<std::size_t>(i), pt);
      best = std::min(best, p(pt));
    }
  }
  return best;
}

}  // namespace heatsos::kernels
