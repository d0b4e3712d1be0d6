#include "heatsos/newton.hpp"

#include <algorithm>

namespace heatsos {

std::vector<Monomial> support(const Polynomial& p) {
  std::vector<Monomial> out;
  out.reserve(p.term_count());
  for (const auto& [m, c] : p.terms()) out.push_back(m);
  return out;
}

bool convex_hull_contains(const std::vector<Monomial>& points, const std::vector<Rational>& target) {
  if (points.empty()) return false;
  const std::size_t dim = target.size();
  for (const auto& p : points) {
    if (p.size() != dim) throw StructuralError("convex hull: dimension mismatch");
  }
  // Bounding box rejects most candidates cheaply.
  for (std::size_t i = 0; i < dim; ++i) {
    unsigned lo = points.front()[i];
    unsigned hi = lo;
    for (const auto& p : points) {
      lo = std::min(lo, p[i]);
      hi = std::max(hi, p[i]);
    }
    if (target[i] < lo || target[i] > hi) return false;
  }

  // Rows: sum_k lambda_k p_k[i] = target[i] for each i, and sum_k lambda_k = 1.
  // Columns: lambda (k of them), then one artificial per row, then rhs.
  const std::size_t k = points.size();
  const std::size_t rows = dim + 1;
  const std::size_t cols = k + rows + 1;
  std::vector<std::vector<Rational>> tab(rows, std::vector<Rational>(cols));
  for (std::size_t i = 0; i <= dim; ++i) {
    for (std::size_t j = 0; j < k; ++j) tab[i][j] = i < dim ? Rational(points[j][i]) : Rational(1);
    tab[i][cols - 1] = i < dim ? target[i] : Rational(1);
    if (tab[i][cols - 1] < 0) {
      for (std::size_t j = 0; j < k; ++j) tab[i][j] = -tab[i][j];
      tab[i][cols - 1] = -tab[i][cols - 1];
    }
    tab[i][k + i] = 1;
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = k + i;

  // Minimize the sum of artificials: reduced cost of column j is
  // -sum_i tab[i][j] over rows whose basic variable is artificial.
  while (true) {
    std::vector<Rational> reduced(cols - 1, Rational(0));
    for (std::size_t j = 0; j < cols - 1; ++j) {
      Rational cost = j >= k ? Rational(1) : Rational(0);
      for (std::size_t i = 0; i < rows; ++i) {
        if (basis[i] >= k) cost -= tab[i][j];
      }
      reduced[j] = cost;
    }
    std::size_t entering = cols;
    for (std::size_t j = 0; j < cols - 1; ++j) {
      if (reduced[j] < 0) {
        entering = j;
        break;
      }
    }
    if (entering == cols) break;
    std::size_t leaving = rows;
    Rational best_ratio;
    for (std::size_t i = 0; i < rows; ++i) {
      if (tab[i][entering] <= 0) continue;
      Rational ratio = tab[i][cols - 1] / tab[i][entering];
      if (leaving == rows || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving == rows) break;  // unbounded direction cannot occur in phase one
    const Rational pivot = tab[leaving][entering];
    for (auto& v : tab[leaving]) v /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leaving || tab[i][entering] == 0) continue;
      const Rational f = tab[i][entering];
      for (std::size_t j = 0; j < cols; ++j) tab[i][j] -= f * tab[leaving][j];
    }
    basis[leaving] = entering;
  }
  Rational artificial_sum = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] >= k) artificial_sum += tab[i][cols - 1];
  }
  return artificial_sum == 0;
}

}  // namespace heatsos
