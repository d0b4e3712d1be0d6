#include "heatsos/exact_linalg.hpp"

namespace heatsos {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) throw StructuralError("matrix product: inner dimension mismatch");
  RationalMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        if (other(k, c) != 0) out(r, c) += a * other(k, c);
      }
    }
  }
  return out;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r + 1; c < cols_; ++c) {
      if ((*this)(r, c) != (*this)(c, r)) return false;
    }
  }
  return true;
}

LdltResult ldlt_psd(const RationalMatrix& symmetric) {
  if (!symmetric.is_symmetric()) throw StructuralError("ldlt_psd needs a symmetric matrix");
  const std::size_t n = symmetric.rows();
  RationalMatrix a = symmetric;
  LdltResult result;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    // Largest remaining diagonal entry as pivot.
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (pivot == n || a(i, i) > a(pivot, pivot)) pivot = i;
    }
    const Rational d = a(pivot, pivot);
    done[pivot] = true;
    result.pivots.push_back(d);
    if (d < 0) return result;
    if (d == 0) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!done[i] && a(i, pivot) != 0) return result;
      }
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a(i, pivot) == 0) continue;
      const Rational l = a(i, pivot) / d;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j] || a(pivot, j) == 0) continue;
        a(i, j) -= l * a(pivot, j);
      }
    }
  }
  result.positive_semidefinite = true;
  return result;
}

namespace {

// In-place reduced row echelon form; returns pivot column of each pivot row.
std::vector<std::size_t> rref(RationalMatrix& m, std::vector<Rational>* rhs = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t found = m.rows();
    for (std::size_t r = row; r < m.rows(); ++r) {
      if (m(r, col) != 0) {
        found = r;
        break;
      }
    }
    if (found == m.rows()) continue;
    if (found != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(found, c), m(row, c));
      if (rhs) std::swap((*rhs)[found], (*rhs)[row]);
    }
    const Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    if (rhs) (*rhs)[row] *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (m(row, c) != 0) m(r, c) -= f * m(row, c);
      }
      if (rhs) (*rhs)[r] -= f * (*rhs)[row];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

RationalMatrix nullspace(const RationalMatrix& m) {
  RationalMatrix reduced = m;
  auto pivots = rref(reduced);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  RationalMatrix basis(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(free_cols[k], k) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = -reduced(r, free_cols[k]);
  }
  return basis;
}

std::size_t rank(const RationalMatrix& m) {
  RationalMatrix reduced = m;
  return rref(reduced).size();
}

std::optional<std::vector<Rational>> solve_consistent(const RationalMatrix& m,
                                                      const std::vector<Rational>& rhs) {
  if (rhs.size() != m.rows()) throw StructuralError("solve_consistent: rhs length mismatch");
  RationalMatrix reduced = m;
  std::vector<Rational> b = rhs;
  auto pivots = rref(reduced, &b);
  for (std::size_t r = pivots.size(); r < m.rows(); ++r) {
    if (b[r] != 0) return std::nullopt;
  }
  std::vector<Rational> x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = b[r];
  return x;
}

}  // namespace heatsos
