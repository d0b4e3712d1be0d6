#pragma once

#include <optional>
#include <vector>

#include "heatsos/rational.hpp"

namespace heatsos {

/// Dense row-major matrix of exact rationals. Sizes here are tiny (at most a
/// few hundred entries per side), so nothing clever is done.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalMatrix transpose() const;
  RationalMatrix operator*(const RationalMatrix& other) const;
  bool operator==(const RationalMatrix& other) const = default;

  bool is_symmetric() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Outcome of an exact symmetric LDL^T factorization with symmetric pivoting
/// restricted to the diagonal.
struct LdltResult {
  bool positive_semidefinite = false;
  std::vector<Rational> pivots;
};

/// Decides positive semidefiniteness exactly. A zero pivot is accepted only
/// if the rest of its column is zero as well.
LdltResult ldlt_psd(const RationalMatrix& symmetric);

/// Basis of {v : M v = 0} from the reduced row echelon form; one column per
/// free variable.
RationalMatrix nullspace(const RationalMatrix& m);

/// Rank via exact elimination.
std::size_t rank(const RationalMatrix& m);

/// Some solution of M x = rhs, or std::nullopt if the system is inconsistent.
std::optional<std::vector<Rational>> solve_consistent(const RationalMatrix& m,
                                                      const std::vector<Rational>& rhs);

}  // namespace heatsos
