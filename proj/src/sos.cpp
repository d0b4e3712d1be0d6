#include "heatsos/sos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "heatsos/newton.hpp"
#include "heatsos/sdp.hpp"

namespace heatsos {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

using PairList = std::vector<std::pair<std::size_t, std::size_t>>;
using ClassMap = std::map<Monomial, PairList, GradedLex>;

// Pairs (i <= j) of basis positions whose monomials multiply to each exponent.
ClassMap coefficient_classes(const GramBasis& basis) {
  ClassMap out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      out[basis.monomials[i] + basis.monomials[j]].emplace_back(i, j);
    }
  }
  return out;
}

std::string monomial_text(const std::vector<std::string>& vars, const Monomial& m) {
  return to_string(Polynomial::monomial(vars, m));
}

// Scaled half-vectorization: <A, B> = svec(A) . svec(B).
VectorXd svec(const MatrixXd& m) {
  const Index r = m.rows();
  VectorXd out(r * (r + 1) / 2);
  Index k = 0;
  for (Index a = 0; a < r; ++a) {
    for (Index b = a; b < r; ++b) out(k++) = a == b ? m(a, a) : std::sqrt(2.0) * m(a, b);
  }
  return out;
}

MatrixXd smat(const VectorXd& v, Index r) {
  MatrixXd m(r, r);
  Index k = 0;
  for (Index a = 0; a < r; ++a) {
    for (Index b = a; b < r; ++b) {
      const double value = a == b ? v(k) : v(k) / std::sqrt(2.0);
      m(a, b) = value;
      m(b, a) = value;
      ++k;
    }
  }
  return m;
}

MatrixXd to_eigen(const RationalMatrix& m) {
  MatrixXd out(static_cast<Index>(m.rows()), static_cast<Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(Index(r), Index(c)) = to_double(m(r, c));
  }
  return out;
}

double min_eigenvalue(const MatrixXd& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

// Subspace of Gram coordinates: Q = V Q' V^T.
struct Face {
  MatrixXd v;
  std::optional<RationalMatrix> exact;
};

// Rows spanning the same space as `rows`, in reduced echelon form with
// entries snapped to small-denominator rationals; nullopt if the snap moves
// any entry noticeably.
std::optional<RationalMatrix> rational_row_space(MatrixXd a) {
  const Index k = a.rows();
  const Index r = a.cols();
  Index row = 0;
  for (Index col = 0; col < r && row < k; ++col) {
    Index best = row;
    for (Index i = row + 1; i < k; ++i) {
      if (std::abs(a(i, col)) > std::abs(a(best, col))) best = i;
    }
    if (std::abs(a(best, col)) < 1e-6) continue;
    a.row(row).swap(a.row(best));
    a.row(row) /= a(row, col);
    for (Index i = 0; i < k; ++i) {
      if (i != row) a.row(i) -= a(i, col) * a.row(row);
    }
    ++row;
  }
  if (row < k) return std::nullopt;
  RationalMatrix out(static_cast<std::size_t>(k), static_cast<std::size_t>(r));
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < r; ++j) {
      Rational q = rationalize(a(i, j), 1000);
      if (std::abs(to_double(q) - a(i, j)) > 1e-4) return std::nullopt;
      out(std::size_t(i), std::size_t(j)) = q;
    }
  }
  return out;
}

// Shrinks the face to the orthogonal complement of range(moment). Any Gram
// matrix with margin zero annihilates that range, by complementarity.
std::optional<Face> reduce_face(const Face& face, const MatrixXd& moment) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(0.5 * (moment + moment.transpose()));
  const VectorXd& w = eig.eigenvalues();
  const double threshold = 1e-4 * w.maxCoeff();
  std::vector<Index> range;
  std::vector<Index> complement;
  for (Index i = 0; i < w.size(); ++i) (w(i) > threshold ? range : complement).push_back(i);
  if (range.empty() || complement.empty()) return std::nullopt;

  MatrixXd range_rows(Index(range.size()), moment.rows());
  for (std::size_t i = 0; i < range.size(); ++i) range_rows.row(Index(i)) = eig.eigenvectors().col(range[i]).transpose();
  if (face.exact) {
    if (auto rows = rational_row_space(range_rows)) {
      RationalMatrix w_exact = nullspace(*rows);
      if (w_exact.cols() == complement.size()) {
        RationalMatrix v = *face.exact * w_exact;
        return Face{to_eigen(v), v};
      }
    }
  }
  MatrixXd w_num(moment.rows(), Index(complement.size()));
  for (std::size_t i = 0; i < complement.size(); ++i) w_num.col(Index(i)) = eig.eigenvectors().col(complement[i]);
  return Face{face.v * w_num, std::nullopt};
}

struct Stage {
  enum Kind { kSolved, kInfeasible, kFailed } kind = kFailed;
  double lambda = 0.0;
  // Certified bracket for the optimal margin: lower is the least eigenvalue
  // of a coefficient matching Gram matrix, upper is <C, X> for a (nearly)
  // feasible pseudo-moment matrix X.
  double lower = 0.0;
  double upper = 0.0;
  MatrixXd gram;
  MatrixXd moment;
  int iterations = 0;
  std::string diagnostic;
};

// max lambda s.t. Q' - lambda I psd and coefficients of m^T V Q' V^T m match.
// Q' = Q0 + sum_j y_j N_j over an orthonormal basis N_j of the matching
// kernel, so the dual SDP has free variables (lambda, y) only.
Stage solve_stage(const ClassMap& classes, const std::map<Monomial, double, GradedLex>& target,
                  const MatrixXd& v, const SosOptions& options) {
  Stage stage;
  const Index r = v.cols();
  const Index s = r * (r + 1) / 2;
  const Index count = Index(classes.size());
  if (r == 0) {
    stage.kind = Stage::kInfeasible;
    return stage;
  }
  MatrixXd a(count, s);
  VectorXd b(count);
  Index row = 0;
  for (const auto& [alpha, pairs] : classes) {
    MatrixXd g = MatrixXd::Zero(r, r);
    for (const auto& [i, j] : pairs) {
      if (i == j) {
        g += v.row(Index(i)).transpose() * v.row(Index(i));
      } else {
        MatrixXd t = v.row(Index(i)).transpose() * v.row(Index(j));
        g += t + t.transpose();
      }
    }
    a.row(row) = svec(g).transpose();
    auto it = target.find(alpha);
    b(row) = it == target.end() ? 0.0 : it->second;
    ++row;
  }

  Eigen::BDCSVD<MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const VectorXd& sigma = svd.singularValues();
  const double cutoff = 1e-10 * (sigma.size() > 0 ? sigma(0) : 0.0);
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  VectorXd ub = svd.matrixU().leftCols(rank).transpose() * b;
  for (Index i = 0; i < rank; ++i) ub(i) /= sigma(i);
  const VectorXd q0 = svd.matrixV().leftCols(rank) * ub;
  if ((a * q0 - b).norm() > 1e-8 * (1.0 + b.norm())) {
    stage.kind = Stage::kInfeasible;
    return stage;
  }
  const MatrixXd kernel = svd.matrixV().rightCols(s - rank);
  const MatrixXd c = smat(q0, r);

  if (kernel.cols() == 0) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(c);
    stage.kind = Stage::kSolved;
    stage.lambda = eig.eigenvalues()(0);
    stage.lower = stage.upper = stage.lambda;
    stage.gram = c;
    stage.moment = eig.eigenvectors().col(0) * eig.eigenvectors().col(0).transpose();
    return stage;
  }

  SdpProblem problem;
  problem.c = c;
  problem.a.reserve(std::size_t(kernel.cols()) + 1);
  problem.a.push_back(MatrixXd::Identity(r, r));
  for (Index j = 0; j < kernel.cols(); ++j) problem.a.push_back(-smat(kernel.col(j), r));
  problem.b = VectorXd::Zero(kernel.cols() + 1);
  problem.b(0) = 1.0;
  SdpOptions sdp_options;
  sdp_options.parallel_schur = options.parallel;
  SdpResult result = solve_sdp(problem, sdp_options);
  stage.iterations = result.iterations;
  // Degenerate instances (no strictly feasible pseudo-moment matrix) drive the
  // dual iterates off to infinity before full accuracy; a nearly feasible
  // pair with a narrow objective bracket is still usable.
  const bool usable = result.x.size() > 0 && result.primal_infeasibility < 1e-7 &&
                      result.dual_infeasibility < 1e-7 &&
                      std::abs(result.primal_objective - result.dual_objective) < 1e-6;
  if (result.status != SdpStatus::kOptimal && !usable) {
    stage.diagnostic = "SDP solver did not converge: " + result.diagnostic;
    return stage;
  }
  stage.kind = Stage::kSolved;
  stage.lambda = result.y(0);
  stage.gram = c;
  for (Index j = 0; j < kernel.cols(); ++j) stage.gram += result.y(j + 1) * smat(kernel.col(j), r);
  stage.lower = min_eigenvalue(stage.gram);
  stage.moment = result.x;

  // Project X onto {tr X = 1, <N_j, X> = 0}. A psd projection bounds every
  // feasible margin from above by <C, X>; otherwise no bound is claimed.
  MatrixXd constraints(kernel.cols() + 1, s);
  constraints.row(0) = svec(MatrixXd::Identity(r, r)).transpose();
  constraints.bottomRows(kernel.cols()) = kernel.transpose();
  VectorXd rhs = VectorXd::Zero(kernel.cols() + 1);
  rhs(0) = 1.0;
  const VectorXd xv = svec(result.x);
  const VectorXd correction =
      constraints.transpose() * (constraints * constraints.transpose()).ldlt().solve(constraints * xv - rhs);
  const MatrixXd projected = smat(xv - correction, r);
  stage.upper = min_eigenvalue(projected) >= -1e-7 ? (c.cwiseProduct(projected)).sum()
                                                      : std::numeric_limits<double>::infinity();
  return stage;
}

// Rational basis of the numerically detected range of Q (complement of its
// near-kernel), or nullopt if Q has no kernel or it does not rationalize.
std::optional<RationalMatrix> detected_face(const MatrixXd& q) {
  if (q.rows() == 0) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(0.5 * (q + q.transpose()));
  const VectorXd& w = eig.eigenvalues();
  const double scale = std::max(1e-300, w.cwiseAbs().maxCoeff());
  std::vector<Index> kernel;
  for (Index i = 0; i < w.size(); ++i) {
    if (w(i) < 1e-7 * scale) kernel.push_back(i);
  }
  if (kernel.empty()) return std::nullopt;
  if (kernel.size() == std::size_t(w.size())) return RationalMatrix(std::size_t(w.size()), 0);
  MatrixXd rows(Index(kernel.size()), q.rows());
  for (std::size_t i = 0; i < kernel.size(); ++i) rows.row(Index(i)) = eig.eigenvectors().col(kernel[i]).transpose();
  auto exact_rows = rational_row_space(rows);
  if (!exact_rows) return std::nullopt;
  return nullspace(*exact_rows);
}

// Round Q (restricted to the face) to rationals and project it exactly onto
// the coefficient matching subspace, using the minimum norm correction.
std::optional<RationalMatrix> round_and_project(const Polynomial& p, const GramBasis& basis,
                                                const MatrixXd& q, const RationalMatrix& face,
                                                long max_denominator) {
  const std::size_t n = basis.size();
  const std::size_t r = face.cols();
  const MatrixXd v = to_eigen(face);
  MatrixXd reduced;
  if (r > 0) {
    Eigen::LDLT<MatrixXd> normal(v.transpose() * v);
    const MatrixXd pinv = normal.solve(v.transpose());
    reduced = pinv * q * pinv.transpose();
  }

  // Unknowns u_ab = Q'_ab for a <= b.
  std::vector<std::vector<std::size_t>> index(r, std::vector<std::size_t>(r));
  std::size_t s = 0;
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a; b < r; ++b) index[a][b] = index[b][a] = s++;
  }
  std::vector<Rational> u(s);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a; b < r; ++b) {
      u[index[a][b]] = rationalize(0.5 * (reduced(Index(a), Index(b)) + reduced(Index(b), Index(a))),
                                   max_denominator);
    }
  }

  // Nonzero entries of each face row, to keep the exact products sparse.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < r; ++a) {
      if (face(i, a) != 0) rows[i].emplace_back(a, face(i, a));
    }
  }

  const ClassMap classes = coefficient_classes(basis);
  for (const auto& [m, c] : p.terms()) {
    if (!classes.contains(m)) return std::nullopt;
  }
  RationalMatrix l(classes.size(), s);
  std::vector<Rational> residual(classes.size());
  std::size_t row = 0;
  for (const auto& [alpha, pairs] : classes) {
    for (const auto& [i, j] : pairs) {
      for (const auto& [a, via] : rows[i]) {
        for (const auto& [b, vjb] : rows[j]) {
          // Ordered pairs (i, j) and (j, i) both contribute unless i == j;
          // the unknown u_ab stands for Q'_ab and Q'_ba alike.
          Rational w = via * vjb;
          if (i != j) w *= 2;
          l(row, index[a][b]) += w;
        }
      }
    }
    Rational value = p.coefficient(alpha);
    for (std::size_t k = 0; k < s; ++k) {
      if (l(row, k) != 0) value -= l(row, k) * u[k];
    }
    residual[row] = value;
    ++row;
  }
  const RationalMatrix lt = l.transpose();
  auto w = solve_consistent(l * lt, residual);
  if (!w) return std::nullopt;
  for (std::size_t k = 0; k < s; ++k) {
    for (std::size_t rr = 0; rr < classes.size(); ++rr) {
      if (lt(k, rr) != 0 && (*w)[rr] != 0) u[k] += lt(k, rr) * (*w)[rr];
    }
  }
  RationalMatrix q_face(r, r);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) q_face(a, b) = u[index[a][b]];
  }
  return face * q_face * face.transpose();
}

}  // namespace

std::string to_string(SosStatus status) {
  switch (status) {
    case SosStatus::kSos:
      return "SOS";
    case SosStatus::kNotSos:
      return "NOT_SOS";
    case SosStatus::kObstructed:
      return "OBSTRUCTED";
    case SosStatus::kInconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

GramBasis gram_basis(const Polynomial& p, bool use_newton_filter) {
  const auto degree = p.degree();
  if (degree && *degree % 2 != 0) {
    throw DomainError("gram basis needs even degree, got " + std::to_string(*degree));
  }
  GramBasis basis;
  basis.variables = p.variables();
  auto all = monomials_up_to(p.variable_count(), degree ? *degree / 2 : 0);
  if (!use_newton_filter) {
    basis.monomials = std::move(all);
    return basis;
  }
  const auto points = support(p);
  for (auto& m : all) {
    std::vector<Rational> doubled(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) doubled[i] = 2 * m[i];
    if (convex_hull_contains(points, doubled)) basis.monomials.push_back(std::move(m));
  }
  return basis;
}

GramBasis prune_diagonally_inconsistent(const Polynomial& p, GramBasis basis) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<Monomial, GradedLex> mixed;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = i + 1; j < basis.size(); ++j) mixed.insert(basis.monomials[i] + basis.monomials[j]);
    }
    std::vector<Monomial> kept;
    for (const auto& m : basis.monomials) {
      const Monomial square = m + m;
      if (p.coefficient(square) != 0 || mixed.contains(square)) {
        kept.push_back(m);
      } else {
        changed = true;
      }
    }
    basis.monomials = std::move(kept);
  }
  return basis;
}

SosVerdict sos_feasibility(const Polynomial& p, const SosOptions& options) {
  if (!(options.tolerance > 0.0)) throw DomainError("sos tolerance must be positive");
  GramBasis basis = prune_diagonally_inconsistent(p, gram_basis(p, options.use_newton_filter));
  SosVerdict verdict;
  constexpr double kUnreachable = -std::numeric_limits<double>::infinity();

  if (p.is_zero()) {
    GramCertificate cert;
    cert.basis = basis;
    cert.matrix = MatrixXd::Zero(Index(basis.size()), Index(basis.size()));
    cert.exact = RationalMatrix(basis.size(), basis.size());
    cert.validated = true;
    verdict.status = SosStatus::kSos;
    verdict.certificate = std::move(cert);
    return verdict;
  }

  const ClassMap classes = coefficient_classes(basis);
  for (const auto& [m, c] : p.terms()) {
    if (!classes.contains(m)) {
      verdict.status = SosStatus::kNotSos;
      verdict.margin = kUnreachable;
      verdict.diagnostic = "term " + monomial_text(p.variables(), m) + " is not a product of Gram basis monomials";
      return verdict;
    }
  }

  double scale = 0.0;
  for (const auto& [m, c] : p.terms()) scale = std::max(scale, std::abs(to_double(c)));
  std::map<Monomial, double, GradedLex> target;
  for (const auto& [m, c] : p.terms()) target[m] = to_double(c) / scale;

  const std::size_t n = basis.size();
  Face face{MatrixXd::Identity(Index(n), Index(n)), RationalMatrix::identity(n)};
  for (int round = 0;; ++round) {
    Stage stage = solve_stage(classes, target, face.v, options);
    verdict.sdp_iterations += stage.iterations;
    if (stage.kind == Stage::kFailed) {
      verdict.status = SosStatus::kInconclusive;
      verdict.diagnostic = stage.diagnostic;
      return verdict;
    }
    if (stage.kind == Stage::kInfeasible) {
      verdict.status = SosStatus::kNotSos;
      verdict.margin = kUnreachable;
      verdict.diagnostic = round == 0 ? "coefficients cannot be matched by any Gram matrix"
                                      : "coefficients cannot be matched on the reduced face";
      return verdict;
    }
    verdict.margin = stage.lambda;
    if (stage.lower > options.tolerance) {
      GramCertificate cert;
      cert.basis = basis;
      MatrixXd q = scale * (face.v * stage.gram * face.v.transpose());
      cert.matrix = 0.5 * (q + q.transpose());
      cert.min_eigenvalue = min_eigenvalue(cert.matrix);
      if (round > 0) cert.face = face.exact;
      verdict.status = SosStatus::kSos;
      if (options.validate && !certificate_validate(p, cert, options.max_denominator)) {
        verdict.diagnostic = "numeric certificate could not be validated exactly";
      }
      verdict.certificate = std::move(cert);
      return verdict;
    }
    if (stage.lambda < -options.tolerance) {
      if (stage.upper < -options.tolerance) {
        verdict.status = SosStatus::kNotSos;
      } else {
        verdict.status = SosStatus::kInconclusive;
        verdict.diagnostic = "negative margin without a certified separating functional";
      }
      return verdict;
    }
    if (round >= options.max_face_reductions) {
      verdict.status = SosStatus::kInconclusive;
      verdict.diagnostic = "margin within tolerance after the face reduction limit";
      return verdict;
    }
    auto next = reduce_face(face, stage.moment);
    if (!next) {
      verdict.status = SosStatus::kInconclusive;
      verdict.diagnostic = "margin within tolerance and no proper face was found";
      return verdict;
    }
    face = std::move(*next);
    ++verdict.face_reductions;
  }
}

bool gram_matrix_represents(const Polynomial& p, const GramBasis& basis, const RationalMatrix& q) {
  const std::size_t n = basis.size();
  if (q.rows() != n || q.cols() != n) throw StructuralError("Gram matrix size does not match its basis");
  if (!q.is_symmetric()) return false;
  Polynomial sum(p.variables());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (q(i, j) == 0) continue;
      sum.add_term(basis.monomials[i] + basis.monomials[j], i == j ? q(i, j) : Rational(2 * q(i, j)));
    }
  }
  if (sum != p) return false;
  return ldlt_psd(q).positive_semidefinite;
}

bool certificate_validate(const Polynomial& p, GramCertificate& cert, long max_denominator) {
  const std::size_t n = cert.basis.size();
  if (cert.basis.variables.size() != p.variable_count()) {
    throw StructuralError("certificate variable count does not match the polynomial");
  }
  for (const auto& m : cert.basis.monomials) {
    if (m.size() != p.variable_count()) throw StructuralError("certificate monomial has the wrong length");
  }
  if (cert.exact) {
    const bool ok = gram_matrix_represents(p, cert.basis, *cert.exact);
    if (ok) cert.validated = true;
    return ok;
  }
  if (std::size_t(cert.matrix.rows()) != n || std::size_t(cert.matrix.cols()) != n) {
    throw StructuralError("certificate matrix size does not match its basis");
  }
  std::vector<RationalMatrix> faces;
  if (cert.face) {
    if (cert.face->rows() != n) throw StructuralError("certificate face has the wrong row count");
    faces.push_back(*cert.face);
  }
  if (auto detected = detected_face(cert.matrix)) faces.push_back(std::move(*detected));
  faces.push_back(RationalMatrix::identity(n));
  for (const auto& face : faces) {
    auto q = round_and_project(p, cert.basis, cert.matrix, face, max_denominator);
    if (q && gram_matrix_represents(p, cert.basis, *q)) {
      cert.exact = std::move(*q);
      cert.matrix = to_eigen(*cert.exact);
      cert.min_eigenvalue = min_eigenvalue(cert.matrix);
      cert.validated = true;
      return true;
    }
  }
  return false;
}

bool highest_degree_obstruction(const Polynomial& f, const SosOptions& options) {
  const auto degree = f.degree();
  if (!degree) return false;
  if (*degree % 2 != 0) throw DomainError("obstruction test needs even degree, got " + std::to_string(*degree));
  return sos_feasibility(homogeneous_part(f, *degree), options).status == SosStatus::kNotSos;
}

RationalMatrix gram_from_squares(const GramBasis& basis, const std::vector<Polynomial>& squares,
                                 const std::vector<Rational>& weights) {
  if (squares.size() != weights.size()) throw StructuralError("one weight per square is required");
  const std::size_t n = basis.size();
  RationalMatrix q(n, n);
  for (std::size_t k = 0; k < squares.size(); ++k) {
    std::vector<Rational> c(n);
    for (const auto& [m, coef] : squares[k].terms()) {
      auto it = std::find(basis.monomials.begin(), basis.monomials.end(), m);
      if (it == basis.monomials.end()) {
        throw StructuralError("square uses monomial " + monomial_text(basis.variables, m) + " outside the basis");
      }
      c[std::size_t(it - basis.monomials.begin())] = coef;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) q(i, j) += weights[k] * c[i] * c[j];
    }
  }
  return q;
}

}  // namespace heatsos
