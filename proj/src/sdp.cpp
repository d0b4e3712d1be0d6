#include "heatsos/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heatsos/kernels.hpp"

namespace heatsos {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double inner(const MatrixXd& a, const MatrixXd& b) { return a.cwiseProduct(b).sum(); }

MatrixXd symmetrized(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// Largest alpha with base + alpha * direction psd (infinity if unbounded).
double max_step(const MatrixXd& base, const MatrixXd& direction) {
  Eigen::LLT<MatrixXd> llt(base);
  if (llt.info() != Eigen::Success) return 0.0;
  MatrixXd l_inv_d = llt.matrixL().solve(direction);
  MatrixXd w = llt.matrixL().solve(l_inv_d.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(symmetrized(w), Eigen::EigenvaluesOnly);
  double lowest = eig.eigenvalues().minCoeff();
  if (lowest >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lowest;
}

VectorXd apply_a(const std::vector<MatrixXd>& a, const MatrixXd& x) {
  VectorXd out(static_cast<Eigen::Index>(a.size()));
  for (std::size_t k = 0; k < a.size(); ++k) out(static_cast<Eigen::Index>(k)) = inner(a[k], x);
  return out;
}

MatrixXd apply_a_adjoint(const std::vector<MatrixXd>& a, const VectorXd& y, Eigen::Index dim) {
  MatrixXd out = MatrixXd::Zero(dim, dim);
  for (std::size_t k = 0; k < a.size(); ++k) out += y(static_cast<Eigen::Index>(k)) * a[k];
  return out;
}

struct Direction {
  MatrixXd dx;
  VectorXd dy;
  MatrixXd dz;
};

}  // namespace

SdpResult solve_sdp(const SdpProblem& problem, const SdpOptions& options) {
  const Eigen::Index n = problem.dim();
  const auto m = static_cast<Eigen::Index>(problem.constraint_count());
  SdpResult result;
  if (problem.b.size() != m) {
    result.diagnostic = "constraint count does not match b";
    return result;
  }
  const MatrixXd identity = MatrixXd::Identity(n, n);

  double max_a_norm = 0.0;
  double b_ratio = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    double an = problem.a[static_cast<std::size_t>(k)].norm();
    max_a_norm = std::max(max_a_norm, an);
    b_ratio = std::max(b_ratio, (1.0 + std::abs(problem.b(k))) / (1.0 + an));
  }
  const double sqrt_n = std::sqrt(double(n));
  const double xi = std::max({10.0, sqrt_n, sqrt_n * b_ratio});
  const double eta = std::max({10.0, sqrt_n, problem.c.norm(), max_a_norm});
  MatrixXd x = xi * identity;
  MatrixXd z = eta * identity;
  VectorXd y = VectorXd::Zero(m);

  const double b_norm = problem.b.norm();
  const double c_norm = problem.c.norm();

  auto schur = [&](const MatrixXd& xs, const MatrixXd& zi) {
    return options.parallel_schur ? kernels::schur_complement_parallel(problem.a, xs, zi)
                                  : kernels::schur_complement_serial(problem.a, xs, zi);
  };

  // Near a degenerate optimum rounding can make later iterates worse than
  // earlier ones; the most accurate iterate seen is what gets reported.
  SdpResult best;
  double best_merit = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const VectorXd rp = problem.b - apply_a(problem.a, x);
    const MatrixXd rd = problem.c - z - apply_a_adjoint(problem.a, y, n);
    const double mu = inner(x, z) / double(n);
    Eigen::LLT<MatrixXd> z_chol(z);
    if (z_chol.info() != Eigen::Success || Eigen::LLT<MatrixXd>(x).info() != Eigen::Success) {
      // Rounding pushed an iterate out of the cone; keep the previous one.
      result.diagnostic = "iterate lost definiteness";
      break;
    }
    result.iterations = iter;
    result.primal_objective = inner(problem.c, x);
    result.dual_objective = problem.b.dot(y);
    result.relative_gap = std::abs(result.primal_objective - result.dual_objective) /
                          (1.0 + std::abs(result.primal_objective) + std::abs(result.dual_objective));
    result.primal_infeasibility = rp.norm() / (1.0 + b_norm);
    result.dual_infeasibility = rd.norm() / (1.0 + c_norm);
    result.x = x;
    result.y = y;
    result.z = z;
    const double merit = std::max({result.relative_gap, result.primal_infeasibility, result.dual_infeasibility});
    if (merit < best_merit) {
      best_merit = merit;
      best = result;
    }
    if (result.relative_gap < options.gap_tolerance &&
        result.primal_infeasibility < options.feasibility_tolerance &&
        result.dual_infeasibility < options.feasibility_tolerance) {
      result.status = SdpStatus::kOptimal;
      return result;
    }
    const MatrixXd z_inv = symmetrized(z_chol.solve(identity));
    MatrixXd schur_matrix = schur(x, z_inv);
    Eigen::LDLT<MatrixXd> schur_ldlt(schur_matrix);
    if (schur_ldlt.info() != Eigen::Success || !schur_ldlt.isPositive()) {
      schur_matrix.diagonal().array() += 1e-14 * schur_matrix.diagonal().maxCoeff();
      schur_ldlt.compute(schur_matrix);
      if (schur_ldlt.info() != Eigen::Success) {
        result.diagnostic = "Schur complement factorization failed";
        break;
      }
    }
    const MatrixXd x_rd_zinv = x * rd * z_inv;

    auto direction = [&](const MatrixXd& centering) {
      Direction d;
      const MatrixXd t = centering - x_rd_zinv;
      VectorXd rhs(m);
      for (Eigen::Index k = 0; k < m; ++k) rhs(k) = rp(k) - inner(problem.a[static_cast<std::size_t>(k)], t);
      d.dy = schur_ldlt.solve(rhs);
      d.dz = rd - apply_a_adjoint(problem.a, d.dy, n);
      d.dx = symmetrized(centering - x * d.dz * z_inv);
      return d;
    };

    // Predictor (affine scaling).
    Direction affine = direction(-x);
    const double ap = std::min(1.0, max_step(x, affine.dx));
    const double ad = std::min(1.0, max_step(z, affine.dz));
    const double mu_affine = inner(x + ap * affine.dx, z + ad * affine.dz) / double(n);
    const double sigma = std::clamp(std::pow(mu_affine / mu, 3.0), 0.0, 1.0);

    // Corrector with the second-order term.
    const MatrixXd centering = sigma * mu * z_inv - x - affine.dx * affine.dz * z_inv;
    Direction step = direction(centering);
    const double alpha_p = std::min(1.0, options.step_fraction * max_step(x, step.dx));
    const double alpha_d = std::min(1.0, options.step_fraction * max_step(z, step.dz));
    if (!(alpha_p > 1e-14) && !(alpha_d > 1e-14)) {
      result.diagnostic = "step length collapsed";
      break;
    }
    x = symmetrized(x + alpha_p * step.dx);
    y += alpha_d * step.dy;
    z = symmetrized(z + alpha_d * step.dz);
  }

  if (result.diagnostic.empty()) {
    result.status = SdpStatus::kMaxIterations;
    result.diagnostic = "iteration limit reached";
  }
  if (best_merit < std::max({result.relative_gap, result.primal_infeasibility, result.dual_infeasibility})) {
    const std::string diagnostic = result.diagnostic;
    const int iterations = result.iterations;
    result = best;
    result.status = SdpStatus::kMaxIterations;
    result.diagnostic = diagnostic;
    result.iterations = iterations;
  }
  // Stalling close to the target accuracy is common at degenerate optima;
  // accept it when the iterate is still accurate.
  if (result.relative_gap < 1e-9 && result.primal_infeasibility < 1e-9 &&
      result.dual_infeasibility < 1e-9) {
    result.status = SdpStatus::kOptimal;
  }
  return result;
}

}  // namespace heatsos
