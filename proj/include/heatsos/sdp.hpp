#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace heatsos {

/// Standard-form dense SDP pair
///
///   (P)  min <C, X>  s.t. <A_k, X> = b_k,  X psd
///   (D)  max b^T y   s.t. sum_k y_k A_k + Z = C,  Z psd
///
/// All matrices are symmetric, dimension `dim`.
struct SdpProblem {
  Eigen::MatrixXd c;
  std::vector<Eigen::MatrixXd> a;
  Eigen::VectorXd b;

  Eigen::Index dim() const { return c.rows(); }
  std::size_t constraint_count() const { return a.size(); }
};

struct SdpOptions {
  int max_iterations = 150;
  double gap_tolerance = 1e-13;
  double feasibility_tolerance = 1e-12;
  /// Fraction of the distance to the cone boundary taken per step.
  double step_fraction = 0.98;
  bool parallel_schur = true;
};

enum class SdpStatus { kOptimal, kMaxIterations, kNumericalFailure };

struct SdpResult {
  SdpStatus status = SdpStatus::kNumericalFailure;
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  Eigen::MatrixXd z;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double relative_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  std::string diagnostic;
};

/// Infeasible-start primal-dual path following with the HKM search direction
/// and Mehrotra predictor-corrector steps. Dense Cholesky on the Schur
/// complement; intended for small problems (dimension a few dozen).
SdpResult solve_sdp(const SdpProblem& problem, const SdpOptions& options = {});

}  // namespace heatsos
