#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "heatsos/exact_linalg.hpp"
#include "heatsos/polynomial.hpp"

namespace heatsos {

/// Monomial vector v of a Gram representation p = v^T Q v, ascending in
/// graded lex order.
struct GramBasis {
  std::vector<std::string> variables;
  std::vector<Monomial> monomials;

  std::size_t size() const { return monomials.size(); }
  bool operator==(const GramBasis&) const = default;
};

struct GramCertificate {
  GramBasis basis;
  /// Numeric Gram matrix (always present).
  Eigen::MatrixXd matrix;
  /// Exact Gram matrix; set once validation succeeded or when the
  /// certificate was supplied in exact form.
  std::optional<RationalMatrix> exact;
  /// Optional rational basis (columns) of a subspace containing range(Q).
  /// Validation rounds inside this face so that singular certificates keep
  /// their kernel exactly.
  std::optional<RationalMatrix> face;
  double min_eigenvalue = 0.0;
  bool validated = false;
};

enum class SosStatus { kSos, kNotSos, kObstructed, kInconclusive };

std::string to_string(SosStatus status);

struct SosVerdict {
  SosStatus status = SosStatus::kInconclusive;
  std::optional<GramCertificate> certificate;
  /// Optimal lambda of max{lambda : Q - lambda I psd} on the coefficient
  /// normalized problem (max |coef| = 1), in the last face solved.
  double margin = 0.0;
  int face_reductions = 0;
  int sdp_iterations = 0;
  std::string diagnostic;
};

struct SosOptions {
  double tolerance = 1e-9;
  bool use_newton_filter = false;
  /// Run certificate_validate on every SOS verdict.
  bool validate = false;
  /// Assemble the Schur complement with the OpenMP kernel. Off by default:
  /// a single solve is meant to stay on one thread.
  bool parallel = false;
  long max_denominator = 1'000'000;
  int max_face_reductions = 8;
};

/// All monomials of degree <= deg(p)/2, or only those whose doubles lie in
/// the Newton polytope of p. Odd degree throws DomainError.
GramBasis gram_basis(const Polynomial& p, bool use_newton_filter);

/// Repeatedly drops monomials m for which 2m is neither in the support of p
/// nor a sum of two distinct basis monomials; such m must carry a zero row in
/// every Gram matrix of p.
GramBasis prune_diagonally_inconsistent(const Polynomial& p, GramBasis basis);

SosVerdict sos_feasibility(const Polynomial& p, const SosOptions& options = {});
inline SosVerdict sos_feasibility(const Polynomial& p, double tolerance) {
  SosOptions options;
  options.tolerance = tolerance;
  return sos_feasibility(p, options);
}

/// Exact check of cert against p. Uses cert.exact directly if present;
/// otherwise rounds the numeric matrix (inside cert.face, or inside the
/// numerically detected range) to rationals, projects onto the coefficient
/// matching subspace and tests the result with exact LDL^T. On success stores
/// the exact matrix and marks the certificate validated.
bool certificate_validate(const Polynomial& p, GramCertificate& cert, long max_denominator = 1'000'000);

/// Exact Gram matrix of p built directly (no rounding): true iff Q is psd and
/// v^T Q v == p.
bool gram_matrix_represents(const Polynomial& p, const GramBasis& basis, const RationalMatrix& q);

/// True iff the top-degree homogeneous part of f is certified not SOS.
bool highest_degree_obstruction(const Polynomial& f, const SosOptions& options = {});
inline bool highest_degree_obstruction(const Polynomial& f, double tolerance) {
  SosOptions options;
  options.tolerance = tolerance;
  return highest_degree_obstruction(f, options);
}

/// Gram matrix of sum_i weights[i] * squares[i]^2 in the given basis; throws
/// StructuralError if a square uses a monomial outside the basis.
RationalMatrix gram_from_squares(const GramBasis& basis, const std::vector<Polynomial>& squares,
                                 const std::vector<Rational>& weights);

}  // namespace heatsos
