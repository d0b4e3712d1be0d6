#pragma once

#include <vector>

#include "heatsos/polynomial.hpp"

namespace heatsos {

/// Exact test whether `target` lies in the convex hull of `points`, decided
/// by a phase-one simplex over the rationals (Bland's rule).
bool convex_hull_contains(const std::vector<Monomial>& points, const std::vector<Rational>& target);

/// Support of p as a list of exponent vectors.
std::vector<Monomial> support(const Polynomial& p);

}  // namespace heatsos
