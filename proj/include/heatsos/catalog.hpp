#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heatsos/polynomial.hpp"

namespace heatsos {

/// Classical non-negative polynomials that are not sums of squares, plus the
/// homogeneous Motzkin form. Names: motzkin, robinson, choi_lam, schmudgen,
/// bcj, harris, homogeneous_motzkin.
std::vector<std::string> example_names();
std::optional<Polynomial> example_polynomial(std::string_view name);

}  // namespace heatsos
