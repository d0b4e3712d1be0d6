#include "heatsos/catalog.hpp"

#include <utility>

namespace heatsos {

namespace {

using Terms = std::vector<std::pair<long, Monomial>>;

Polynomial from_terms(std::vector<std::string> vars, const Terms& terms) {
  Polynomial p(std::move(vars));
  for (const auto& [c, m] : terms) p.add_term(m, c);
  return p;
}

Polynomial motzkin() {
  return from_terms({"x", "y"}, {{1, {0, 0}}, {-3, {2, 2}}, {1, {4, 2}}, {1, {2, 4}}});
}

Polynomial schmudgen() {
  const std::vector<std::string> v{"x", "y"};
  const auto x = Polynomial::variable(v, 0);
  const auto y = Polynomial::variable(v, 1);
  const auto c = [&](long k) { return Polynomial::constant(v, k); };
  const auto first = (y * y - x * x) * x * (x + c(2)) * (x * (x - c(2)) + c(2) * (y * y - c(4)));
  const auto cx = x * x * x - c(4) * x;
  const auto cy = y * y * y - c(4) * y;
  return first + c(200) * (cx * cx + cy * cy);
}

}  // namespace

std::vector<std::string> example_names() {
  return {"motzkin", "robinson", "choi_lam", "schmudgen", "bcj", "harris", "homogeneous_motzkin"};
}

std::optional<Polynomial> example_polynomial(std::string_view name) {
  if (name == "motzkin") return motzkin();
  if (name == "robinson") {
    return from_terms({"x", "y"}, {{1, {0, 0}}, {-1, {2, 0}}, {-1, {0, 2}}, {-1, {4, 0}}, {3, {2, 2}},
                                   {-1, {0, 4}}, {1, {6, 0}}, {-1, {4, 2}}, {-1, {2, 4}}, {1, {0, 6}}});
  }
  if (name == "choi_lam") {
    return from_terms({"x", "y", "z"},
                      {{1, {0, 0, 0}}, {-4, {1, 1, 1}}, {1, {2, 2, 0}}, {1, {2, 0, 2}}, {1, {0, 2, 2}}});
  }
  if (name == "schmudgen") return schmudgen();
  if (name == "bcj") {
    return from_terms({"x", "y"}, {{1, {0, 0}}, {-1, {2, 2}}, {1, {4, 2}}, {1, {2, 4}}});
  }
  if (name == "harris") {
    return from_terms({"x", "y"},
                      {{16, {10, 0}}, {-36, {8, 2}}, {20, {6, 4}}, {20, {4, 6}}, {-36, {2, 8}}, {16, {0, 10}},
                       {-36, {8, 0}}, {57, {6, 2}}, {-38, {4, 4}}, {57, {2, 6}}, {-36, {0, 8}},
                       {20, {6, 0}}, {-38, {4, 2}}, {-38, {2, 4}}, {20, {0, 6}},
                       {20, {4, 0}}, {57, {2, 2}}, {20, {0, 4}},
                       {-36, {2, 0}}, {-36, {0, 2}}, {16, {0, 0}}});
  }
  if (name == "homogeneous_motzkin") {
    return from_terms({"x", "y", "z"}, {{1, {0, 0, 6}}, {-3, {2, 2, 2}}, {1, {4, 2, 0}}, {1, {2, 4, 0}}});
  }
  return std::nullopt;
}

}  // namespace heatsos
