#include "heatsos/poly_json.hpp"

namespace heatsos {

using nlohmann::json;

json to_json(const Polynomial& p) {
  json terms = json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    terms.push_back({{"coef", to_string(it->second)}, {"exp", it->first.exponents()}});
  }
  return {{"vars", p.variables()}, {"terms", std::move(terms)}};
}

Polynomial polynomial_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("terms")) {
    throw StructuralError("polynomial JSON needs \"vars\" and \"terms\"");
  }
  const auto& vars = j.at("vars");
  if (!vars.is_array()) throw StructuralError("\"vars\" must be an array of names");
  std::vector<std::string> names;
  for (const auto& v : vars) {
    if (!v.is_string()) throw StructuralError("variable names must be strings");
    names.push_back(v.get<std::string>());
  }
  Polynomial p(names);
  for (const auto& term : j.at("terms")) {
    if (!term.contains("coef") || !term.contains("exp")) {
      throw StructuralError("each term needs \"coef\" and \"exp\"");
    }
    const auto& coef = term.at("coef");
    Rational c = coef.is_string() ? parse_rational(coef.get<std::string>())
                 : coef.is_number_integer() ? Rational(coef.get<long>())
                                            : throw StructuralError("\"coef\" must be a string");
    const auto& exp = term.at("exp");
    if (!exp.is_array() || exp.size() != names.size()) {
      throw StructuralError("exponent array length must match \"vars\"");
    }
    std::vector<unsigned> e;
    for (const auto& v : exp) {
      if (!v.is_number_unsigned()) throw StructuralError("exponents must be non-negative integers");
      e.push_back(v.get<unsigned>());
    }
    p.add_term(Monomial(std::move(e)), c);
  }
  return p;
}

json to_json(const TimePolynomial& p) { return to_json(p.poly()); }

TimePolynomial time_polynomial_from_json(const json& j) {
  return TimePolynomial(polynomial_from_json(j));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(message + " (line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ")"),
      line_(line),
      column_(column) {}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(e.what(), line, column);
  }
}

}  // namespace heatsos
