#pragma once

#include <string>

#include <json.hpp>

#include "heatsos/polynomial.hpp"

namespace heatsos {

/// {"vars": [...], "terms": [{"coef": "p/q", "exp": [...]}, ...]}.
/// Terms are emitted in descending graded lex order.
nlohmann::json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TimePolynomial& p);
TimePolynomial time_polynomial_from_json(const nlohmann::json& j);

/// Serialized text as written by the CLI (two-space indent, trailing newline).
std::string dump(const nlohmann::json& j);

/// Raised for malformed JSON text; carries a 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses JSON text, converting library errors into ParseError.
nlohmann::json parse_json_text(const std::string& text);

}  // namespace heatsos
