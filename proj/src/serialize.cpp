#include "heatsos/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "heatsos/poly_json.hpp"

namespace heatsos {

using nlohmann::json;

namespace {

json rational_matrix_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<std::string>> string_rows(const json& j, const char* what) {
  if (!j.is_array()) throw StructuralError(std::string(what) + " must be an array of rows");
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw StructuralError(std::string(what) + " rows must be arrays");
    std::vector<std::string> out;
    for (const auto& v : row) {
      if (v.is_string()) {
        out.push_back(v.get<std::string>());
      } else if (v.is_number()) {
        out.push_back(format_double(v.get<double>()));
      } else {
        throw StructuralError(std::string(what) + " entries must be strings or numbers");
      }
    }
    rows.push_back(std::move(out));
  }
  return rows;
}

std::optional<Rational> try_rational(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const StructuralError&) {
    return std::nullopt;
  }
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

double parse_double(const std::string& text) {
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  in >> value;
  if (in.fail() || !in.eof()) {
    if (auto q = try_rational(text)) return to_double(*q);
    throw StructuralError("not a number: \"" + text + "\"");
  }
  return value;
}

json to_json(const GramBasis& basis) {
  json monomials = json::array();
  for (const auto& m : basis.monomials) monomials.push_back(m.exponents());
  return {{"vars", basis.variables}, {"monomials", std::move(monomials)}};
}

GramBasis gram_basis_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("monomials")) {
    throw StructuralError("basis JSON needs \"vars\" and \"monomials\"");
  }
  GramBasis basis;
  basis.variables = j.at("vars").get<std::vector<std::string>>();
  for (const auto& m : j.at("monomials")) {
    auto e = m.get<std::vector<unsigned>>();
    if (e.size() != basis.variables.size()) throw StructuralError("basis monomial length must match \"vars\"");
    basis.monomials.emplace_back(std::move(e));
  }
  return basis;
}

json to_json(const GramCertificate& cert) {
  json out{{"basis", to_json(cert.basis)}};
  if (cert.exact) {
    out["matrix"] = rational_matrix_json(*cert.exact);
  } else {
    json rows = json::array();
    for (Eigen::Index r = 0; r < cert.matrix.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < cert.matrix.cols(); ++c) row.push_back(format_double(cert.matrix(r, c)));
      rows.push_back(std::move(row));
    }
    out["matrix"] = std::move(rows);
  }
  out["minEigenvalue"] = format_double(cert.min_eigenvalue);
  out["validated"] = cert.validated;
  if (cert.face) out["face"] = rational_matrix_json(*cert.face);
  return out;
}

GramCertificate certificate_from_json(const json& j) {
  if (!j.is_object() || !j.contains("basis") || !j.contains("matrix")) {
    throw StructuralError("certificate JSON needs \"basis\" and \"matrix\"");
  }
  GramCertificate cert;
  cert.basis = gram_basis_from_json(j.at("basis"));
  const auto rows = string_rows(j.at("matrix"), "matrix");
  const std::size_t n = cert.basis.size();
  if (rows.size() != n) throw StructuralError("matrix size does not match the basis");
  cert.matrix.resize(Eigen::Index(n), Eigen::Index(n));
  RationalMatrix exact(n, n);
  bool all_rational = true;
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) throw StructuralError("matrix must be square");
    for (std::size_t c = 0; c < n; ++c) {
      if (auto q = try_rational(rows[r][c]); q && all_rational) {
        exact(r, c) = *q;
      } else {
        all_rational = false;
      }
      cert.matrix(Eigen::Index(r), Eigen::Index(c)) = parse_double(rows[r][c]);
    }
  }
  if (all_rational) cert.exact = std::move(exact);
  if (j.contains("minEigenvalue")) cert.min_eigenvalue = parse_double(j.at("minEigenvalue").get<std::string>());
  // "validated" is recomputed by certificate_validate, never trusted.
  if (j.contains("face")) {
    const auto face_rows = string_rows(j.at("face"), "face");
    if (face_rows.size() != n) throw StructuralError("face must have one row per basis monomial");
    const std::size_t cols = n == 0 ? 0 : face_rows.front().size();
    RationalMatrix face(n, cols);
    for (std::size_t r = 0; r < n; ++r) {
      if (face_rows[r].size() != cols) throw StructuralError("face rows must have equal length");
      for (std::size_t c = 0; c < cols; ++c) face(r, c) = parse_rational(face_rows[r][c]);
    }
    cert.face = std::move(face);
  }
  return cert;
}

json to_json(const SosVerdict& verdict) {
  json out{{"status", to_string(verdict.status)},
           {"margin", format_double(verdict.margin)},
           {"faceReductions", verdict.face_reductions},
           {"sdpIterations", verdict.sdp_iterations}};
  if (!verdict.diagnostic.empty()) out["diagnostic"] = verdict.diagnostic;
  if (verdict.certificate) out["certificate"] = to_json(*verdict.certificate);
  return out;
}

json to_json(const ThresholdResult& result) {
  return {{"status", to_string(result.status)},
          {"lower", to_string(result.lower)},
          {"upper", to_string(result.upper)},
          {"probes", result.probes}};
}

ThresholdResult threshold_result_from_json(const json& j) {
  ThresholdResult r;
  const auto status = j.at("status").get<std::string>();
  bool known = false;
  for (auto s : {ThresholdStatus::kBracketed, ThresholdStatus::kAlreadySos, ThresholdStatus::kObstructed,
                 ThresholdStatus::kNoEntryFound}) {
    if (to_string(s) == status) {
      r.status = s;
      known = true;
    }
  }
  if (!known) throw StructuralError("unknown threshold status \"" + status + "\"");
  r.lower = parse_rational(j.at("lower").get<std::string>());
  r.upper = parse_rational(j.at("upper").get<std::string>());
  r.probes = j.at("probes").get<int>();
  return r;
}

json to_json(const BurgersMomentTable& table) {
  json out = json::object();
  for (const auto& [key, value] : table.initial) {
    out[std::to_string(key.first) + "," + std::to_string(key.second)] = to_string(value);
  }
  return out;
}

BurgersMomentTable burgers_table_from_json(const json& j) {
  if (!j.is_object()) throw StructuralError("Burgers table must be an object of \"k,p\" keys");
  BurgersMomentTable table;
  for (const auto& [key, value] : j.items()) {
    const auto comma = key.find(',');
    int k = -1;
    int p = -1;
    try {
      std::size_t used = 0;
      k = std::stoi(key.substr(0, comma), &used);
      if (used != comma) k = -1;
      const auto rest = key.substr(comma + 1);
      p = std::stoi(rest, &used);
      if (used != rest.size()) p = -1;
    } catch (const std::exception&) {
      k = -1;
    }
    if (comma == std::string::npos || k < 0 || p < 0) {
      throw StructuralError("bad table key \"" + key + "\" (expected \"k,p\")");
    }
    if (!value.is_string()) throw StructuralError("table values must be \"p/q\" strings");
    table.initial[{k, p}] = parse_rational(value.get<std::string>());
    table.max_k = std::max(table.max_k, k);
    table.max_p = std::max(table.max_p, p);
  }
  return table;
}

json to_json(const MomentSequence& s) {
  json moments = json::array();
  for (const auto& [alpha, value] : s.values) {
    moments.push_back({{"exp", alpha.exponents()}, {"value", format_double(value)}});
  }
  return {{"time", format_double(s.time)},
          {"dimension", s.dimension},
          {"degree", s.degree},
          {"moments", std::move(moments)}};
}

json to_json(const AtomicMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms) atoms.push_back({{"c", a.weight}, {"x", a.location}});
  return atoms;
}

namespace {

// Numbers, or strings holding a rational ("1/3") or a decimal.
double real_from_json(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) throw StructuralError("expected a number or a numeric string");
  const std::string text = v.get<std::string>();
  if (text.find_first_of(".eEin") != std::string::npos) return parse_double(text);
  return to_double(parse_rational(text));
}

}  // namespace

AtomicMeasure atomic_measure_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw StructuralError("atoms must be a non-empty array");
  AtomicMeasure mu;
  for (const auto& a : j) {
    if (!a.is_object() || !a.contains("c") || !a.contains("x")) {
      throw StructuralError("each atom needs \"c\" and \"x\"");
    }
    if (!a.at("x").is_array()) throw StructuralError("atom location \"x\" must be an array");
    Atom atom{real_from_json(a.at("c")), {}};
    for (const auto& xi : a.at("x")) atom.location.push_back(real_from_json(xi));
    mu.atoms.push_back(std::move(atom));
  }
  mu.dimension = mu.atoms.front().location.size();
  mu.validate();
  return mu;
}

}  // namespace heatsos
