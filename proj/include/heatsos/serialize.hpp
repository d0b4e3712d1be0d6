#pragma once

// JSON forms of the engine results. Rationals are "p/q" strings; floats that
// must round-trip exactly are "%.17g" strings.

#include <json.hpp>

#include "heatsos/atom_flow.hpp"
#include "heatsos/burgers.hpp"
#include "heatsos/sos.hpp"
#include "heatsos/threshold.hpp"

namespace heatsos {

std::string format_double(double value);
double parse_double(const std::string& text);

nlohmann::json to_json(const GramBasis& basis);
GramBasis gram_basis_from_json(const nlohmann::json& j);

/// {"basis", "matrix", "minEigenvalue", "validated", optional "face"}. The
/// matrix holds "p/q" strings once an exact matrix is known, decimal strings
/// otherwise. On reading, a matrix made only of "p" or "p/q" entries is taken
/// as exact.
nlohmann::json to_json(const GramCertificate& cert);
GramCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SosVerdict& verdict);

nlohmann::json to_json(const ThresholdResult& result);
ThresholdResult threshold_result_from_json(const nlohmann::json& j);

/// {"k,p": "p/q", ...}
nlohmann::json to_json(const BurgersMomentTable& table);
BurgersMomentTable burgers_table_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MomentSequence& s);

/// [{"c": 1.0, "x": [1.0]}, ...]
nlohmann::json to_json(const AtomicMeasure& mu);
AtomicMeasure atomic_measure_from_json(const nlohmann::json& j);

}  // namespace heatsos
