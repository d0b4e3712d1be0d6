#pragma once

#include <stdexcept>
#include <string>

#include "heatsos/polynomial.hpp"
#include "heatsos/sos.hpp"

namespace heatsos {

enum class ThresholdStatus { kBracketed, kAlreadySos, kObstructed, kNoEntryFound };

std::string to_string(ThresholdStatus status);

/// Bracket [lower, upper] for the SOS entry time of the heat evolution.
/// BRACKETED: NOT_SOS at lower, SOS at upper. NO_ENTRY_FOUND only means that
/// no entry happened up to t_max, not that the polynomial never enters.
struct ThresholdResult {
  ThresholdStatus status = ThresholdStatus::kNoEntryFound;
  Rational lower;
  Rational upper;
  int probes = 0;
};

/// Raised when a probe stays INCONCLUSIVE after all perturbed retries.
class ThresholdAborted : public std::runtime_error {
 public:
  ThresholdAborted(const std::string& message, ThresholdResult partial)
      : std::runtime_error(message), partial_(std::move(partial)) {}
  const ThresholdResult& partial() const { return partial_; }

 private:
  ThresholdResult partial_;
};

struct ThresholdOptions {
  SosOptions sos;
  /// Retries at t + k * width / 10 after an INCONCLUSIVE probe.
  int retries = 3;
};

ThresholdResult find_sos_threshold(const Polynomial& f, const Rational& width, const Rational& t_max = 1,
                                   const ThresholdOptions& options = {});

}  // namespace heatsos
