#include "heatsos/threshold.hpp"

#include "heatsos/heat_flow.hpp"

namespace heatsos {

std::string to_string(ThresholdStatus status) {
  switch (status) {
    case ThresholdStatus::kBracketed:
      return "BRACKETED";
    case ThresholdStatus::kAlreadySos:
      return "ALREADY_SOS";
    case ThresholdStatus::kObstructed:
      return "OBSTRUCTED";
    case ThresholdStatus::kNoEntryFound:
      return "NO_ENTRY_FOUND";
  }
  return "NO_ENTRY_FOUND";
}

ThresholdResult find_sos_threshold(const Polynomial& f, const Rational& width, const Rational& t_max,
                                   const ThresholdOptions& options) {
  if (width <= 0) throw DomainError("threshold width must be positive");
  if (t_max <= 0) throw DomainError("threshold tMax must be positive");
  const auto degree = f.degree();
  if (degree && *degree % 2 != 0) throw DomainError("threshold search needs even degree");

  ThresholdResult result;
  result.lower = 0;
  result.upper = t_max;

  // Decides SOS at t, nudging t upward on INCONCLUSIVE. Returns the time
  // actually used and whether it was SOS.
  auto probe = [&](const Rational& t) -> std::pair<Rational, bool> {
    std::string last;
    for (int attempt = 0; attempt <= options.retries; ++attempt) {
      const Rational at = t + Rational(attempt) * width / 10;
      ++result.probes;
      const SosVerdict v = sos_feasibility(evolve_at(f, at), options.sos);
      if (v.status == SosStatus::kSos) return {at, true};
      if (v.status == SosStatus::kNotSos) return {at, false};
      last = v.diagnostic;
    }
    throw ThresholdAborted("SOS test stayed inconclusive near t = " + to_string(t) + ": " + last, result);
  };

  if (probe(0).second) {
    result.status = ThresholdStatus::kAlreadySos;
    result.upper = 0;
    return result;
  }
  ++result.probes;
  if (highest_degree_obstruction(f, options.sos)) {
    result.status = ThresholdStatus::kObstructed;
    return result;
  }
  auto [top, top_sos] = probe(t_max);
  if (!top_sos) {
    result.lower = top;
    result.status = ThresholdStatus::kNoEntryFound;
    return result;
  }
  result.upper = top;
  while (result.upper - result.lower > width) {
    const Rational mid = (result.lower + result.upper) / 2;
    auto [at, sos] = probe(mid);
    (sos ? result.upper : result.lower) = at;
  }
  result.status = ThresholdStatus::kBracketed;
  return result;
}

}  // namespace heatsos
