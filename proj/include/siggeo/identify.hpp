#pragma once

#include <cstddef>

#include "siggeo/metrics.hpp"
#include "siggeo/signal.hpp"

namespace siggeo {

inline constexpr double kDefaultCalibrationQuantile = 0.99;
inline constexpr double kDefaultCalibrationInflation = 1.5;

struct DetectionResult {
  double distance = 0.0;
  double epsilon = 0.0;
  bool accepted = false;  // accepted iff distance < epsilon (strict)
  std::size_t nearest = 0;
};

// Tolerance from the set's own geometry: the given quantile of leave-one-out
// nearest-neighbor distances, inflated. Quantiles use the nearest-rank rule
// (quantile 1 -> the maximum), so the result is deterministic.
double calibrate_epsilon(const SignalSet& s, MetricKind metric,
                         double quantile = kDefaultCalibrationQuantile,
                         double inflation = kDefaultCalibrationInflation);

// Accept x iff its distance to the nearest member of s is strictly below
// epsilon. epsilon = 0 therefore rejects everything, exact members included.
DetectionResult classify(const Signal& x, const SignalSet& s, MetricKind metric,
                         double epsilon);

}  // namespace siggeo
