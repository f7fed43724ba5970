#include "siggeo/identify.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "siggeo/errors.hpp"

namespace siggeo {

double calibrate_epsilon(const SignalSet& s, MetricKind metric, double quantile,
                         double inflation) {
  if (s.size() < 2) {
    throw InsufficientDataError("calibration needs at least 2 signals");
  }
  if (!(quantile > 0.0) || quantile > 1.0) {
    throw InvalidArgumentError("quantile must lie in (0, 1]");
  }
  if (inflation < 1.0) {
    throw InvalidArgumentError("inflation must be >= 1");
  }

  std::vector<double> loo(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    double best = -1.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j == i) continue;
      const double d = pairwise_distance(metric, s.signals[i], s.signals[j]);
      if (best < 0.0 || d < best) best = d;
    }
    loo[i] = best;
  }
  std::sort(loo.begin(), loo.end());

  const std::size_t rank = static_cast<std::size_t>(
      std::ceil(quantile * static_cast<double>(loo.size())));
  const std::size_t index = std::min(loo.size() - 1, std::max<std::size_t>(rank, 1) - 1);
  return inflation * loo[index];
}

DetectionResult classify(const Signal& x, const SignalSet& s, MetricKind metric,
                         double epsilon) {
  if (epsilon < 0.0) {
    throw InvalidArgumentError("epsilon must be >= 0");
  }
  const NearestResult nn = point_set_distance(metric, x, s);
  DetectionResult result;
  result.distance = nn.distance;
  result.epsilon = epsilon;
  result.accepted = nn.distance < epsilon;
  result.nearest = nn.nearest;
  return result;
}

}  // namespace siggeo
