#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "siggeo/signal.hpp"

namespace siggeo {

enum class MetricKind { Sup, Euclidean, Cosine };

// Accepts "sup", "l2" (or "euclidean"), "cosine".
MetricKind metric_from_name(std::string_view name);
std::string_view metric_name(MetricKind m);

// Ordered collection of equal-length signals with a designated reference
// trace. The reference is the anchor every radius is measured from.
struct SignalSet {
  std::vector<Signal> signals;
  std::size_t ref_index = 0;

  // Validates: nonempty, uniform length, ref_index in range.
  static SignalSet from(std::vector<Signal> signals, std::size_t ref_index = 0);

  const Signal& reference() const { return signals[ref_index]; }
  std::size_t size() const { return signals.size(); }
  std::size_t length() const { return signals.empty() ? 0 : signals.front().size(); }
};

// sup / euclidean / cosine distance between equal-length signals.
// Cosine is 1 - <a,b>/(|a||b|), range [0, 2]; both operands must be nonzero.
double pairwise_distance(MetricKind m, const Signal& a, const Signal& b);

// max over a in A of min over b in B of pairwise_distance. Exact linear scan.
double directed_hausdorff(MetricKind m, const SignalSet& a, const SignalSet& b);

// Symmetric Hausdorff: max of the two directed values.
double hausdorff(MetricKind m, const SignalSet& a, const SignalSet& b);

struct NearestResult {
  double distance = 0.0;
  std::size_t nearest = 0;  // index of the minimizer; ties -> lowest index
};

// Distance from x to its nearest member of s.
NearestResult point_set_distance(MetricKind m, const Signal& x, const SignalSet& s);

}  // namespace siggeo
