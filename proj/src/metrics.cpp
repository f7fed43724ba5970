#include "siggeo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "siggeo/errors.hpp"

namespace siggeo {

MetricKind metric_from_name(std::string_view name) {
  if (name == "sup") return MetricKind::Sup;
  if (name == "l2" || name == "euclidean") return MetricKind::Euclidean;
  if (name == "cosine") return MetricKind::Cosine;
  throw ConfigError("unknown metric: " + std::string(name));
}

std::string_view metric_name(MetricKind m) {
  switch (m) {
    case MetricKind::Sup: return "sup";
    case MetricKind::Euclidean: return "l2";
    case MetricKind::Cosine: return "cosine";
  }
  return "?";
}

SignalSet SignalSet::from(std::vector<Signal> signals, std::size_t ref_index) {
  if (signals.empty()) {
    throw EmptySetError("signal set must be nonempty");
  }
  const std::size_t len = signals.front().size();
  for (const Signal& s : signals) {
    if (s.size() != len) {
      throw ShapeError("signal set members must share one length");
    }
  }
  if (ref_index >= signals.size()) {
    throw InvalidArgumentError("reference index out of range");
  }
  SignalSet set;
  set.signals = std::move(signals);
  set.ref_index = ref_index;
  return set;
}

namespace {

void require_same_length(const Signal& a, const Signal& b) {
  if (a.size() != b.size()) {
    throw ShapeError("signals differ in length");
  }
}

double sup_distance(const Signal& a, const Signal& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a.values[i] - b.values[i]));
  }
  return d;
}

double euclidean_distance(const Signal& a, const Signal& b) {
  double sumsq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a.values[i] - b.values[i];
    sumsq += diff * diff;
  }
  return std::sqrt(sumsq);
}

double cosine_distance(const Signal& a, const Signal& b) {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
  }
  if (na == 0.0 || nb == 0.0) {
    throw DegenerateSignalError("cosine distance needs nonzero operands");
  }
  const double sim = std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
  return 1.0 - sim;
}

}  // namespace

double pairwise_distance(MetricKind m, const Signal& a, const Signal& b) {
  require_same_length(a, b);
  switch (m) {
    case MetricKind::Sup: return sup_distance(a, b);
    case MetricKind::Euclidean: return euclidean_distance(a, b);
    case MetricKind::Cosine: return cosine_distance(a, b);
  }
  throw InvalidArgumentError("unhandled metric kind");
}

double directed_hausdorff(MetricKind m, const SignalSet& a, const SignalSet& b) {
  if (a.signals.empty() || b.signals.empty()) {
    throw EmptySetError("hausdorff over an empty set");
  }
  double outer = 0.0;
  for (const Signal& pa : a.signals) {
    double inner = pairwise_distance(m, pa, b.signals.front());
    for (std::size_t j = 1; j < b.signals.size() && inner > 0.0; ++j) {
      inner = std::min(inner, pairwise_distance(m, pa, b.signals[j]));
    }
    outer = std::max(outer, inner);
  }
  return outer;
}

double hausdorff(MetricKind m, const SignalSet& a, const SignalSet& b) {
  return std::max(directed_hausdorff(m, a, b), directed_hausdorff(m, b, a));
}

NearestResult point_set_distance(MetricKind m, const Signal& x, const SignalSet& s) {
  if (s.signals.empty()) {
    throw EmptySetError("point_set_distance over an empty set");
  }
  NearestResult best;
  best.distance = pairwise_distance(m, x, s.signals.front());
  best.nearest = 0;
  for (std::size_t j = 1; j < s.signals.size() && best.distance > 0.0; ++j) {
    const double d = pairwise_distance(m, x, s.signals[j]);
    if (d < best.distance) {
      best.distance = d;
      best.nearest = j;
    }
  }
  return best;
}

}  // namespace siggeo
