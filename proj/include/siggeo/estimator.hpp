#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "siggeo/metrics.hpp"
#include "siggeo/signal.hpp"

namespace siggeo {

// Margin defaults for the streaming new-variability event: one percent of the
// current radius, floored so the very first observations can still trigger.
inline constexpr double kDefaultMarginFraction = 0.01;
inline constexpr double kDefaultMarginFloor = 1e-6;

inline constexpr double kDefaultSaturationTau = 0.01;

enum class RadiusEvent { None, NewVariability };

struct RadiusObservation {
  std::size_t n = 0;     // 1-based observation count
  double distance = 0.0; // d_n, distance of this observation to the reference
  double radius = 0.0;   // running max after this observation
};

// Streaming estimator of the maximum distance to a fixed reference trace.
// The radius is a running maximum, so it is monotone nondecreasing and its
// final value equals the batch maximum for any observation order.
class RadiusState {
 public:
  // Margin grows with the radius: max(floor, fraction * current radius).
  static RadiusState with_relative_margin(Signal x0, MetricKind metric,
                                          double fraction = kDefaultMarginFraction,
                                          double floor = kDefaultMarginFloor);
  // Fixed margin; delta = 0 flags any strict increase of the radius.
  static RadiusState with_absolute_margin(Signal x0, MetricKind metric,
                                          double delta);

  // Folds one observation into the state. Returns NewVariability when the
  // observation lies outside the current radius by more than the margin.
  RadiusEvent observe(const Signal& x);

  double radius() const { return radius_; }
  std::size_t count() const { return history_.size(); }
  double margin() const;
  MetricKind metric() const { return metric_; }
  const Signal& reference() const { return x0_; }
  const std::vector<RadiusObservation>& history() const { return history_; }

 private:
  RadiusState(Signal x0, MetricKind metric) : x0_(std::move(x0)), metric_(metric) {}

  Signal x0_;
  MetricKind metric_;
  double radius_ = 0.0;
  bool relative_margin_ = true;
  double margin_fraction_ = kDefaultMarginFraction;
  double margin_floor_ = kDefaultMarginFloor;
  double margin_abs_ = 0.0;
  std::vector<RadiusObservation> history_;
};

// Max distance from the set's reference trace to any member.
double batch_radius(const SignalSet& s, MetricKind metric);

struct StabilityMetrics {
  double dh_half = 0.0;   // Hausdorff distance between the set and its first half
  double r_max = 0.0;     // batch radius
  double r_bar = 0.0;     // mean distance to the reference
  double log_bbox = 0.0;  // sum over coordinates of log(range + 1e-12)
};

// Internal-stability summary of a signal set: how much of the set's geometry
// is already pinned down by its first half. Requires at least 2 members.
StabilityMetrics stability_metrics(const SignalSet& x, MetricKind metric);

struct RadiusTraceRow {
  std::size_t n = 0;
  double r_hat_mean = 0.0;
  double r_hat_max = 0.0;
  double dh_half = 0.0;
  double r_bar = 0.0;
  double log_bbox = 0.0;
};

struct RadiusTrace {
  std::vector<RadiusTraceRow> rows;
  std::size_t trials = 0;
  MetricKind metric = MetricKind::Cosine;
  std::uint64_t seed = 0;
};

// Monte-Carlo radius curve over random subsets of increasing size. Every
// subset contains the reference trace; per trial the subsets are nested
// (prefixes of one random permutation), which makes r_hat_max monotone in n.
// Stability metrics are computed on the last trial's subset of each size.
// Bit-reproducible for a fixed seed.
RadiusTrace mc_radius_curve(const SignalSet& s, MetricKind metric,
                            const std::vector<std::size_t>& sizes,
                            std::size_t trials, std::uint64_t seed);

struct SaturationVerdict {
  std::optional<std::size_t> n_sat;  // subset size of the first saturated row
  double tau = kDefaultSaturationTau;
  std::size_t window = 0;
};

// max(3 rows, 20% of rows), the default trailing window for saturation.
std::size_t default_saturation_window(std::size_t rows);

// First row whose trailing-window relative growth of r_hat_max drops below
// tau. The verdict's n_sat is that row's subset size; absent when the curve
// never flattens within the trace.
SaturationVerdict detect_saturation(const RadiusTrace& trace, double tau,
                                    std::size_t window);

}  // namespace siggeo
