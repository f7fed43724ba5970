#include "siggeo/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "siggeo/errors.hpp"
#include "siggeo/rng.hpp"

namespace siggeo {

RadiusState RadiusState::with_relative_margin(Signal x0, MetricKind metric,
                                              double fraction, double floor) {
  if (fraction < 0.0 || floor < 0.0) {
    throw InvalidArgumentError("margin fraction and floor must be >= 0");
  }
  RadiusState state(std::move(x0), metric);
  state.relative_margin_ = true;
  state.margin_fraction_ = fraction;
  state.margin_floor_ = floor;
  return state;
}

RadiusState RadiusState::with_absolute_margin(Signal x0, MetricKind metric,
                                              double delta) {
  if (delta < 0.0) {
    throw InvalidArgumentError("margin must be >= 0");
  }
  RadiusState state(std::move(x0), metric);
  state.relative_margin_ = false;
  state.margin_abs_ = delta;
  return state;
}

double RadiusState::margin() const {
  if (!relative_margin_) return margin_abs_;
  return std::max(margin_floor_, margin_fraction_ * radius_);
}

RadiusEvent RadiusState::observe(const Signal& x) {
  if (x.size() != x0_.size()) {
    throw ShapeError("observation length differs from reference");
  }
  const double d = pairwise_distance(metric_, x, x0_);
  const RadiusEvent event = d > radius_ + margin() ? RadiusEvent::NewVariability
                                                   : RadiusEvent::None;
  radius_ = std::max(radius_, d);
  history_.push_back({history_.size() + 1, d, radius_});
  return event;
}

double batch_radius(const SignalSet& s, MetricKind metric) {
  if (s.signals.empty()) {
    throw EmptySetError("batch_radius over an empty set");
  }
  const Signal& x0 = s.reference();
  double r = 0.0;
  for (const Signal& x : s.signals) {
    r = std::max(r, pairwise_distance(metric, x, x0));
  }
  return r;
}

namespace {

double log_bbox_volume(const std::vector<const Signal*>& members) {
  const std::size_t len = members.front()->size();
  double acc = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    double lo = members.front()->values[i];
    double hi = lo;
    for (const Signal* s : members) {
      lo = std::min(lo, s->values[i]);
      hi = std::max(hi, s->values[i]);
    }
    acc += std::log((hi - lo) + 1e-12);
  }
  return acc;
}

}  // namespace

StabilityMetrics stability_metrics(const SignalSet& x, MetricKind metric) {
  if (x.size() < 2) {
    throw InsufficientDataError("stability metrics need at least 2 signals");
  }

  const std::size_t half = (x.size() + 1) / 2;  // first ceil(n/2) members
  SignalSet first_half;
  first_half.signals.assign(x.signals.begin(),
                            x.signals.begin() + static_cast<std::ptrdiff_t>(half));
  first_half.ref_index = 0;

  StabilityMetrics m;
  m.dh_half = hausdorff(metric, x, first_half);
  m.r_max = batch_radius(x, metric);

  double sum = 0.0;
  for (const Signal& s : x.signals) {
    sum += pairwise_distance(metric, s, x.reference());
  }
  m.r_bar = sum / static_cast<double>(x.size());

  std::vector<const Signal*> members;
  members.reserve(x.size());
  for (const Signal& s : x.signals) members.push_back(&s);
  m.log_bbox = log_bbox_volume(members);
  return m;
}

RadiusTrace mc_radius_curve(const SignalSet& s, MetricKind metric,
                            const std::vector<std::size_t>& sizes,
                            std::size_t trials, std::uint64_t seed) {
  if (sizes.empty()) {
    throw InvalidArgumentError("mc_radius_curve: no subset sizes given");
  }
  if (trials == 0) {
    throw InvalidArgumentError("mc_radius_curve: trials must be >= 1");
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0 || sizes[i] > s.size()) {
      throw SamplingError("subset size outside [1, set size]");
    }
    if (i > 0 && sizes[i] <= sizes[i - 1]) {
      throw InvalidArgumentError("subset sizes must be strictly increasing");
    }
  }

  // Distances to the reference never change, so compute them once; a subset's
  // radius is then a max over precomputed entries.
  std::vector<double> dist(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    dist[i] = pairwise_distance(metric, s.signals[i], s.reference());
  }

  // Per trial: one random permutation with the reference pinned first.
  // Subsets of growing size are prefixes of it, hence nested.
  std::vector<std::vector<double>> radius_per_trial(
      trials, std::vector<double>(sizes.size(), 0.0));
  std::vector<std::size_t> last_perm;

  std::vector<std::size_t> pool;
  pool.reserve(s.size() - 1);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    pool.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i != s.ref_index) pool.push_back(i);
    }
    for (std::size_t i = pool.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng.next_u64() % i);
      std::swap(pool[i - 1], pool[j]);
    }

    std::vector<std::size_t> perm;
    perm.reserve(s.size());
    perm.push_back(s.ref_index);
    perm.insert(perm.end(), pool.begin(), pool.end());

    double running = 0.0;
    std::size_t row = 0;
    for (std::size_t k = 0; k < perm.size() && row < sizes.size(); ++k) {
      running = std::max(running, dist[perm[k]]);
      while (row < sizes.size() && k + 1 == sizes[row]) {
        radius_per_trial[t][row] = running;
        ++row;
      }
    }
    if (t + 1 == trials) last_perm = std::move(perm);
  }

  RadiusTrace trace;
  trace.trials = trials;
  trace.metric = metric;
  trace.seed = seed;
  trace.rows.resize(sizes.size());

  for (std::size_t row = 0; row < sizes.size(); ++row) {
    RadiusTraceRow& r = trace.rows[row];
    r.n = sizes[row];

    double sum = 0.0;
    double peak = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      sum += radius_per_trial[t][row];
      peak = std::max(peak, radius_per_trial[t][row]);
    }
    r.r_hat_mean = sum / static_cast<double>(trials);
    r.r_hat_max = peak;

    // Stability metrics on the last trial's subset of this size.
    SignalSet subset;
    subset.ref_index = 0;
    subset.signals.reserve(sizes[row]);
    for (std::size_t k = 0; k < sizes[row]; ++k) {
      subset.signals.push_back(s.signals[last_perm[k]]);
    }
    if (subset.size() >= 2) {
      const StabilityMetrics m = stability_metrics(subset, metric);
      r.dh_half = m.dh_half;
      r.r_bar = m.r_bar;
      r.log_bbox = m.log_bbox;
    } else {
      std::vector<const Signal*> single{&subset.signals.front()};
      r.dh_half = 0.0;
      r.r_bar = 0.0;
      r.log_bbox = static_cast<double>(subset.length()) * std::log(1e-12);
    }
  }
  return trace;
}

std::size_t default_saturation_window(std::size_t rows) {
  return std::max<std::size_t>(3, (rows + 4) / 5);
}

SaturationVerdict detect_saturation(const RadiusTrace& trace, double tau,
                                    std::size_t window) {
  if (trace.rows.empty()) {
    throw InvalidArgumentError("detect_saturation: empty trace");
  }
  if (window == 0) {
    throw InvalidArgumentError("detect_saturation: window must be >= 1");
  }
  if (!(tau > 0.0) || !(tau < 1.0)) {
    throw InvalidArgumentError("detect_saturation: tau must lie in (0, 1)");
  }

  SaturationVerdict verdict;
  verdict.tau = tau;
  verdict.window = window;
  for (std::size_t i = window; i < trace.rows.size(); ++i) {
    const double now = trace.rows[i].r_hat_max;
    const double before = trace.rows[i - window].r_hat_max;
    const double growth = (now - before) / std::max(now, 1e-12);
    if (growth < tau) {
      verdict.n_sat = trace.rows[i].n;
      break;
    }
  }
  return verdict;
}

}  // namespace siggeo
