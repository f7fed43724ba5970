#include "siggeo/signal.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "siggeo/errors.hpp"

namespace siggeo {

void validate(const Signal& s) {
  if (s.values.size() < 2) {
    throw MalformedSignalError("signal must hold at least 2 samples");
  }
  if (!(s.dt > 0.0) || !std::isfinite(s.dt)) {
    throw MalformedSignalError("signal dt must be finite and > 0");
  }
  for (double v : s.values) {
    if (!std::isfinite(v)) {
      throw MalformedSignalError("signal contains a non-finite value");
    }
  }
}

Signal resample_uniform(const Signal& s, std::size_t n_target) {
  const std::size_t n_in = s.values.size();
  if (n_in < 2) {
    throw MalformedSignalError("resample_uniform: input shorter than 2 samples");
  }
  if (n_target < 2) {
    throw InvalidArgumentError("resample_uniform: n_target must be >= 2");
  }

  Signal out;
  out.values.resize(n_target);
  out.dt = s.duration() / static_cast<double>(n_target - 1);
  out.t0 = s.t0;
  out.id = s.id;

  out.values.front() = s.values.front();
  out.values.back() = s.values.back();
  for (std::size_t j = 1; j + 1 < n_target; ++j) {
    // Position of output sample j on the input grid, in units of input dt.
    const double pos = static_cast<double>(j) *
                       static_cast<double>(n_in - 1) /
                       static_cast<double>(n_target - 1);
    std::size_t k = static_cast<std::size_t>(pos);
    if (k > n_in - 2) k = n_in - 2;
    const double frac = pos - static_cast<double>(k);
    out.values[j] = s.values[k] + frac * (s.values[k + 1] - s.values[k]);
  }
  return out;
}

Signal normalize_max_abs(const Signal& s) {
  double peak = 0.0;
  for (double v : s.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) {
    throw DegenerateSignalError("normalize_max_abs: all-zero signal");
  }
  Signal out = s;
  for (double& v : out.values) v /= peak;
  return out;
}

Signal l2_normalize(const Signal& s) {
  double sumsq = 0.0;
  for (double v : s.values) sumsq += v * v;
  const double norm = std::sqrt(sumsq);
  if (norm == 0.0) {
    throw DegenerateSignalError("l2_normalize: zero vector");
  }
  Signal out = s;
  for (double& v : out.values) v /= norm;
  return out;
}

Signal detrend_linear(const Signal& s) {
  const std::size_t n = s.values.size();
  if (n < 2) {
    throw MalformedSignalError("detrend_linear: input shorter than 2 samples");
  }

  // Least squares of value against sample index i = 0..n-1.
  const double nn = static_cast<double>(n);
  const double mean_i = (nn - 1.0) / 2.0;
  double mean_v = 0.0;
  for (double v : s.values) mean_v += v;
  mean_v /= nn;

  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double di = static_cast<double>(i) - mean_i;
    sxx += di * di;
    sxy += di * (s.values[i] - mean_v);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  const double intercept = mean_v - slope * mean_i;

  Signal out = s;
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = s.values[i] - (slope * static_cast<double>(i) + intercept);
  }
  return out;
}

Signal rms_envelope(const Signal& s, std::size_t window) {
  const std::size_t n = s.values.size();
  if (window == 0 || window > n) {
    throw InvalidWindowError("rms_envelope: window must be in [1, length]");
  }

  const std::size_t left = (window - 1) / 2;
  const std::size_t right = window / 2;  // window = left + right + 1

  Signal out = s;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= left ? i - left : 0;
    const std::size_t hi = std::min(n - 1, i + right);
    const std::size_t count = hi - lo + 1;
    if (count == 1) {
      out.values[i] = std::abs(s.values[i]);
      continue;
    }
    double sum = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) {
      sum += s.values[j] * s.values[j];
    }
    out.values[i] = std::sqrt(sum / static_cast<double>(count));
  }
  return out;
}

}  // namespace siggeo
