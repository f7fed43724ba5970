#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace siggeo {

// Uniformly sampled real-valued trace on [t0, t0 + (n-1)*dt].
struct Signal {
  std::vector<double> values;
  double dt = 1.0;   // seconds per sample, > 0
  double t0 = 0.0;   // seconds
  std::string id;

  std::size_t size() const { return values.size(); }
  double duration() const {
    return values.empty() ? 0.0 : static_cast<double>(values.size() - 1) * dt;
  }
};

// Throws MalformedSignalError unless: length >= 2, every value finite, dt > 0.
void validate(const Signal& s);

// Piecewise-linear resampling onto n_target uniform points spanning the same
// duration. Endpoints are copied verbatim.
Signal resample_uniform(const Signal& s, std::size_t n_target);

// Scale so that max |value| == 1. Idempotent; shape preserved.
Signal normalize_max_abs(const Signal& s);

// Scale to unit Euclidean norm.
Signal l2_normalize(const Signal& s);

// Subtract the least-squares line fitted against sample index.
Signal detrend_linear(const Signal& s);

// Sliding root-mean-square with a centered window, shrunk at the trace ends.
// Output has the same length and grid as the input.
Signal rms_envelope(const Signal& s, std::size_t window);

}  // namespace siggeo
