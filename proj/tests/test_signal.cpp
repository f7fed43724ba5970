#include "siggeo/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "siggeo/errors.hpp"
#include "test_util.hpp"

using namespace siggeo;

namespace {

// Independent piecewise-linear interpolation, written over explicit time
// arrays and a linear bracket search; the oracle for resample_uniform.
std::vector<double> oracle_interp(const std::vector<double>& values, double dt,
                                  std::size_t n_target) {
  const std::size_t n = values.size();
  const double duration = static_cast<double>(n - 1) * dt;
  const double out_dt = duration / static_cast<double>(n_target - 1);
  std::vector<double> out(n_target);
  for (std::size_t j = 0; j < n_target; ++j) {
    const double t = static_cast<double>(j) * out_dt;
    std::size_t k = 0;
    while (k + 2 < n && static_cast<double>(k + 1) * dt <= t) ++k;
    const double t_k = static_cast<double>(k) * dt;
    const double w = (t - t_k) / dt;
    out[j] = values[k] * (1.0 - w) + values[k + 1] * w;
  }
  out.front() = values.front();
  out.back() = values.back();
  return out;
}

}  // namespace

TEST_CASE("validate rejects malformed signals") {
  Signal s;
  s.values = {1.0};
  CHECK_THROWS_AS(validate(s), MalformedSignalError);

  s.values = {1.0, 2.0};
  s.dt = 0.0;
  CHECK_THROWS_AS(validate(s), MalformedSignalError);

  s.dt = 1.0;
  s.values = {1.0, std::nan("")};
  CHECK_THROWS_AS(validate(s), MalformedSignalError);

  s.values = {1.0, 2.0};
  CHECK_NOTHROW(validate(s));
}

TEST_CASE("resample_uniform keeps a constant signal constant") {
  Signal s;
  s.values = {5.0, 5.0, 5.0, 5.0};
  for (const std::size_t n : {2, 3, 7, 33}) {
    const Signal r = resample_uniform(s, n);
    REQUIRE(r.size() == n);
    for (const double v : r.values) CHECK(v == 5.0);
  }
}

TEST_CASE("resample_uniform reproduces a ramp exactly") {
  Signal s;
  s.values = {0.0, 1.0, 2.0, 3.0};
  s.dt = 1.0;
  const Signal r = resample_uniform(s, 7);
  const std::vector<double> expected{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  REQUIRE(r.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(r.values[i] == doctest::Approx(expected[i]).epsilon(1e-15));
  }
  CHECK(r.duration() == doctest::Approx(s.duration()));
}

TEST_CASE("resample_uniform round trip matches the interpolation oracle") {
  testutil::Lcg rng(2024);
  Signal s = testutil::random_signal(rng, 160, -2.0, 2.0);
  s.dt = 0.01;

  const Signal up = resample_uniform(s, 320);
  const Signal back = resample_uniform(up, 160);

  // Oracle: the same two passes, done by the independent implementation.
  const std::vector<double> oracle_up = oracle_interp(s.values, s.dt, 320);
  const std::vector<double> oracle_back =
      oracle_interp(oracle_up, s.duration() / 319.0, 160);

  double max_dev_impl = 0.0;
  double max_dev_oracle = 0.0;
  for (std::size_t i = 0; i < 160; ++i) {
    CHECK(back.values[i] == doctest::Approx(oracle_back[i]).epsilon(1e-12));
    max_dev_impl = std::max(max_dev_impl, std::abs(back.values[i] - s.values[i]));
    max_dev_oracle =
        std::max(max_dev_oracle, std::abs(oracle_back[i] - s.values[i]));
  }
  CHECK(max_dev_impl <= max_dev_oracle + 1e-12);
}

TEST_CASE("resample_uniform preserves endpoints and range") {
  testutil::Lcg rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    Signal s = testutil::random_signal(rng, 2 + (rng.next() % 64), -3.0, 3.0);
    const std::size_t n_target = 2 + (rng.next() % 200);
    const Signal r = resample_uniform(s, n_target);

    CHECK(r.values.front() == s.values.front());
    CHECK(r.values.back() == s.values.back());

    const auto [in_lo, in_hi] =
        std::minmax_element(s.values.begin(), s.values.end());
    for (const double v : r.values) {
      CHECK(v >= *in_lo - 1e-12);
      CHECK(v <= *in_hi + 1e-12);
    }
  }
}

TEST_CASE("resample_uniform error paths") {
  Signal s;
  s.values = {1.0};
  CHECK_THROWS_AS(resample_uniform(s, 4), MalformedSignalError);
  s.values = {1.0, 2.0};
  CHECK_THROWS_AS(resample_uniform(s, 1), InvalidArgumentError);
}

TEST_CASE("normalize_max_abs scales by the peak") {
  Signal s;
  s.values = {2.0, -4.0, 1.0};
  const Signal n = normalize_max_abs(s);
  CHECK(n.values[0] == 0.5);
  CHECK(n.values[1] == -1.0);
  CHECK(n.values[2] == 0.25);
}

TEST_CASE("normalize_max_abs is idempotent and scale invariant") {
  testutil::Lcg rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    const Signal s = testutil::random_signal(rng, 32, -5.0, 5.0);
    const Signal once = normalize_max_abs(s);
    const Signal twice = normalize_max_abs(once);
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(twice.values[i] == once.values[i]);  // unit peak divides by 1
    }

    Signal scaled = s;
    for (double& v : scaled.values) v *= 37.5;
    const Signal from_scaled = normalize_max_abs(scaled);
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(from_scaled.values[i] ==
            doctest::Approx(once.values[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("normalize_max_abs rejects the zero signal") {
  Signal s;
  s.values = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(normalize_max_abs(s), DegenerateSignalError);
}

TEST_CASE("l2_normalize basics") {
  Signal s;
  s.values = {3.0, 4.0};
  const Signal n = l2_normalize(s);
  CHECK(n.values[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(n.values[1] == doctest::Approx(0.8).epsilon(1e-15));

  // Unit vector stays put.
  const Signal again = l2_normalize(n);
  for (std::size_t i = 0; i < n.size(); ++i) {
    CHECK(again.values[i] == doctest::Approx(n.values[i]).epsilon(1e-15));
  }

  Signal zero;
  zero.values = {0.0, 0.0};
  CHECK_THROWS_AS(l2_normalize(zero), DegenerateSignalError);
}

TEST_CASE("l2_normalize yields unit norm on random vectors") {
  testutil::Lcg rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const Signal s = testutil::random_signal(rng, 64, -10.0, 10.0);
    const Signal n = l2_normalize(s);
    double sumsq = 0.0;
    for (const double v : n.values) sumsq += v * v;
    CHECK(std::sqrt(sumsq) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

namespace {

// Closed-form least-squares line fit against sample index.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit oracle_line_fit(const std::vector<double>& v) {
  const std::size_t n = v.size();
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i);
    sx += x;
    sy += v[i];
    sxx += x * x;
    sxy += x * v[i];
  }
  const double nn = static_cast<double>(n);
  LineFit fit;
  fit.slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / nn;
  return fit;
}

}  // namespace

TEST_CASE("detrend_linear removes a pure line") {
  Signal s;
  for (int i = 0; i < 50; ++i) {
    s.values.push_back(0.75 * i - 12.0);
  }
  const Signal d = detrend_linear(s);
  for (const double v : d.values) {
    CHECK(std::abs(v) < 1e-9);
  }
}

TEST_CASE("detrend_linear keeps the zero signal zero") {
  Signal s;
  s.values.assign(16, 0.0);
  const Signal d = detrend_linear(s);
  for (const double v : d.values) CHECK(v == 0.0);
}

TEST_CASE("detrend_linear recovers a sine over a line") {
  const std::size_t n = 200;
  Signal s;
  std::vector<double> sine(n);
  for (std::size_t i = 0; i < n; ++i) {
    sine[i] = std::sin(2.0 * std::numbers::pi * 3.0 * static_cast<double>(i) /
                       static_cast<double>(n));
    s.values.push_back(sine[i] + 0.03 * static_cast<double>(i) + 2.0);
  }
  const Signal d = detrend_linear(s);

  // Oracle: subtract the closed-form fit directly.
  const LineFit fit = oracle_line_fit(s.values);
  double peak = 1.0;
  for (const double v : s.values) peak = std::max(peak, std::abs(v) + 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double oracle = s.values[i] - (fit.slope * static_cast<double>(i) + fit.intercept);
    CHECK(std::abs(d.values[i] - oracle) < 1e-9);
  }

  // Residual fit of the output is numerically zero.
  const LineFit refit = oracle_line_fit(d.values);
  CHECK(std::abs(refit.slope) < 1e-9 * peak);
  CHECK(std::abs(refit.intercept) < 1e-9 * peak);
}

TEST_CASE("rms_envelope of a constant is its magnitude") {
  Signal s;
  s.values.assign(40, -3.0);
  const Signal r = rms_envelope(s, 8);
  for (const double v : r.values) {
    CHECK(v == doctest::Approx(3.0).epsilon(1e-14));
  }
}

TEST_CASE("rms_envelope window 1 is pointwise magnitude") {
  testutil::Lcg rng(17);
  const Signal s = testutil::random_signal(rng, 64, -2.0, 2.0);
  const Signal r = rms_envelope(s, 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(r.values[i] == std::abs(s.values[i]));
  }
}

TEST_CASE("rms_envelope of a unit sinusoid over one period") {
  // 50 Hz at 8 kHz: one period is exactly 160 samples.
  const double fs = 8000.0;
  const double f = 50.0;
  const std::size_t n = 1600;
  const std::size_t window = 160;
  Signal s;
  s.dt = 1.0 / fs;
  for (std::size_t i = 0; i < n; ++i) {
    s.values.push_back(
        std::sin(2.0 * std::numbers::pi * f * static_cast<double>(i) / fs));
  }
  const Signal r = rms_envelope(s, window);
  const double target = 1.0 / std::sqrt(2.0);
  for (std::size_t i = window; i + window < n; ++i) {
    CHECK(r.values[i] == doctest::Approx(target).epsilon(0.01));
  }
}

TEST_CASE("rms_envelope bounds and errors") {
  testutil::Lcg rng(19);
  const Signal s = testutil::random_signal(rng, 50, -4.0, 4.0);
  double peak = 0.0;
  for (const double v : s.values) peak = std::max(peak, std::abs(v));

  for (const std::size_t w : {1, 2, 5, 50}) {
    const Signal r = rms_envelope(s, w);
    REQUIRE(r.size() == s.size());
    for (const double v : r.values) {
      CHECK(v >= 0.0);
      CHECK(v <= peak + 1e-12);
    }
  }

  CHECK_THROWS_AS(rms_envelope(s, 0), InvalidWindowError);
  CHECK_THROWS_AS(rms_envelope(s, 51), InvalidWindowError);
}

TEST_CASE("signal operations are pure") {
  testutil::Lcg rng(23);
  Signal s = testutil::random_signal(rng, 48, -1.0, 1.0);
  s.dt = 0.25;

  const Signal a1 = resample_uniform(s, 31);
  const Signal a2 = resample_uniform(s, 31);
  CHECK(a1.values == a2.values);

  const Signal b1 = rms_envelope(s, 7);
  const Signal b2 = rms_envelope(s, 7);
  CHECK(b1.values == b2.values);

  const Signal c1 = detrend_linear(s);
  const Signal c2 = detrend_linear(s);
  CHECK(c1.values == c2.values);
}
