#pragma once

#include <cstdint>
#include <random>

namespace siggeo {

// splitmix64 step; used to whiten seeds and derive independent streams.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic sub-seed for stream `stream` of a run seeded with `seed`.
// Distinct streams (draws, trials, noise channels) never share an engine.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s ^= stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
  return a ^ splitmix64(s);
}

// mt19937_64 with hand-rolled uniform/normal transforms. The standard
// distributions are implementation-defined, so outputs would differ across
// standard libraries; these transforms keep every generated artifact
// bit-reproducible from its seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    if (lo == hi) return lo;
    return lo + uniform01() * (hi - lo);
  }

  // Standard normal via Box-Muller. No spare caching: one value per call,
  // two uniforms consumed.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace siggeo
