#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "siggeo/signal.hpp"

namespace siggeo {

// Uniform output grid: `samples` points spanning [0, duration].
struct SampleGrid {
  std::size_t samples = 0;
  double duration = 0.0;

  double dt() const { return duration / static_cast<double>(samples - 1); }
};

struct NoiseParams {
  double sigma_white = 0.0;  // additive white noise scale
  double sigma_mult = 0.0;   // envelope-proportional noise scale
  double ou_theta = 0.0;     // mean-reversion rate of the correlated component
  double ou_sigma = 0.0;     // diffusion scale of the correlated component
};

// Actuation trace: idle floor with a pre-transient bump, fast rise to a peak,
// shoulder, drop, decay to a working plateau, hard cutoff step, then an
// exponential tail. The observable is the AC waveform under this envelope.
struct ElectromechParams {
  double a_idle = 0.0;
  double a_bump = 0.0;
  double a_peak = 0.0;
  double a_plateau = 0.0;
  double dt_idle = 0.0;   // idle duration
  double dt_rise = 0.0;   // rise duration
  double dt_decay = 0.0;  // shoulder + drop + decay duration
  double t_cut = 0.0;     // cutoff instant (absolute)
  double dt_step = 0.0;   // post-cutoff hold before the tail
  double dt_ramp = 0.0;   // tail segment labelled by the last knot
  double alpha_drop = 0.0;  // post-drop level as a fraction of the peak
  double beta_step = 0.0;   // post-cutoff level as a fraction of the plateau
  double k_decay = 0.0;     // tail rate, 1/s
  double f_ac = 0.0;        // carrier frequency, Hz
  double phi = 0.0;         // carrier phase
  NoiseParams noise;
};

// Segment boundaries derived from ElectromechParams; construction validates
// the ordering 0 < t_idle < t_peak < t_end < t_cut < t_step < t_ramp < T.
struct ElectromechKnots {
  double t_idle = 0.0;
  double t_peak = 0.0;
  double t_end = 0.0;
  double t_cut = 0.0;
  double t_step = 0.0;
  double t_ramp = 0.0;
  double bump_start = 0.0;    // bump occupies the last 20% of the idle segment
  double shoulder_end = 0.0;  // shoulder holds the peak for 5% of dt_decay
  double drop_end = 0.0;      // linear drop ends here (10% of dt_decay)
};

ElectromechKnots electromech_knots(const ElectromechParams& p, double duration);

// Deterministic envelope value at time t.
double electromech_envelope(const ElectromechParams& p,
                            const ElectromechKnots& k, double t);

// AC waveform: (envelope + correlated noise) * carrier + white and
// envelope-proportional noise. With all noise scales zero the trace is a
// deterministic function of the parameters.
Signal gen_electromech_ac(const ElectromechParams& p, const SampleGrid& grid,
                          std::uint64_t noise_seed);

// Mean-reverting correlated noise path via the Euler-Maruyama recursion
// y[i+1] = y[i] - theta*y[i]*dt + sigma*sqrt(dt)*g[i], y[0] = 0.
std::vector<double> ou_path(std::size_t n, double dt, double theta,
                            double sigma, std::uint64_t seed);

// Discharge curve: vmin + (v0-vmin) * exp(-alpha*t - beta*max(0, t-t_knee)^2)
// plus a bounded smooth perturbation.
struct BatteryParams {
  double v0 = 0.0;
  double vmin = 0.0;
  double alpha = 0.0;   // early decay rate, 1/s
  double beta = 0.0;    // post-knee curvature, 1/s^2
  double t_knee = 0.0;  // knee location, s
  double gamma = 0.0;   // carried for config compatibility; the nominal
                        // envelope formula does not use it
  double eps = 0.0;     // perturbation scale
  std::vector<double> c;  // perturbation coefficients, each in [-1, 1]
};

Signal gen_battery(const BatteryParams& p, const SampleGrid& grid);

// eps * sum_j c[j] * sin((j+1) * pi * t / T): half-sine basis, vanishing at
// both endpoints, sup-bounded by eps * c.size().
std::vector<double> smooth_perturbation(double eps, std::span<const double> c,
                                        const SampleGrid& grid);

// Five-component heartbeat morphology (P, Q, R, S, T excursions).
struct EcgDynamicalParams {
  std::array<double, 5> amp{};
  std::array<double, 5> center{};
  std::array<double, 5> width{};
  double eps = 0.0;
  std::vector<double> c;
};

Signal gen_ecg_dynamical(const EcgDynamicalParams& p, const SampleGrid& grid);

// Three dominant excursions over a constant baseline.
struct EcgGaussianParams {
  std::array<double, 3> amp{};
  std::array<double, 3> center{};
  std::array<double, 3> width{};
  double baseline = 0.0;
  double eps = 0.0;
  std::vector<double> c;
};

Signal gen_ecg_gaussian(const EcgGaussianParams& p, const SampleGrid& grid);

enum class Domain { Electromech, Battery, EcgDynamical, EcgGaussian };

Domain domain_from_name(std::string_view name);
std::string_view domain_name(Domain d);

struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

// A bounded parameter box plus grid and seed: everything needed to draw a
// reproducible family of traces from one domain.
struct GeneratorSpec {
  Domain domain = Domain::Battery;
  std::size_t samples = 0;
  double duration = 0.0;
  std::uint64_t seed = 0;
  std::size_t basis_size = 4;  // J, number of perturbation coefficients
  std::map<std::string, Bounds> bounds;

  static GeneratorSpec defaults(Domain d);
  const Bounds& bound(const std::string& name) const;
};

using DomainParams = std::variant<ElectromechParams, BatteryParams,
                                  EcgDynamicalParams, EcgGaussianParams>;

// One uniform draw from the spec's parameter box, deterministic in
// (spec.seed, draw). Draws violating ordering constraints are rejected and
// redrawn a bounded number of times before an infeasible-spec error.
DomainParams sample_params(const GeneratorSpec& spec, std::uint64_t draw);

// sample_params + domain dispatch; electromechanical noise gets its own
// draw-derived stream.
Signal generate(const GeneratorSpec& spec, std::uint64_t draw);

}  // namespace siggeo
