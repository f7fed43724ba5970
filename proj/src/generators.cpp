#include "siggeo/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "siggeo/errors.hpp"
#include "siggeo/rng.hpp"

namespace siggeo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxRedraws = 1024;

void require_grid(const SampleGrid& grid) {
  if (grid.samples < 2 || !(grid.duration > 0.0)) {
    throw InvalidArgumentError("grid needs >= 2 samples and positive duration");
  }
}

}  // namespace

ElectromechKnots electromech_knots(const ElectromechParams& p, double duration) {
  ElectromechKnots k;
  k.t_idle = p.dt_idle;
  k.t_peak = k.t_idle + p.dt_rise;
  k.t_end = k.t_peak + p.dt_decay;
  k.t_cut = p.t_cut;
  k.t_step = k.t_cut + p.dt_step;
  k.t_ramp = k.t_step + p.dt_ramp;
  k.bump_start = 0.8 * k.t_idle;
  k.shoulder_end = k.t_peak + 0.05 * p.dt_decay;
  k.drop_end = k.shoulder_end + 0.10 * p.dt_decay;

  const bool ordered = 0.0 < k.t_idle && k.t_idle < k.t_peak &&
                       k.t_peak < k.t_end && k.t_end < k.t_cut &&
                       k.t_cut < k.t_step && k.t_step < k.t_ramp &&
                       k.t_ramp < duration;
  if (!ordered) {
    throw InvalidParamsError("electromech knots out of order");
  }
  if (p.a_idle < 0.0 || p.a_bump < 0.0 || p.a_peak < 0.0 || p.a_plateau < 0.0) {
    throw InvalidParamsError("electromech amplitudes must be >= 0");
  }
  if (!(p.alpha_drop > 0.0 && p.alpha_drop < 1.0) ||
      !(p.beta_step > 0.0 && p.beta_step < 1.0)) {
    throw InvalidParamsError("drop and step fractions must lie in (0, 1)");
  }
  if (!(p.k_decay > 0.0) || !(p.f_ac > 0.0)) {
    throw InvalidParamsError("k_decay and f_ac must be > 0");
  }
  return k;
}

double electromech_envelope(const ElectromechParams& p,
                            const ElectromechKnots& k, double t) {
  const double bump_top = p.a_idle + p.a_bump;
  if (t < k.bump_start) {
    return p.a_idle;
  }
  if (t < k.t_idle) {
    const double phase =
        0.5 * kPi * (t - k.bump_start) / (k.t_idle - k.bump_start);
    return p.a_idle + p.a_bump * std::sin(phase);
  }
  if (t < k.t_peak) {
    const double f = (t - k.t_idle) / (k.t_peak - k.t_idle);
    return bump_top + f * (p.a_peak - bump_top);
  }
  if (t < k.shoulder_end) {
    return p.a_peak;
  }
  const double a_drop = p.alpha_drop * p.a_peak;
  if (t < k.drop_end) {
    const double f = (t - k.shoulder_end) / (k.drop_end - k.shoulder_end);
    return p.a_peak + f * (a_drop - p.a_peak);
  }
  if (t < k.t_end) {
    const double f = (t - k.drop_end) / (k.t_end - k.drop_end);
    return a_drop + f * (p.a_plateau - a_drop);
  }
  if (t < k.t_cut) {
    return p.a_plateau;
  }
  const double a_step = p.beta_step * p.a_plateau;
  if (t < k.t_step) {
    return a_step;
  }
  return a_step * std::exp(-p.k_decay * (t - k.t_step));
}

std::vector<double> ou_path(std::size_t n, double dt, double theta,
                            double sigma, std::uint64_t seed) {
  if (!(theta > 0.0) || sigma < 0.0 || !(dt > 0.0)) {
    throw InvalidParamsError("ou_path needs theta > 0, sigma >= 0, dt > 0");
  }
  std::vector<double> y(n, 0.0);
  if (n == 0) return y;
  Rng rng(seed);
  const double sq = sigma * std::sqrt(dt);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    y[i + 1] = y[i] - theta * y[i] * dt + sq * rng.normal();
  }
  return y;
}

Signal gen_electromech_ac(const ElectromechParams& p, const SampleGrid& grid,
                          std::uint64_t noise_seed) {
  require_grid(grid);
  const ElectromechKnots knots = electromech_knots(p, grid.duration);
  const double dt = grid.dt();

  std::vector<double> ou(grid.samples, 0.0);
  if (p.noise.ou_sigma > 0.0) {
    ou = ou_path(grid.samples, dt, p.noise.ou_theta, p.noise.ou_sigma,
                 derive_seed(noise_seed, 1));
  }
  Rng white(derive_seed(noise_seed, 2));
  Rng mult(derive_seed(noise_seed, 3));

  Signal out;
  out.dt = dt;
  out.values.resize(grid.samples);
  for (std::size_t i = 0; i < grid.samples; ++i) {
    const double t = static_cast<double>(i) * dt;
    const double e = electromech_envelope(p, knots, t);
    double x = (e + ou[i]) * std::sin(2.0 * kPi * p.f_ac * t + p.phi);
    if (p.noise.sigma_white > 0.0) x += p.noise.sigma_white * white.normal();
    if (p.noise.sigma_mult > 0.0) x += p.noise.sigma_mult * e * mult.normal();
    out.values[i] = x;
  }
  return out;
}

std::vector<double> smooth_perturbation(double eps, std::span<const double> c,
                                        const SampleGrid& grid) {
  require_grid(grid);
  for (double cj : c) {
    if (std::abs(cj) > 1.0) {
      throw InvalidParamsError("perturbation coefficients must lie in [-1, 1]");
    }
  }
  std::vector<double> eta(grid.samples, 0.0);
  if (eps == 0.0 || c.empty()) return eta;
  const double dt = grid.dt();
  for (std::size_t i = 0; i < grid.samples; ++i) {
    const double t = static_cast<double>(i) * dt;
    double acc = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      acc += c[j] * std::sin(static_cast<double>(j + 1) * kPi * t / grid.duration);
    }
    eta[i] = eps * acc;
  }
  return eta;
}

Signal gen_battery(const BatteryParams& p, const SampleGrid& grid) {
  require_grid(grid);
  if (!(p.v0 > p.vmin)) {
    throw InvalidParamsError("battery needs v0 > vmin");
  }
  if (p.alpha < 0.0 || p.beta < 0.0 || p.eps < 0.0) {
    throw InvalidParamsError("battery rates and eps must be >= 0");
  }

  const std::vector<double> eta = smooth_perturbation(p.eps, p.c, grid);
  const double dt = grid.dt();
  const double swing = p.v0 - p.vmin;

  Signal out;
  out.dt = dt;
  out.values.resize(grid.samples);
  for (std::size_t i = 0; i < grid.samples; ++i) {
    const double t = static_cast<double>(i) * dt;
    const double over = std::max(0.0, t - p.t_knee);
    const double v = p.vmin + swing * std::exp(-p.alpha * t - p.beta * over * over);
    out.values[i] = v + eta[i];
  }
  return out;
}

namespace {

template <std::size_t N>
void add_gaussians(std::vector<double>& values, double dt,
                   const std::array<double, N>& amp,
                   const std::array<double, N>& center,
                   const std::array<double, N>& width) {
  for (std::size_t k = 0; k < N; ++k) {
    if (!(width[k] > 0.0)) {
      throw InvalidParamsError("component widths must be > 0");
    }
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double t = static_cast<double>(i) * dt;
    double acc = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      const double z = (t - center[k]) / width[k];
      acc += amp[k] * std::exp(-0.5 * z * z);
    }
    values[i] += acc;
  }
}

}  // namespace

Signal gen_ecg_dynamical(const EcgDynamicalParams& p, const SampleGrid& grid) {
  require_grid(grid);
  Signal out;
  out.dt = grid.dt();
  out.values = smooth_perturbation(p.eps, p.c, grid);
  add_gaussians(out.values, out.dt, p.amp, p.center, p.width);
  return out;
}

Signal gen_ecg_gaussian(const EcgGaussianParams& p, const SampleGrid& grid) {
  require_grid(grid);
  Signal out;
  out.dt = grid.dt();
  out.values = smooth_perturbation(p.eps, p.c, grid);
  for (double& v : out.values) v += p.baseline;
  add_gaussians(out.values, out.dt, p.amp, p.center, p.width);
  return out;
}

Domain domain_from_name(std::string_view name) {
  if (name == "electromech") return Domain::Electromech;
  if (name == "battery") return Domain::Battery;
  if (name == "ecg_dynamical") return Domain::EcgDynamical;
  if (name == "ecg_gaussian") return Domain::EcgGaussian;
  throw ConfigError("unknown domain: " + std::string(name));
}

std::string_view domain_name(Domain d) {
  switch (d) {
    case Domain::Electromech: return "electromech";
    case Domain::Battery: return "battery";
    case Domain::EcgDynamical: return "ecg_dynamical";
    case Domain::EcgGaussian: return "ecg_gaussian";
  }
  return "?";
}

namespace {

// Canonical sampling order per domain. Changing an order changes every
// artifact generated from existing seeds, so these lists are frozen.
constexpr const char* kElectromechOrder[] = {
    "a_idle",     "a_bump",   "a_peak",  "a_plateau", "dt_idle",
    "dt_rise",    "dt_decay", "t_cut",   "dt_step",   "dt_ramp",
    "alpha_drop", "beta_step", "k_decay", "f_ac",     "phi",
    "sigma_white", "sigma_mult", "ou_theta", "ou_sigma"};

constexpr const char* kBatteryOrder[] = {"v0",    "vmin",  "alpha", "beta",
                                         "t_knee", "gamma", "eps"};

constexpr const char* kEcgDynOrder[] = {
    "a_p", "a_q", "a_r", "a_s", "a_t", "t_p", "t_q", "t_r",
    "t_s", "t_t", "s_p", "s_q", "s_r", "s_s", "s_t", "eps"};

constexpr const char* kEcgGaussOrder[] = {"a_1", "a_2", "a_3", "t_1", "t_2",
                                          "t_3", "s_1", "s_2", "s_3", "b",
                                          "eps"};

std::vector<double> draw_values(const GeneratorSpec& spec, Rng& rng,
                                std::span<const char* const> order) {
  std::vector<double> v;
  v.reserve(order.size());
  for (const char* name : order) {
    const Bounds& b = spec.bound(name);
    v.push_back(rng.uniform(b.lo, b.hi));
  }
  return v;
}

std::vector<double> draw_coeffs(const GeneratorSpec& spec, Rng& rng) {
  const Bounds& b = spec.bound("c");
  std::vector<double> c(spec.basis_size);
  for (double& cj : c) cj = rng.uniform(b.lo, b.hi);
  return c;
}

ElectromechParams electromech_from(std::span<const double> v) {
  ElectromechParams p;
  p.a_idle = v[0];
  p.a_bump = v[1];
  p.a_peak = v[2];
  p.a_plateau = v[3];
  p.dt_idle = v[4];
  p.dt_rise = v[5];
  p.dt_decay = v[6];
  p.t_cut = v[7];
  p.dt_step = v[8];
  p.dt_ramp = v[9];
  p.alpha_drop = v[10];
  p.beta_step = v[11];
  p.k_decay = v[12];
  p.f_ac = v[13];
  p.phi = v[14];
  p.noise.sigma_white = v[15];
  p.noise.sigma_mult = v[16];
  p.noise.ou_theta = v[17];
  p.noise.ou_sigma = v[18];
  return p;
}

bool electromech_feasible(const ElectromechParams& p, double duration) {
  try {
    electromech_knots(p, duration);
    return true;
  } catch (const InvalidParamsError&) {
    return false;
  }
}

}  // namespace

const Bounds& GeneratorSpec::bound(const std::string& name) const {
  const auto it = bounds.find(name);
  if (it == bounds.end()) {
    throw ConfigError("missing parameter bounds: " + name);
  }
  return it->second;
}

DomainParams sample_params(const GeneratorSpec& spec, std::uint64_t draw) {
  for (const auto& [name, b] : spec.bounds) {
    if (!(b.lo <= b.hi) || !std::isfinite(b.lo) || !std::isfinite(b.hi)) {
      throw ConfigError("invalid bounds for parameter: " + name);
    }
  }

  Rng rng(derive_seed(spec.seed, 2 * draw));
  switch (spec.domain) {
    case Domain::Electromech: {
      // Ordering constraints are enforced by redraw; a box from which no
      // ordered knot vector can be drawn is reported as infeasible.
      for (std::size_t attempt = 0; attempt < kMaxRedraws; ++attempt) {
        const ElectromechParams p =
            electromech_from(draw_values(spec, rng, kElectromechOrder));
        if (electromech_feasible(p, spec.duration)) return p;
      }
      throw InfeasibleSpecError("electromech box admits no ordered knots");
    }
    case Domain::Battery: {
      for (std::size_t attempt = 0; attempt < kMaxRedraws; ++attempt) {
        const std::vector<double> v = draw_values(spec, rng, kBatteryOrder);
        BatteryParams p;
        p.v0 = v[0];
        p.vmin = v[1];
        p.alpha = v[2];
        p.beta = v[3];
        p.t_knee = v[4];
        p.gamma = v[5];
        p.eps = v[6];
        p.c = draw_coeffs(spec, rng);
        if (p.v0 > p.vmin && p.alpha >= 0.0 && p.beta >= 0.0 && p.eps >= 0.0) {
          return p;
        }
      }
      throw InfeasibleSpecError("battery box admits no v0 > vmin draw");
    }
    case Domain::EcgDynamical: {
      for (std::size_t attempt = 0; attempt < kMaxRedraws; ++attempt) {
        const std::vector<double> v = draw_values(spec, rng, kEcgDynOrder);
        EcgDynamicalParams p;
        for (std::size_t k = 0; k < 5; ++k) {
          p.amp[k] = v[k];
          p.center[k] = v[5 + k];
          p.width[k] = v[10 + k];
        }
        p.eps = v[15];
        p.c = draw_coeffs(spec, rng);
        if (std::ranges::all_of(p.width, [](double w) { return w > 0.0; })) {
          return p;
        }
      }
      throw InfeasibleSpecError("ecg box admits no positive widths");
    }
    case Domain::EcgGaussian: {
      for (std::size_t attempt = 0; attempt < kMaxRedraws; ++attempt) {
        const std::vector<double> v = draw_values(spec, rng, kEcgGaussOrder);
        EcgGaussianParams p;
        for (std::size_t k = 0; k < 3; ++k) {
          p.amp[k] = v[k];
          p.center[k] = v[3 + k];
          p.width[k] = v[6 + k];
        }
        p.baseline = v[9];
        p.eps = v[10];
        p.c = draw_coeffs(spec, rng);
        if (std::ranges::all_of(p.width, [](double w) { return w > 0.0; })) {
          return p;
        }
      }
      throw InfeasibleSpecError("ecg box admits no positive widths");
    }
  }
  throw InvalidArgumentError("unhandled domain");
}

Signal generate(const GeneratorSpec& spec, std::uint64_t draw) {
  const SampleGrid grid{spec.samples, spec.duration};
  const DomainParams params = sample_params(spec, draw);
  const std::uint64_t noise_seed = derive_seed(spec.seed, 2 * draw + 1);

  Signal out = std::visit(
      [&](const auto& p) -> Signal {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ElectromechParams>) {
          return gen_electromech_ac(p, grid, noise_seed);
        } else if constexpr (std::is_same_v<T, BatteryParams>) {
          return gen_battery(p, grid);
        } else if constexpr (std::is_same_v<T, EcgDynamicalParams>) {
          return gen_ecg_dynamical(p, grid);
        } else {
          return gen_ecg_gaussian(p, grid);
        }
      },
      params);
  return out;
}

GeneratorSpec GeneratorSpec::defaults(Domain d) {
  GeneratorSpec spec;
  spec.domain = d;
  spec.seed = 0;
  switch (d) {
    case Domain::Electromech:
      spec.samples = 2001;
      spec.duration = 10.0;
      spec.basis_size = 0;
      spec.bounds = {
          {"a_idle", {0.05, 0.15}},    {"a_bump", {0.02, 0.08}},
          {"a_peak", {3.0, 6.0}},      {"a_plateau", {0.8, 1.2}},
          {"dt_idle", {0.5, 1.0}},     {"dt_rise", {0.1, 0.3}},
          {"dt_decay", {0.5, 1.5}},    {"t_cut", {6.5, 8.0}},
          {"dt_step", {0.1, 0.3}},     {"dt_ramp", {0.3, 0.8}},
          {"alpha_drop", {0.35, 0.55}}, {"beta_step", {0.2, 0.4}},
          {"k_decay", {1.0, 3.0}},     {"f_ac", {50.0, 50.0}},
          {"phi", {0.0, 2.0 * kPi}},   {"sigma_white", {0.0, 0.02}},
          {"sigma_mult", {0.0, 0.02}}, {"ou_theta", {2.0, 8.0}},
          {"ou_sigma", {0.0, 0.05}},
      };
      break;
    case Domain::Battery:
      spec.samples = 721;
      spec.duration = 7200.0;
      spec.bounds = {
          {"v0", {4.0, 4.2}},        {"vmin", {2.8, 3.2}},
          {"alpha", {1e-4, 5e-4}},   {"beta", {1e-8, 5e-8}},
          {"t_knee", {0.55 * 7200.0, 0.8 * 7200.0}},
          {"gamma", {0.5, 2.0}},     {"eps", {0.0, 0.01}},
          {"c", {-1.0, 1.0}},
      };
      break;
    case Domain::EcgDynamical:
      spec.samples = 160;
      spec.duration = 0.7;
      spec.bounds = {
          {"a_p", {0.08, 0.15}},   {"a_q", {-0.12, -0.06}},
          {"a_r", {0.9, 1.3}},     {"a_s", {-0.25, -0.12}},
          {"a_t", {0.2, 0.4}},     {"t_p", {0.16, 0.22}},
          {"t_q", {0.30, 0.33}},   {"t_r", {0.34, 0.36}},
          {"t_s", {0.38, 0.41}},   {"t_t", {0.52, 0.60}},
          {"s_p", {0.015, 0.03}},  {"s_q", {0.008, 0.015}},
          {"s_r", {0.008, 0.014}}, {"s_s", {0.008, 0.016}},
          {"s_t", {0.03, 0.05}},   {"eps", {0.0, 0.02}},
          {"c", {-1.0, 1.0}},
      };
      break;
    case Domain::EcgGaussian:
      spec.samples = 160;
      spec.duration = 0.7;
      spec.bounds = {
          {"a_1", {0.08, 0.18}},  {"a_2", {0.9, 1.3}},
          {"a_3", {0.2, 0.4}},    {"t_1", {0.16, 0.22}},
          {"t_2", {0.33, 0.37}},  {"t_3", {0.52, 0.60}},
          {"s_1", {0.015, 0.03}}, {"s_2", {0.01, 0.02}},
          {"s_3", {0.03, 0.05}},  {"b", {-0.05, 0.05}},
          {"eps", {0.0, 0.02}},   {"c", {-1.0, 1.0}},
      };
      break;
  }
  return spec;
}

}  // namespace siggeo
