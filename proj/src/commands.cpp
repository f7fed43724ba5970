#include "siggeo/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <ostream>
#include <utility>

#include "siggeo/errors.hpp"
#include "siggeo/generators.hpp"
#include "siggeo/identify.hpp"
#include "siggeo/matrix_io.hpp"
#include "siggeo/signal.hpp"

namespace siggeo {

namespace {

std::size_t resolve_rms_window(const DatasetManifest& manifest,
                               const SignalMatrix& matrix,
                               const std::string& domain) {
  if (manifest.rms_window == 0) return 0;
  if (manifest.rms_window > 0) {
    return static_cast<std::size_t>(manifest.rms_window);
  }
  // Auto: one carrier period for electromechanical AC data, off elsewhere.
  if (domain != "electromech") return 0;
  if (!matrix.meta.f_ac || !(*matrix.meta.f_ac > 0.0)) {
    throw ConfigError(
        "rms=auto needs f_ac in the matrix header; set rms=<samples> instead");
  }
  const double period_samples = 1.0 / (*matrix.meta.f_ac * matrix.meta.dt);
  const auto window = static_cast<std::size_t>(std::lround(period_samples));
  return std::clamp<std::size_t>(window, 1, matrix.meta.length);
}

Signal preprocess_one(Signal s, const DatasetManifest& manifest,
                      std::size_t rms_window) {
  if (rms_window > 0) s = rms_envelope(s, rms_window);
  if (s.size() != manifest.grid) s = resample_uniform(s, manifest.grid);
  if (manifest.detrend) s = detrend_linear(s);
  switch (manifest.normalize) {
    case NormalizeMode::None: break;
    case NormalizeMode::MaxAbs: s = normalize_max_abs(s); break;
    case NormalizeMode::L2: s = l2_normalize(s); break;
  }
  return s;
}

std::vector<Signal> load_and_preprocess(const DatasetManifest& manifest,
                                        const std::filesystem::path& path) {
  const SignalMatrix matrix = read_signal_matrix(path);
  const std::string domain =
      manifest.domain.empty() ? matrix.meta.domain : manifest.domain;
  const std::size_t rms_window = resolve_rms_window(manifest, matrix, domain);

  std::vector<Signal> out;
  out.reserve(matrix.signals.size());
  for (const Signal& raw : matrix.signals) {
    validate(raw);
    out.push_back(preprocess_one(raw, manifest, rms_window));
  }
  return out;
}

}  // namespace

std::size_t medoid_index(const std::vector<Signal>& signals, MetricKind metric) {
  if (signals.empty()) {
    throw EmptySetError("medoid of an empty set");
  }
  std::size_t best = 0;
  double best_sum = -1.0;
  for (std::size_t i = 0; i < signals.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < signals.size(); ++j) {
      if (j == i) continue;
      sum += pairwise_distance(metric, signals[i], signals[j]);
    }
    if (best_sum < 0.0 || sum < best_sum) {
      best_sum = sum;
      best = i;
    }
  }
  return best;
}

SignalSet load_dataset(const DatasetManifest& manifest) {
  std::vector<Signal> signals = load_and_preprocess(manifest, manifest.data);
  if (signals.empty()) {
    throw EmptySetError("dataset is empty: " + manifest.data.string());
  }
  const std::size_t ref = manifest.x0 == X0Policy::Medoid
                              ? medoid_index(signals, manifest.metric)
                              : 0;
  return SignalSet::from(std::move(signals), ref);
}

std::vector<Signal> preprocess_queries(const DatasetManifest& manifest,
                                       const std::filesystem::path& queries) {
  return load_and_preprocess(manifest, queries);
}

std::vector<std::size_t> default_sizes(std::size_t total) {
  // Roughly x1.4 steps so a trailing window of 3 rows spans about a
  // threefold growth in subset size.
  std::vector<std::size_t> sizes;
  for (std::size_t decade = 10; decade <= total; decade *= 10) {
    for (const double mult : {1.0, 1.4, 2.0, 3.0, 5.0, 7.0}) {
      const auto n = static_cast<std::size_t>(mult * static_cast<double>(decade));
      if (n <= total) sizes.push_back(n);
    }
  }
  if (sizes.empty() || sizes.back() != total) sizes.push_back(total);
  return sizes;
}

void cmd_generate(const GenerateOptions& options) {
  GeneratorSpec spec = load_generator_spec(options.spec_file);
  if (options.seed) spec.seed = *options.seed;

  SignalMatrix matrix;
  matrix.meta.length = spec.samples;
  matrix.meta.dt = SampleGrid{spec.samples, spec.duration}.dt();
  matrix.meta.t0 = 0.0;
  matrix.meta.domain = std::string(domain_name(spec.domain));
  matrix.meta.seed = spec.seed;
  matrix.meta.spec_hash = spec_hash(spec);
  if (spec.domain == Domain::Electromech) {
    const Bounds& f = spec.bound("f_ac");
    matrix.meta.f_ac = 0.5 * (f.lo + f.hi);
  }

  matrix.signals.reserve(options.count);
  for (std::size_t draw = 0; draw < options.count; ++draw) {
    matrix.signals.push_back(generate(spec, draw));
  }
  matrix.meta.count = matrix.signals.size();
  write_signal_matrix(options.out, matrix);
}

void write_radius_trace(std::ostream& out, const RadiusTrace& trace,
                        const SaturationVerdict& verdict) {
  out << "# siggeo-radius-curve\n";
  out << "# metric=" << metric_name(trace.metric) << "\n";
  out << "# trials=" << trace.trials << "\n";
  out << "# seed=" << trace.seed << "\n";
  out << "# columns=n,r_hat_mean,r_hat_max,dH_half,r_bar,log_bbox\n";
  for (const RadiusTraceRow& row : trace.rows) {
    out << row.n << ',' << format_double(row.r_hat_mean) << ','
        << format_double(row.r_hat_max) << ',' << format_double(row.dh_half)
        << ',' << format_double(row.r_bar) << ','
        << format_double(row.log_bbox) << '\n';
  }
  out << "# saturation: n_sat=";
  if (verdict.n_sat) {
    out << *verdict.n_sat;
  } else {
    out << "none";
  }
  out << " tau=" << format_double(verdict.tau) << " window=" << verdict.window
      << "\n";
}

AnalyzeResult cmd_analyze(const AnalyzeOptions& options) {
  DatasetManifest manifest = load_manifest(options.manifest);
  if (options.metric) manifest.metric = *options.metric;
  if (options.x0) manifest.x0 = *options.x0;

  const SignalSet set = load_dataset(manifest);

  const std::vector<std::size_t> sizes =
      options.sizes.empty() ? default_sizes(set.size()) : options.sizes;

  AnalyzeResult result;
  result.trace = mc_radius_curve(set, manifest.metric, sizes, options.trials,
                                 options.seed);
  const double tau = options.tau.value_or(kDefaultSaturationTau);
  const std::size_t window =
      options.window.value_or(default_saturation_window(result.trace.rows.size()));
  result.verdict = detect_saturation(result.trace, tau, window);

  if (!options.out.empty()) {
    std::ofstream out(options.out, std::ios::binary);
    if (!out) {
      throw IoError("cannot open for writing: " + options.out.string());
    }
    write_radius_trace(out, result.trace, result.verdict);
    out.flush();
    if (!out) {
      throw IoError("write failed: " + options.out.string());
    }
  } else {
    write_radius_trace(std::cout, result.trace, result.verdict);
  }
  return result;
}

void cmd_detect(const DetectOptions& options, std::ostream& out) {
  DatasetManifest manifest = load_manifest(options.manifest);
  if (options.metric) manifest.metric = *options.metric;

  const SignalSet set = load_dataset(manifest);
  const std::vector<Signal> queries =
      preprocess_queries(manifest, options.queries);

  const double epsilon =
      options.epsilon ? *options.epsilon
                      : calibrate_epsilon(set, manifest.metric);

  out << "# siggeo-detect\n";
  out << "# metric=" << metric_name(manifest.metric) << "\n";
  out << "# epsilon=" << format_double(epsilon)
      << (options.epsilon ? "" : " (auto)") << "\n";
  out << "# columns=distance,epsilon,verdict,nearest\n";
  for (const Signal& q : queries) {
    const DetectionResult r = classify(q, set, manifest.metric, epsilon);
    out << format_double(r.distance) << ',' << format_double(r.epsilon) << ','
        << (r.accepted ? "accepted" : "rejected") << ',' << r.nearest << '\n';
  }
}

void cmd_detect(const DetectOptions& options) {
  if (!options.out.empty()) {
    std::ofstream out(options.out, std::ios::binary);
    if (!out) {
      throw IoError("cannot open for writing: " + options.out.string());
    }
    cmd_detect(options, out);
    out.flush();
    if (!out) {
      throw IoError("write failed: " + options.out.string());
    }
  } else {
    cmd_detect(options, std::cout);
  }
}

}  // namespace siggeo
