#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "siggeo/config.hpp"
#include "siggeo/estimator.hpp"
#include "siggeo/metrics.hpp"

namespace siggeo {

inline constexpr std::size_t kDefaultTrials = 24;

// Load a matrix and run it through the manifest's preprocessing: optional
// RMS envelope, resampling onto the grid, optional detrend, normalization,
// then reference selection.
SignalSet load_dataset(const DatasetManifest& manifest);

// Same preprocessing for query traces (no reference selection).
std::vector<Signal> preprocess_queries(const DatasetManifest& manifest,
                                       const std::filesystem::path& queries);

// Subset-size ladder 10, 20, 50, 100, ... capped at total, with the full set
// size always appended as the last row.
std::vector<std::size_t> default_sizes(std::size_t total);

std::size_t medoid_index(const std::vector<Signal>& signals, MetricKind metric);

struct GenerateOptions {
  std::filesystem::path spec_file;
  std::size_t count = 0;
  std::optional<std::uint64_t> seed;  // overrides the spec file's seed
  std::filesystem::path out;
};

void cmd_generate(const GenerateOptions& options);

struct AnalyzeOptions {
  std::filesystem::path manifest;
  std::vector<std::size_t> sizes;  // empty -> default ladder
  std::size_t trials = kDefaultTrials;
  std::uint64_t seed = 0;
  std::optional<double> tau;
  std::optional<std::size_t> window;
  std::optional<MetricKind> metric;  // overrides the manifest
  std::optional<X0Policy> x0;
  std::filesystem::path out;
};

struct AnalyzeResult {
  RadiusTrace trace;
  SaturationVerdict verdict;
};

AnalyzeResult cmd_analyze(const AnalyzeOptions& options);

void write_radius_trace(std::ostream& out, const RadiusTrace& trace,
                        const SaturationVerdict& verdict);

struct DetectOptions {
  std::filesystem::path manifest;
  std::filesystem::path queries;
  std::optional<double> epsilon;  // absent -> calibrate from the dataset
  std::optional<MetricKind> metric;
  std::filesystem::path out;  // empty -> stdout
};

void cmd_detect(const DetectOptions& options);
void cmd_detect(const DetectOptions& options, std::ostream& out);

}  // namespace siggeo
