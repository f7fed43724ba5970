#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "siggeo/signal.hpp"

namespace siggeo {

// Shortest decimal representation that parses back to the identical double.
std::string format_double(double value);
double parse_double(std::string_view text);

// Plain-text signal matrix: '#'-prefixed key=value header lines followed by
// one comma-separated signal per line. Values round-trip exactly, and a fixed
// header order keeps regenerated files byte-identical.
struct MatrixMetadata {
  std::size_t length = 0;
  double dt = 1.0;
  double t0 = 0.0;
  std::size_t count = 0;
  std::string domain;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> spec_hash;
  std::optional<double> f_ac;  // nominal carrier, lets analysis pick an
                               // envelope window without reparsing the spec
};

struct SignalMatrix {
  MatrixMetadata meta;
  std::vector<Signal> signals;
};

void write_signal_matrix(std::ostream& out, const SignalMatrix& matrix);
void write_signal_matrix(const std::filesystem::path& path,
                         const SignalMatrix& matrix);
SignalMatrix read_signal_matrix(std::istream& in);
SignalMatrix read_signal_matrix(const std::filesystem::path& path);

}  // namespace siggeo
