#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "siggeo/generators.hpp"
#include "siggeo/metrics.hpp"

namespace siggeo {

// Flat key=value text, one entry per line; '#' starts a comment.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in);
KeyValues load_key_values(const std::filesystem::path& path);

// Generator spec file: domain=..., samples=, duration=, seed=, J=, and one
// bound per line as <param>.lo= / <param>.hi=. Unset keys fall back to the
// domain defaults; `domain` itself is required.
GeneratorSpec load_generator_spec(const std::filesystem::path& path);
GeneratorSpec generator_spec_from(const KeyValues& kv);

// Canonical one-line-per-key rendering of a spec; the hash of this text is
// stamped into generated matrices so files can be traced back to their box.
std::string canonical_spec_text(const GeneratorSpec& spec);
std::uint64_t spec_hash(const GeneratorSpec& spec);

enum class NormalizeMode { None, MaxAbs, L2 };
enum class X0Policy { First, Medoid };

NormalizeMode normalize_mode_from_name(std::string_view name);
X0Policy x0_policy_from_name(std::string_view name);

inline constexpr long kRmsAuto = -1;

// Dataset manifest: where the matrix lives and how to preprocess it.
// rms_window: kRmsAuto derives one carrier period for electromechanical
// data (needs f_ac in the matrix header), 0 disables, >0 is explicit.
struct DatasetManifest {
  std::filesystem::path data;
  std::string domain;  // empty -> take the matrix header's tag
  std::size_t grid = 160;
  MetricKind metric = MetricKind::Cosine;
  bool detrend = false;
  NormalizeMode normalize = NormalizeMode::MaxAbs;
  X0Policy x0 = X0Policy::First;
  long rms_window = kRmsAuto;
};

DatasetManifest load_manifest(const std::filesystem::path& path);

}  // namespace siggeo
