#include "siggeo/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "siggeo/errors.hpp"
#include "siggeo/matrix_io.hpp"

namespace siggeo {

namespace {

std::string trim(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && (text[b] == ' ' || text[b] == '\t')) ++b;
  while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t' || text[e - 1] == '\r')) --e;
  return std::string(text.substr(b, e - b));
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw ConfigError(key + " must be an unsigned integer, got '" + value + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "on") return true;
  if (value == "0" || value == "false" || value == "off") return false;
  throw ConfigError(key + " must be a boolean, got '" + value + "'");
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected key=value, got '" + stripped + "'");
    }
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("empty key in '" + stripped + "'");
    }
    kv[key] = value;
  }
  return kv;
}

KeyValues load_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config: " + path.string());
  }
  return parse_key_values(in);
}

GeneratorSpec generator_spec_from(const KeyValues& kv) {
  const auto domain_it = kv.find("domain");
  if (domain_it == kv.end()) {
    throw ConfigError("generator spec needs a domain= line");
  }
  GeneratorSpec spec = GeneratorSpec::defaults(domain_from_name(domain_it->second));

  for (const auto& [key, value] : kv) {
    if (key == "domain") continue;
    if (key == "samples") {
      spec.samples = to_u64(key, value);
      if (spec.samples < 2) throw ConfigError("samples must be >= 2");
    } else if (key == "duration") {
      spec.duration = parse_double(value);
      if (!(spec.duration > 0.0)) throw ConfigError("duration must be > 0");
    } else if (key == "seed") {
      spec.seed = to_u64(key, value);
    } else if (key == "J") {
      spec.basis_size = to_u64(key, value);
    } else if (key.size() > 3 && key.ends_with(".lo")) {
      spec.bounds[key.substr(0, key.size() - 3)].lo = parse_double(value);
    } else if (key.size() > 3 && key.ends_with(".hi")) {
      spec.bounds[key.substr(0, key.size() - 3)].hi = parse_double(value);
    } else {
      throw ConfigError("unknown generator spec key: " + key);
    }
  }
  return spec;
}

GeneratorSpec load_generator_spec(const std::filesystem::path& path) {
  return generator_spec_from(load_key_values(path));
}

std::string canonical_spec_text(const GeneratorSpec& spec) {
  std::ostringstream out;
  out << "domain=" << domain_name(spec.domain) << "\n";
  out << "samples=" << spec.samples << "\n";
  out << "duration=" << format_double(spec.duration) << "\n";
  out << "seed=" << spec.seed << "\n";
  out << "J=" << spec.basis_size << "\n";
  for (const auto& [name, b] : spec.bounds) {  // map order: sorted by name
    out << name << ".lo=" << format_double(b.lo) << "\n";
    out << name << ".hi=" << format_double(b.hi) << "\n";
  }
  return out.str();
}

std::uint64_t spec_hash(const GeneratorSpec& spec) {
  // FNV-1a over the canonical text.
  const std::string text = canonical_spec_text(spec);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char ch : text) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

NormalizeMode normalize_mode_from_name(std::string_view name) {
  if (name == "none") return NormalizeMode::None;
  if (name == "max_abs") return NormalizeMode::MaxAbs;
  if (name == "l2") return NormalizeMode::L2;
  throw ConfigError("unknown normalize mode: " + std::string(name));
}

X0Policy x0_policy_from_name(std::string_view name) {
  if (name == "first") return X0Policy::First;
  if (name == "medoid") return X0Policy::Medoid;
  throw ConfigError("unknown x0 policy: " + std::string(name));
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  const KeyValues kv = load_key_values(path);
  DatasetManifest m;
  bool have_data = false;

  for (const auto& [key, value] : kv) {
    if (key == "data") {
      std::filesystem::path p(value);
      if (p.is_relative()) p = path.parent_path() / p;
      m.data = p;
      have_data = true;
    } else if (key == "domain") {
      m.domain = value;
    } else if (key == "grid") {
      m.grid = to_u64(key, value);
      if (m.grid < 2) throw ConfigError("grid must be >= 2");
    } else if (key == "metric") {
      m.metric = metric_from_name(value);
    } else if (key == "detrend") {
      m.detrend = to_bool(key, value);
    } else if (key == "normalize") {
      m.normalize = normalize_mode_from_name(value);
    } else if (key == "x0") {
      m.x0 = x0_policy_from_name(value);
    } else if (key == "rms") {
      if (value == "auto") {
        m.rms_window = kRmsAuto;
      } else if (value == "off") {
        m.rms_window = 0;
      } else {
        m.rms_window = static_cast<long>(to_u64(key, value));
      }
    } else {
      throw ConfigError("unknown manifest key: " + key);
    }
  }
  if (!have_data) {
    throw ConfigError("manifest needs a data= line");
  }
  return m;
}

}  // namespace siggeo
