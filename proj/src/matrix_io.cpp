#include "siggeo/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "siggeo/errors.hpp"

namespace siggeo {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ConfigError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

namespace {

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError("not an unsigned integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

void write_signal_matrix(std::ostream& out, const SignalMatrix& matrix) {
  out << "# siggeo-matrix\n";
  out << "# length=" << matrix.meta.length << "\n";
  out << "# dt=" << format_double(matrix.meta.dt) << "\n";
  out << "# t0=" << format_double(matrix.meta.t0) << "\n";
  out << "# count=" << matrix.signals.size() << "\n";
  if (!matrix.meta.domain.empty()) {
    out << "# domain=" << matrix.meta.domain << "\n";
  }
  if (matrix.meta.seed) {
    out << "# seed=" << *matrix.meta.seed << "\n";
  }
  if (matrix.meta.spec_hash) {
    out << "# spec_hash=" << *matrix.meta.spec_hash << "\n";
  }
  if (matrix.meta.f_ac) {
    out << "# f_ac=" << format_double(*matrix.meta.f_ac) << "\n";
  }
  for (const Signal& s : matrix.signals) {
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      if (i > 0) out << ',';
      out << format_double(s.values[i]);
    }
    out << '\n';
  }
}

void write_signal_matrix(const std::filesystem::path& path,
                         const SignalMatrix& matrix) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  write_signal_matrix(out, matrix);
  out.flush();
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

SignalMatrix read_signal_matrix(std::istream& in) {
  SignalMatrix matrix;
  bool have_length = false;

  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    if (line.front() == '#') {
      std::string_view body(line);
      body.remove_prefix(1);
      while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      const std::size_t eq = body.find('=');
      if (eq == std::string_view::npos) continue;  // banner or comment
      const std::string_view key = body.substr(0, eq);
      const std::string_view value = body.substr(eq + 1);
      if (key == "length") {
        matrix.meta.length = parse_u64(value);
        have_length = true;
      } else if (key == "dt") {
        matrix.meta.dt = parse_double(value);
      } else if (key == "t0") {
        matrix.meta.t0 = parse_double(value);
      } else if (key == "count") {
        matrix.meta.count = parse_u64(value);
      } else if (key == "domain") {
        matrix.meta.domain = std::string(value);
      } else if (key == "seed") {
        matrix.meta.seed = parse_u64(value);
      } else if (key == "spec_hash") {
        matrix.meta.spec_hash = parse_u64(value);
      } else if (key == "f_ac") {
        matrix.meta.f_ac = parse_double(value);
      }
      continue;
    }

    Signal s;
    s.dt = matrix.meta.dt;
    s.t0 = matrix.meta.t0;
    std::string_view rest(line);
    while (true) {
      const std::size_t comma = rest.find(',');
      const std::string_view field = rest.substr(0, comma);
      s.values.push_back(parse_double(field));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }

    if (!have_length) {
      matrix.meta.length = s.values.size();
      have_length = true;
    }
    if (s.values.size() != matrix.meta.length) {
      throw ConfigError("matrix row length mismatch");
    }
    matrix.signals.push_back(std::move(s));
  }
  return matrix;
}

SignalMatrix read_signal_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open for reading: " + path.string());
  }
  return read_signal_matrix(in);
}

}  // namespace siggeo
