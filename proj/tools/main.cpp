// Command-line front end: generate synthetic signal sets, analyze radius
// saturation, classify queries against a stored set.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "siggeo/commands.hpp"
#include "siggeo/errors.hpp"
#include "siggeo/matrix_io.hpp"

namespace {

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::string_view rest(text);
  while (!rest.empty()) {
    const std::size_t comma = rest.find(',');
    const std::string_view field = rest.substr(0, comma);
    std::size_t value = 0;
    for (const char ch : field) {
      if (ch < '0' || ch > '9') {
        throw siggeo::ConfigError("--sizes expects comma-separated integers");
      }
      value = value * 10 + static_cast<std::size_t>(ch - '0');
    }
    if (field.empty() || value == 0) {
      throw siggeo::ConfigError("--sizes entries must be positive integers");
    }
    sizes.push_back(value);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return sizes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"signal manifold geometry toolkit"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand(
      "generate", "draw synthetic traces from a generator spec");
  std::string gen_spec;
  std::size_t gen_count = 0;
  std::optional<std::uint64_t> gen_seed;
  std::string gen_out;
  generate->add_option("--spec", gen_spec, "generator spec file")->required();
  generate->add_option("--count", gen_count, "number of traces")->required();
  generate->add_option("--seed", gen_seed, "override the spec file's seed");
  generate->add_option("--out", gen_out, "output signal matrix")->required();

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "Monte-Carlo radius curve and saturation verdict");
  std::string an_manifest;
  std::string an_sizes;
  std::size_t an_trials = siggeo::kDefaultTrials;
  std::uint64_t an_seed = 0;
  std::optional<double> an_tau;
  std::optional<std::size_t> an_window;
  std::string an_metric;
  std::string an_x0;
  std::string an_out;
  analyze->add_option("--manifest", an_manifest, "dataset manifest")->required();
  analyze->add_option("--sizes", an_sizes, "comma-separated subset sizes");
  analyze->add_option("--trials", an_trials, "subsets per size");
  analyze->add_option("--seed", an_seed, "sampling seed");
  analyze->add_option("--tau", an_tau, "saturation growth threshold");
  analyze->add_option("--window", an_window, "saturation trailing window (rows)");
  analyze->add_option("--metric", an_metric, "sup | l2 | cosine");
  analyze->add_option("--x0", an_x0, "first | medoid");
  analyze->add_option("--out", an_out, "output curve file (default stdout)");

  // detect
  auto* detect = app.add_subcommand(
      "detect", "distance-based accept/reject against a dataset");
  std::string de_manifest;
  std::string de_queries;
  std::string de_epsilon;
  std::string de_metric;
  std::string de_out;
  detect->add_option("--manifest", de_manifest, "dataset manifest")->required();
  detect->add_option("--queries", de_queries, "query signal matrix")->required();
  detect->add_option("--epsilon", de_epsilon, "tolerance, or 'auto'");
  detect->add_option("--metric", de_metric, "sup | l2 | cosine");
  detect->add_option("--out", de_out, "output report (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (generate->parsed()) {
      siggeo::GenerateOptions options;
      options.spec_file = gen_spec;
      options.count = gen_count;
      options.seed = gen_seed;
      options.out = gen_out;
      siggeo::cmd_generate(options);
    } else if (analyze->parsed()) {
      siggeo::AnalyzeOptions options;
      options.manifest = an_manifest;
      if (!an_sizes.empty()) options.sizes = parse_sizes(an_sizes);
      options.trials = an_trials;
      options.seed = an_seed;
      options.tau = an_tau;
      options.window = an_window;
      if (!an_metric.empty()) options.metric = siggeo::metric_from_name(an_metric);
      if (!an_x0.empty()) options.x0 = siggeo::x0_policy_from_name(an_x0);
      options.out = an_out;
      siggeo::cmd_analyze(options);
    } else if (detect->parsed()) {
      siggeo::DetectOptions options;
      options.manifest = de_manifest;
      options.queries = de_queries;
      if (!de_epsilon.empty() && de_epsilon != "auto") {
        options.epsilon = siggeo::parse_double(de_epsilon);
      }
      if (!de_metric.empty()) options.metric = siggeo::metric_from_name(de_metric);
      options.out = de_out;
      siggeo::cmd_detect(options);
    }
  } catch (const siggeo::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const siggeo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
