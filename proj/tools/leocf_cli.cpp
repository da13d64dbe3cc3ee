// Experiment runner: loads a JSON experiment config, executes the selected
// engines, and writes CSV curves plus a JSON manifest per experiment.
#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "leocf/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"leocf - cell-free LEO downlink performance engine"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;

  CLI::App* run = app.add_subcommand("run", "execute every experiment in the config");
  run->add_option("config", config_path, "JSON experiment config")->required();
  run->add_option("--out-dir", out_dir, "output directory (default: $LEOCF_OUT_DIR or .)");
  run->add_option("--threads", threads, "worker threads for Monte Carlo trials");
  run->add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
    seed_given = true;
  });

  CLI::App* validate = app.add_subcommand("validate", "check a config without running it");
  validate->add_option("config", config_path, "JSON experiment config")->required();

  CLI11_PARSE(app, argc, argv);

  const leocf::ConfigLoad load = leocf::load_config(config_path);

  if (validate->parsed()) {
    if (!load.parse_ok) {
      std::fprintf(stderr, "parse error: %s\n", load.parse_error.c_str());
      return leocf::kExitParseError;
    }
    if (load.issues.empty()) {
      std::printf("ok: %zu experiment(s), no issues\n", load.experiments.size());
      return leocf::kExitOk;
    }
    for (const auto& issue : load.issues)
      std::printf("issue: %s: %s\n", issue.field.c_str(), issue.message.c_str());
    return leocf::kExitValidationError;
  }

  leocf::RunOptions options;
  if (!out_dir.empty()) {
    options.out_dir = out_dir;
  } else if (const char* env = std::getenv("LEOCF_OUT_DIR"); env && *env) {
    options.out_dir = env;
  }
  options.threads = threads;
  if (seed_given) options.seed_override = seed;
  return leocf::run_experiments(load, options);
}
