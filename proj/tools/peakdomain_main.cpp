// peakdomain: batch experiment driver.
//
//   peakdomain <experiment> --config <file> [--seed S] [--workers W] [--out DIR]
//
// Exit codes: 0 all configured assertions pass, 1 assertion failure,
// 2 configuration error, 3 internal error.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "peakdomain/experiments.hpp"
#include "peakdomain/version.hpp"

namespace {

void print_usage() {
  std::printf("peakdomain %s - ergodic-theory batch experiments\n\n", peakdomain::kVersion);
  std::printf("usage: peakdomain <experiment> --config <file> [--seed S] [--workers W] [--out DIR]\n\n");
  std::printf("%s", peakdomain::experiment_help().c_str());
  std::printf("\nworkers default to --workers, then the config, then PEAKDOMAIN_WORKERS, then\n");
  std::printf("the hardware count. Outputs: one CSV set per experiment plus manifest.txt.\n");
}

}  // namespace

int main(int argc, char** argv) {
  using peakdomain::ConfigError;

  if (argc < 2 || std::string(argv[1]) == "help" || std::string(argv[1]) == "--help" ||
      std::string(argv[1]) == "-h" || std::string(argv[1]) == "list") {
    print_usage();
    return 0;
  }

  const std::string experiment = argv[1];
  if (!peakdomain::is_known_experiment(experiment)) {
    std::fprintf(stderr, "error: unknown experiment '%s'; did you mean:", experiment.c_str());
    for (const auto& s : peakdomain::suggest_experiments(experiment))
      std::fprintf(stderr, " %s", s.c_str());
    std::fprintf(stderr, "\n");
    return 2;
  }

  CLI::App app{"peakdomain experiment runner"};
  std::string config_path, out_dir;
  long long seed_flag = -1, workers_flag = -1;
  app.add_option("--config", config_path, "config file (key = value)")->required();
  app.add_option("--seed", seed_flag, "seed override");
  app.add_option("--workers", workers_flag, "worker count override");
  app.add_option("--out", out_dir, "output directory override");
  try {
    app.parse(argc - 1, argv + 1);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  try {
    auto cfg = peakdomain::ExperimentConfig::from_file(config_path);

    peakdomain::RunOptions opt;
    opt.experiment = experiment;
    opt.seed = seed_flag >= 0 ? static_cast<std::uint64_t>(seed_flag) : cfg.get_u64("seed", 1);
    opt.workers = peakdomain::resolve_workers(workers_flag, cfg.get_int("workers", 0, 0, 4096));
    opt.out_dir = !out_dir.empty() ? out_dir : cfg.get_string("out", ".");

    const auto outcome = peakdomain::run_experiment(opt, std::move(cfg));
    for (const auto& [name, pass] : outcome.assertions)
      std::printf("%s %s\n", pass ? "[PASS]" : "[FAIL]", name.c_str());
    return outcome.exit_code;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
}
