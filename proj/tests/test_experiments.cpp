#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "peakdomain/experiments.hpp"

using namespace peakdomain;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "peakdomain_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing") {
  auto cfg = ExperimentConfig::from_string(
      "# comment\n"
      "system = north-south\n"
      "N = 40   # trailing comment\n"
      "delta = 1/24\n"
      "flag = on\n");
  CHECK(cfg.require_string("system") == "north-south");
  CHECK(cfg.get_int("N", 0, 1, 100) == 40);
  CHECK(cfg.get_double("delta", 0, 0, 1) == doctest::Approx(1.0 / 24.0).epsilon(1e-15));
  CHECK(cfg.get_bool("flag", false));
  CHECK_NOTHROW(cfg.finish_reading());

  CHECK_THROWS_AS(ExperimentConfig::from_string("novalue\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_string("a = 1\na = 2\n"), ConfigError);

  auto bad = ExperimentConfig::from_string("unknown_key = 3\n");
  CHECK_THROWS_AS(bad.finish_reading(), ConfigError);

  auto range = ExperimentConfig::from_string("N = -4\n");
  CHECK_THROWS_AS(range.get_int("N", 0, 1, 100), ConfigError);
}

TEST_CASE("experiment catalog") {
  CHECK(experiment_catalog().size() == 7);
  CHECK(is_known_experiment("orbit"));
  CHECK(is_known_experiment("asymmetry"));
  CHECK_FALSE(is_known_experiment("orbits"));
  const auto help = experiment_help();
  for (const auto& e : experiment_catalog()) CHECK(help.find(e.name) != std::string::npos);
  CHECK_FALSE(suggest_experiments("entropie").empty());
}

TEST_CASE("orbit experiment writes deterministic CSV") {
  const auto dir = fresh_dir("orbit");
  RunOptions opt{"orbit", dir.string(), 1, 2};
  auto cfg = ExperimentConfig::from_string("system = north-south\nu = 0.5\nn_from = 0\nn_to = 3\n");
  const auto outcome = run_experiment(opt, std::move(cfg));
  CHECK(outcome.exit_code == 0);
  const auto text = slurp(dir / "orbit.csv");
  CHECK(text ==
        "n,u\n0,0.5\n1,0.333333333333\n2,0.2\n3,0.111111111111\n");
  CHECK(fs::exists(dir / "manifest.txt"));
  const auto manifest = slurp(dir / "manifest.txt");
  CHECK(manifest.find("orbit.csv") != std::string::npos);
  CHECK(manifest.find("status: PASS") != std::string::npos);
}

TEST_CASE("unknown experiment and unknown keys are config errors") {
  const auto dir = fresh_dir("bad");
  RunOptions opt{"nonsense", dir.string(), 1, 1};
  auto cfg = ExperimentConfig::from_string("");
  CHECK_THROWS_AS(run_experiment(opt, std::move(cfg)), ConfigError);

  RunOptions opt2{"orbit", (dir / "sub").string(), 1, 1};
  auto cfg2 = ExperimentConfig::from_string("system = north-south\nbogus = 1\n");
  CHECK_THROWS_AS(run_experiment(opt2, std::move(cfg2)), ConfigError);
  CHECK_FALSE(fs::exists(dir / "sub" / "orbit.csv"));  // no output files on config error
}

TEST_CASE("fund-domain experiment, small grid") {
  const auto dir = fresh_dir("fund");
  RunOptions opt{"fund-domain", dir.string(), 1, 2};
  auto cfg = ExperimentConfig::from_string(
      "system = north-south\ngrid_count = 50\nN = 60\nK = 60\nannulus_K = 20\n");
  const auto outcome = run_experiment(opt, std::move(cfg));
  CHECK(outcome.exit_code == 0);
  for (const auto& [name, pass] : outcome.assertions) {
    INFO(name);
    CHECK(pass);
  }
}

TEST_CASE("worker count does not change bytes") {
  std::string first;
  for (unsigned workers : {1u, 2u, 5u}) {
    const auto dir = fresh_dir("det" + std::to_string(workers));
    RunOptions opt{"hopf", dir.string(), 99, workers};
    auto cfg = ExperimentConfig::from_string(
        "system = north-south\nn_samples = 64\nN = 60\ndo_wandering = 1\n");
    const auto outcome = run_experiment(opt, std::move(cfg));
    CHECK(outcome.exit_code == 0);
    std::string bytes;
    for (const auto& f : outcome.csv_files) bytes += slurp(dir / f);
    if (first.empty()) first = bytes;
    CHECK(bytes == first);
  }
}

TEST_CASE("entropy experiment on the full shift") {
  const auto dir = fresh_dir("ent");
  RunOptions opt{"entropy", dir.string(), 1, 1};
  auto cfg = ExperimentConfig::from_string("oracle = full-shift\nm_list = 0,1\nn_min = 8\nn_max = 16\n");
  const auto outcome = run_experiment(opt, std::move(cfg));
  CHECK(outcome.exit_code == 0);
  const auto text = slurp(dir / "entropy.csv");
  CHECK(text.rfind("m,n,count,log_count,slope,t_lo,t_hi\n", 0) == 0);
  CHECK(text.find("0,8,512,") != std::string::npos);  // 2^(8+1)
}

TEST_CASE("asymmetry experiment validates pairs") {
  const auto dir = fresh_dir("asym");
  RunOptions opt{"asymmetry", dir.string(), 1, 1};
  auto bad = ExperimentConfig::from_string("pairs = 0.5\n");
  CHECK_THROWS_AS(run_experiment(opt, std::move(bad)), ConfigError);
}

TEST_CASE("birkhoff experiment small run") {
  const auto dir = fresh_dir("birk");
  RunOptions opt{"birkhoff", dir.string(), 7, 2};
  auto cfg = ExperimentConfig::from_string(
      "mu = bernoulli:0.5\nnu = bernoulli:0.1\ndictionary_radius = 0\nhalf_length = 64\nN = 48\n"
      "splice_samples = 3\nshift_range = 3\nexpect_a = -5\nexpect_b = 1.5\n");
  const auto outcome = run_experiment(opt, std::move(cfg));
  for (const auto& [name, pass] : outcome.assertions) {
    INFO(name);
    CHECK(pass);
  }
  CHECK(outcome.exit_code == 0);
}
