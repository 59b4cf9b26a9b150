#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace peakdomain {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// key = value text config; '#' starts a comment, blank lines ignored.
// Every key must be consumed by the selected experiment, unknown keys are
// rejected before any output is produced.
class ExperimentConfig {
 public:
  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_string(const std::string& text, std::string origin = "<string>");

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& def);
  std::string require_string(const std::string& key);
  // numbers accept plain decimals and fractions like "1/24"
  double get_double(const std::string& key, double def, double lo, double hi);
  long long get_int(const std::string& key, long long def, long long lo, long long hi);
  std::uint64_t get_u64(const std::string& key, std::uint64_t def);
  bool get_bool(const std::string& key, bool def);

  // throws ConfigError when a key was never consumed
  void finish_reading() const;

  const std::map<std::string, std::string>& raw() const { return values_; }
  const std::string& origin() const { return origin_; }

 private:
  std::string lookup(const std::string& key, const std::string& def, bool required);
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> consumed_;
  std::string origin_;
};

struct ExperimentInfo {
  const char* name;
  const char* summary;
};

// the seven batch experiments
const std::vector<ExperimentInfo>& experiment_catalog();
bool is_known_experiment(const std::string& name);
std::vector<std::string> suggest_experiments(const std::string& name);
std::string experiment_help();

struct RunOutcome {
  int exit_code = 0;  // 0 ok, 1 assertion failure
  std::vector<std::pair<std::string, bool>> assertions;
  std::vector<std::string> csv_files;
  double wall_time_s = 0.0;
};

struct RunOptions {
  std::string experiment;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

// Runs one experiment: emits its CSV files and a manifest (written last)
// into out_dir. Throws ConfigError for invalid configuration (no files are
// written in that case); other exceptions indicate internal errors.
RunOutcome run_experiment(const RunOptions& opt, ExperimentConfig cfg);

// flag > config > PEAKDOMAIN_WORKERS env > hardware
unsigned resolve_workers(long long flag_value, long long config_value);

}  // namespace peakdomain
