#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leocf/constellation.hpp"

namespace leocf {

struct ValidationIssue {
  std::string field;
  std::string message;
};

enum class SweepType {
  ThresholdDb,
  NakagamiM,
  DomeAngleDeg,
  AltitudeKm,
  SapCount,
  UtCount,
  PilotLen,
};

/// One named experiment: a base configuration, a sweep, the engines to run,
/// and Monte Carlo settings.
struct ExperimentSpec {
  std::string name;
  NetworkConfig base;
  SweepType sweep_type = SweepType::ThresholdDb;
  std::vector<double> sweep_values;
  std::vector<double> thresholds_db;  // coverage grid; equals sweep_values for threshold sweeps
  bool engine_analytic = false;
  bool engine_monte_carlo = false;
  bool engine_nearest = false;
  bool engine_walker = false;
  long trials = 1;
  std::uint64_t seed = 0;
  IltControl ilt;
  CsiSpec csi;
  std::optional<CapacityConfig> capacity;
  std::optional<WalkerSpec> walker;
  double walker_observer_lat_deg = 20.0;
};

struct ConfigLoad {
  bool parse_ok = false;
  std::string parse_error;
  std::vector<ValidationIssue> issues;
  std::vector<ExperimentSpec> experiments;
};

/// Parse and validate a JSON config file. A parse failure leaves parse_ok
/// false; validation problems are listed per field in `issues`.
ConfigLoad load_config(const std::string& path);

struct RunOptions {
  std::string out_dir = ".";
  int threads = 0;  // 0: hardware concurrency
  std::optional<std::uint64_t> seed_override;
};

/// Exit codes shared by the library runner and the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitValidationError = 3;
inline constexpr int kExitNumericError = 4;

/// Execute every experiment in the load result; one CSV plus one manifest per
/// experiment. Returns an exit code.
int run_experiments(const ConfigLoad& load, const RunOptions& options);

}  // namespace leocf
