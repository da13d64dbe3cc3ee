#include "leocf/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

namespace leocf {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr const char* kVersion = "0.1.0";

double require_number(const json& j, const std::string& field, std::vector<ValidationIssue>& issues) {
  if (!j.contains(field)) {
    issues.push_back({field, "missing mandatory field"});
    return 0.0;
  }
  if (!j.at(field).is_number()) {
    issues.push_back({field, "must be a number"});
    return 0.0;
  }
  return j.at(field).get<double>();
}

long require_integer(const json& j, const std::string& field, std::vector<ValidationIssue>& issues) {
  if (!j.contains(field)) {
    issues.push_back({field, "missing mandatory field"});
    return 0;
  }
  if (!j.at(field).is_number_integer()) {
    issues.push_back({field, "must be an integer"});
    return 0;
  }
  return j.at(field).get<long>();
}

NetworkConfig parse_base(const json& j, std::vector<ValidationIssue>& issues) {
  NetworkConfig cfg;
  cfg.geometry.earth_radius_km = require_number(j, "earth_radius_km", issues);
  cfg.geometry.shell_radius_km = cfg.geometry.earth_radius_km + require_number(j, "altitude_km", issues);
  const double dome_deg = require_number(j, "dome_angle_deg", issues);
  cfg.geometry.dome_angle_rad = dome_deg * kPi / 180.0;
  if (!(dome_deg >= 0.0 && dome_deg <= 90.0))
    issues.push_back({"dome_angle_deg", "must lie in [0, 90] degrees"});

  cfg.sap_density_per_km2 = require_number(j, "sap_density_per_km2", issues);
  cfg.ut_density_per_km2 = require_number(j, "ut_density_per_km2", issues);
  if (cfg.sap_density_per_km2 < 0.0) issues.push_back({"sap_density_per_km2", "must be >= 0"});
  if (cfg.ut_density_per_km2 < 0.0) issues.push_back({"ut_density_per_km2", "must be >= 0"});

  cfg.channel.path_loss_exponent = require_number(j, "path_loss_exponent", issues);
  cfg.channel.carrier_hz = require_number(j, "carrier_hz", issues);
  cfg.channel.tx_gain_mainlobe_db = require_number(j, "tx_gain_mainlobe_db", issues);
  cfg.channel.tx_gain_sidelobe_db = require_number(j, "tx_gain_sidelobe_db", issues);
  cfg.channel.rx_gain_db = require_number(j, "rx_gain_db", issues);
  cfg.channel.nakagami_m = require_number(j, "nakagami_m", issues);
  if (cfg.channel.nakagami_m < 0.5) issues.push_back({"nakagami_m", "must be >= 0.5"});
  cfg.channel.omega = j.value("omega", 1.0);
  if (!(cfg.channel.omega > 0.0)) issues.push_back({"omega", "must be > 0"});
  cfg.channel.reference_loss = db_to_linear(j.value("reference_loss_db", 0.0));

  cfg.tx_power_data = db_to_linear(require_number(j, "tx_power_data_dbm", issues));
  cfg.tx_power_pilot = db_to_linear(require_number(j, "tx_power_pilot_dbm", issues));
  cfg.noise_power = db_to_linear(require_number(j, "noise_power_dbm", issues));

  cfg.pilot_len = static_cast<int>(require_integer(j, "pilot_len", issues));
  cfg.coherence_len = static_cast<int>(require_integer(j, "coherence_len", issues));
  if (cfg.pilot_len < 0) issues.push_back({"pilot_len", "must be >= 0"});
  if (cfg.coherence_len <= cfg.pilot_len)
    issues.push_back({"pilot_len", "must be smaller than coherence_len"});
  return cfg;
}

SweepType parse_sweep_type(const std::string& s, std::vector<ValidationIssue>& issues) {
  if (s == "threshold_db") return SweepType::ThresholdDb;
  if (s == "nakagami_m") return SweepType::NakagamiM;
  if (s == "dome_angle_deg") return SweepType::DomeAngleDeg;
  if (s == "altitude_km") return SweepType::AltitudeKm;
  if (s == "sap_count") return SweepType::SapCount;
  if (s == "ut_count") return SweepType::UtCount;
  if (s == "pilot_len") return SweepType::PilotLen;
  issues.push_back({"sweep.type", "unknown sweep type '" + s + "'"});
  return SweepType::ThresholdDb;
}

ExperimentSpec parse_experiment(const json& j, std::vector<ValidationIssue>& issues) {
  ExperimentSpec spec;
  if (!j.contains("name") || !j.at("name").is_string())
    issues.push_back({"name", "missing mandatory field"});
  else
    spec.name = j.at("name").get<std::string>();

  if (!j.contains("base") || !j.at("base").is_object())
    issues.push_back({"base", "missing mandatory field"});
  else
    spec.base = parse_base(j.at("base"), issues);

  if (!j.contains("sweep") || !j.at("sweep").is_object()) {
    issues.push_back({"sweep", "missing mandatory field"});
  } else {
    const json& sw = j.at("sweep");
    if (!sw.contains("type") || !sw.at("type").is_string())
      issues.push_back({"sweep.type", "missing mandatory field"});
    else
      spec.sweep_type = parse_sweep_type(sw.at("type").get<std::string>(), issues);
    if (!sw.contains("values") || !sw.at("values").is_array() || sw.at("values").empty())
      issues.push_back({"sweep.values", "must be a nonempty array"});
    else
      for (const auto& v : sw.at("values")) spec.sweep_values.push_back(v.get<double>());
  }

  if (spec.sweep_type == SweepType::ThresholdDb) {
    spec.thresholds_db = spec.sweep_values;
  } else if (j.contains("thresholds_db")) {
    for (const auto& v : j.at("thresholds_db")) spec.thresholds_db.push_back(v.get<double>());
  }

  if (!j.contains("engines") || !j.at("engines").is_array() || j.at("engines").empty()) {
    issues.push_back({"engines", "must be a nonempty array"});
  } else {
    for (const auto& e : j.at("engines")) {
      const std::string name = e.get<std::string>();
      if (name == "analytic")
        spec.engine_analytic = true;
      else if (name == "monte-carlo")
        spec.engine_monte_carlo = true;
      else if (name == "nearest-baseline")
        spec.engine_nearest = true;
      else if (name == "walker")
        spec.engine_walker = true;
      else
        issues.push_back({"engines", "unknown engine '" + name + "'"});
    }
  }

  spec.trials = j.value("trials", 1L);
  const bool needs_mc = spec.engine_monte_carlo || spec.engine_nearest || spec.engine_walker;
  if (needs_mc && spec.trials < 1) issues.push_back({"trials", "must be >= 1 for Monte Carlo engines"});
  spec.seed = j.value("seed", 0ULL);

  if (j.contains("ilt")) {
    const json& ilt = j.at("ilt");
    spec.ilt.ilt_a = ilt.value("a", spec.ilt.ilt_a);
    spec.ilt.ilt_b = ilt.value("b", spec.ilt.ilt_b);
    spec.ilt.ilt_c = ilt.value("c", spec.ilt.ilt_c);
    if (!(spec.ilt.ilt_a > 0.0)) issues.push_back({"ilt.a", "must be > 0"});
    if (spec.ilt.ilt_b < 1) issues.push_back({"ilt.b", "must be >= 1"});
    if (spec.ilt.ilt_c < 1) issues.push_back({"ilt.c", "must be >= 1"});
  }

  if (j.contains("csi")) {
    const std::string mode = j.at("csi").get<std::string>();
    if (mode == "perfect")
      spec.csi.mode = CsiMode::Perfect;
    else if (mode == "trained")
      spec.csi.mode = CsiMode::Trained;
    else if (mode == "no-beamforming")
      spec.csi.mode = CsiMode::NoBeamforming;
    else
      issues.push_back({"csi", "must be one of perfect|trained|no-beamforming"});
  }

  if (j.contains("capacity")) {
    CapacityConfig cap;
    const json& c = j.at("capacity");
    cap.bandwidth_hz = require_number(c, "bandwidth_hz", issues);
    if (!(cap.bandwidth_hz > 0.0)) issues.push_back({"capacity.bandwidth_hz", "must be > 0"});
    cap.num_users = c.value("num_users", 1L);
    if (cap.num_users < 1) issues.push_back({"capacity.num_users", "must be >= 1"});
    spec.capacity = cap;
  }

  if (j.contains("walker")) {
    WalkerSpec w;
    const json& jw = j.at("walker");
    if (!jw.contains("shells") || !jw.at("shells").is_array() || jw.at("shells").empty()) {
      issues.push_back({"walker.shells", "must be a nonempty array"});
    } else {
      for (const auto& sh : jw.at("shells")) {
        WalkerShell shell;
        shell.inclination_deg = sh.value("inclination_deg", 53.0);
        shell.num_planes = sh.value("num_planes", 1);
        shell.sats_per_plane = sh.value("sats_per_plane", 1);
        shell.altitude_km = sh.value("altitude_km", 500.0);
        if (!(shell.inclination_deg >= 0.0 && shell.inclination_deg <= 90.0))
          issues.push_back({"walker.shells.inclination_deg", "must lie in [0, 90]"});
        if (shell.num_planes < 1) issues.push_back({"walker.shells.num_planes", "must be >= 1"});
        if (shell.sats_per_plane < 1)
          issues.push_back({"walker.shells.sats_per_plane", "must be >= 1"});
        w.shells.push_back(shell);
      }
    }
    const std::string mode = jw.value("phase_mode", std::string("random"));
    if (mode == "random")
      w.phase_mode = PhaseMode::Random;
    else if (mode == "fixed")
      w.phase_mode = PhaseMode::Fixed;
    else
      issues.push_back({"walker.phase_mode", "must be 'fixed' or 'random'"});
    spec.walker = w;
    spec.walker_observer_lat_deg = jw.value("observer_latitude_deg", 20.0);
  }

  if (spec.engine_walker && !spec.walker)
    issues.push_back({"walker", "walker engine selected but no walker block given"});
  if (spec.sweep_type != SweepType::ThresholdDb && spec.thresholds_db.empty() &&
      !(spec.sweep_type == SweepType::UtCount && spec.capacity))
    issues.push_back({"thresholds_db", "required for parameter sweeps without a capacity block"});
  return spec;
}

std::string format_value(double v) {
  if (!std::isfinite(v)) return "outage";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void apply_sweep(NetworkConfig& cfg, SweepType type, double value) {
  switch (type) {
    case SweepType::ThresholdDb:
      break;
    case SweepType::NakagamiM:
      cfg.channel.nakagami_m = value;
      break;
    case SweepType::DomeAngleDeg:
      cfg.geometry.dome_angle_rad = value * kPi / 180.0;
      break;
    case SweepType::AltitudeKm:
      cfg.geometry.shell_radius_km = cfg.geometry.earth_radius_km + value;
      break;
    case SweepType::SapCount: {
      const double r = cfg.geometry.shell_radius_km;
      cfg.sap_density_per_km2 = value / (4.0 * kPi * r * r);
      break;
    }
    case SweepType::UtCount: {
      const double r = cfg.geometry.earth_radius_km;
      cfg.ut_density_per_km2 = value / (4.0 * kPi * r * r);
      break;
    }
    case SweepType::PilotLen:
      cfg.pilot_len = static_cast<int>(value);
      break;
  }
}

const char* sweep_column(SweepType type) {
  switch (type) {
    case SweepType::ThresholdDb:
      return "threshold_db";
    case SweepType::NakagamiM:
      return "nakagami_m";
    case SweepType::DomeAngleDeg:
      return "dome_angle_deg";
    case SweepType::AltitudeKm:
      return "altitude_km";
    case SweepType::SapCount:
      return "sap_count";
    case SweepType::UtCount:
      return "ut_count";
    case SweepType::PilotLen:
      return "pilot_len";
  }
  return "value";
}

json resolved_config_json(const ExperimentSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["base"] = {
      {"earth_radius_km", spec.base.geometry.earth_radius_km},
      {"shell_radius_km", spec.base.geometry.shell_radius_km},
      {"dome_angle_deg", spec.base.geometry.dome_angle_rad * 180.0 / kPi},
      {"sap_density_per_km2", spec.base.sap_density_per_km2},
      {"ut_density_per_km2", spec.base.ut_density_per_km2},
      {"path_loss_exponent", spec.base.channel.path_loss_exponent},
      {"reference_loss_linear", spec.base.channel.reference_loss},
      {"carrier_hz", spec.base.channel.carrier_hz},
      {"tx_gain_mainlobe_db", spec.base.channel.tx_gain_mainlobe_db},
      {"tx_gain_sidelobe_db", spec.base.channel.tx_gain_sidelobe_db},
      {"rx_gain_db", spec.base.channel.rx_gain_db},
      {"nakagami_m", spec.base.channel.nakagami_m},
      {"omega", spec.base.channel.omega},
      {"tx_power_data_mw", spec.base.tx_power_data},
      {"tx_power_pilot_mw", spec.base.tx_power_pilot},
      {"noise_power_mw", spec.base.noise_power},
      {"pilot_len", spec.base.pilot_len},
      {"coherence_len", spec.base.coherence_len},
  };
  j["sweep_type"] = sweep_column(spec.sweep_type);
  j["sweep_values"] = spec.sweep_values;
  j["thresholds_db"] = spec.thresholds_db;
  j["trials"] = spec.trials;
  j["seed"] = spec.seed;
  j["ilt"] = {{"a", spec.ilt.ilt_a}, {"b", spec.ilt.ilt_b}, {"c", spec.ilt.ilt_c}};
  return j;
}

struct EngineColumns {
  std::vector<std::string> header;
  // one row per (sweep value, threshold) or per sweep value for capacity
  std::vector<std::vector<std::string>> rows;
};

class ExperimentRunner {
 public:
  ExperimentRunner(const ExperimentSpec& spec, const RunOptions& opt) : spec_(spec), opt_(opt) {
    threads_ = opt.threads > 0 ? opt.threads
                               : static_cast<int>(std::thread::hardware_concurrency());
    if (threads_ < 1) threads_ = 1;
    seed_ = opt.seed_override.value_or(spec.seed);
  }

  // Returns manifest "status" and fills CSV text.
  std::string run(std::string& csv_text, json& manifest) {
    const bool capacity_mode = spec_.sweep_type == SweepType::UtCount && spec_.capacity.has_value();
    std::string status = "complete";
    try {
      if (capacity_mode)
        run_capacity();
      else
        run_coverage();
    } catch (const NumericError& e) {
      status = "partial";
      manifest["numeric_error"] = e.what();
    }
    csv_text = render_csv();
    manifest["schema_version"] = kSchemaVersion;
    manifest["program_version"] = kVersion;
    manifest["columns"] = header_;
    manifest["seed"] = seed_;
    manifest["threads"] = threads_;
    manifest["trials"] = spec_.trials;
    manifest["resolved_config"] = resolved_config_json(spec_);
    manifest["ilt_clamp_events"] = ilt_stats_.clamped;
    manifest["ilt_overshoot_warnings"] = ilt_stats_.overshoot_warnings;
    return status;
  }

 private:
  void run_coverage() {
    header_.clear();
    const bool threshold_sweep = spec_.sweep_type == SweepType::ThresholdDb;
    if (!threshold_sweep) header_.push_back(sweep_column(spec_.sweep_type));
    header_.push_back("threshold_db");
    if (spec_.engine_analytic) header_.push_back("coverage_analytic");
    if (spec_.engine_monte_carlo) {
      header_.push_back("coverage_mc");
      header_.push_back("ci_low");
      header_.push_back("ci_high");
    }
    if (spec_.engine_nearest) {
      header_.push_back("coverage_nearest");
      header_.push_back("ci_low_nearest");
      header_.push_back("ci_high_nearest");
    }
    if (spec_.engine_walker) {
      header_.push_back("coverage_walker");
      header_.push_back("ci_low_walker");
      header_.push_back("ci_high_walker");
    }

    const std::vector<double> sweep = threshold_sweep ? std::vector<double>{0.0} : spec_.sweep_values;
    Eigen::ArrayXd grid(static_cast<Eigen::Index>(spec_.thresholds_db.size()));
    for (std::size_t i = 0; i < spec_.thresholds_db.size(); ++i)
      grid[static_cast<Eigen::Index>(i)] = spec_.thresholds_db[i];

    for (const double value : sweep) {
      NetworkConfig cfg = spec_.base;
      if (!threshold_sweep) apply_sweep(cfg, spec_.sweep_type, value);
      cfg.validate();

      std::vector<double> analytic;
      if (spec_.engine_analytic) {
        analytic.reserve(spec_.thresholds_db.size());
        for (const double th : spec_.thresholds_db)
          analytic.push_back(coverage_probability(db_to_linear(th), cfg, spec_.ilt, &ilt_stats_));
      }
      CoverageCurve mc, nearest, walker;
      if (spec_.engine_monte_carlo)
        mc = estimate_coverage(cfg, grid, spec_.trials, spec_.csi, seed_, threads_);
      if (spec_.engine_nearest)
        nearest = nearest_satellite_coverage(cfg, grid, spec_.trials, seed_, threads_);
      if (spec_.engine_walker)
        walker = coverage_at_latitude(*spec_.walker, spec_.walker_observer_lat_deg, cfg, grid,
                                      spec_.trials, seed_, threads_);

      for (std::size_t i = 0; i < spec_.thresholds_db.size(); ++i) {
        std::vector<std::string> row;
        if (!threshold_sweep) row.push_back(format_value(value));
        row.push_back(format_value(spec_.thresholds_db[i]));
        if (spec_.engine_analytic) row.push_back(format_value(analytic[i]));
        const auto emit_curve = [&](const CoverageCurve& c) {
          const auto idx = static_cast<Eigen::Index>(i);
          row.push_back(format_value(c.coverage[idx]));
          row.push_back(format_value(std::max(0.0, c.coverage[idx] - c.half_width[idx])));
          row.push_back(format_value(std::min(1.0, c.coverage[idx] + c.half_width[idx])));
        };
        if (spec_.engine_monte_carlo) emit_curve(mc);
        if (spec_.engine_nearest) emit_curve(nearest);
        if (spec_.engine_walker) emit_curve(walker);
        rows_.push_back(std::move(row));
      }
    }
  }

  void run_capacity() {
    header_ = {"n_users", "system_capacity_cf"};
    if (spec_.engine_nearest) header_.push_back("system_capacity_nearest");
    header_.push_back("per_user_cf");
    if (spec_.engine_nearest) header_.push_back("per_user_nearest");

    // The baseline SINR statistics do not depend on the terminal density, so
    // one curve serves the whole sweep. Wide grid: the head is flat, the tail
    // is far below the integrand floor.
    CoverageCurve baseline;
    if (spec_.engine_nearest) {
      Eigen::ArrayXd grid(161);
      for (int i = 0; i < 161; ++i) grid[i] = -40.0 + 0.5 * i;
      baseline =
          nearest_satellite_coverage(spec_.base, grid, spec_.trials, seed_, threads_);
    }

    for (const double value : spec_.sweep_values) {
      NetworkConfig cfg = spec_.base;
      apply_sweep(cfg, SweepType::UtCount, value);
      cfg.validate();
      CapacityConfig cap = *spec_.capacity;
      cap.num_users = static_cast<long>(value);

      cap.scheme = CapacityScheme::CellFree;
      const CapacityResult cf = system_capacity(cfg, cap, spec_.ilt, &ilt_stats_);
      std::vector<std::string> row{format_value(value), format_value(cf.system_bits_per_s)};
      CapacityResult near;
      if (spec_.engine_nearest) {
        cap.scheme = CapacityScheme::NearestSatellite;
        near = system_capacity(baseline, cap);
        row.push_back(format_value(near.system_bits_per_s));
      }
      row.push_back(format_value(cf.per_user_bits_per_s));
      if (spec_.engine_nearest) row.push_back(format_value(near.per_user_bits_per_s));
      rows_.push_back(std::move(row));
    }
  }

  std::string render_csv() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
      out += header_[i];
      out += (i + 1 < header_.size()) ? ',' : '\n';
    }
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out += row[i];
        out += (i + 1 < row.size()) ? ',' : '\n';
      }
    }
    return out;
  }

  const ExperimentSpec& spec_;
  const RunOptions& opt_;
  int threads_ = 1;
  std::uint64_t seed_ = 0;
  IltStats ilt_stats_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace

ConfigLoad load_config(const std::string& path) {
  ConfigLoad out;
  std::ifstream in(path);
  if (!in) {
    out.parse_error = "cannot open '" + path + "'";
    return out;
  }
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    out.parse_error = e.what();
    return out;
  }
  out.parse_ok = true;

  std::vector<json> experiment_nodes;
  if (root.is_array())
    experiment_nodes.assign(root.begin(), root.end());
  else if (root.contains("experiments") && root.at("experiments").is_array())
    experiment_nodes.assign(root.at("experiments").begin(), root.at("experiments").end());
  else
    experiment_nodes.push_back(root);

  for (const json& node : experiment_nodes)
    out.experiments.push_back(parse_experiment(node, out.issues));
  return out;
}

int run_experiments(const ConfigLoad& load, const RunOptions& options) {
  if (!load.parse_ok) {
    std::fprintf(stderr, "parse error: %s\n", load.parse_error.c_str());
    return kExitParseError;
  }
  if (!load.issues.empty()) {
    for (const auto& issue : load.issues)
      std::fprintf(stderr, "validation error: %s: %s\n", issue.field.c_str(),
                   issue.message.c_str());
    return kExitValidationError;
  }

  std::filesystem::create_directories(options.out_dir);
  bool numeric_trouble = false;
  for (const ExperimentSpec& spec : load.experiments) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentRunner runner(spec, options);
    std::string csv;
    json manifest;
    const std::string status = runner.run(csv, manifest);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::filesystem::path csv_path =
        std::filesystem::path(options.out_dir) / (spec.name + ".csv");
    const std::filesystem::path manifest_path =
        std::filesystem::path(options.out_dir) / (spec.name + "_manifest.json");
    {
      std::ofstream out(csv_path, std::ios::binary);
      out << csv;
    }
    manifest["name"] = spec.name;
    manifest["status"] = status;
    manifest["wall_time_s"] = wall;
    manifest["outputs"] = {csv_path.filename().string()};
    {
      std::ofstream out(manifest_path, std::ios::binary);
      out << manifest.dump(2) << "\n";
    }
    if (status != "complete") numeric_trouble = true;
  }
  return numeric_trouble ? kExitNumericError : kExitOk;
}

}  // namespace leocf
