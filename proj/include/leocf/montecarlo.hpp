#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "leocf/analytic.hpp"

namespace leocf {

/// One satellite that serves the probe terminal, with its downlink fading
/// draw and the number of terminals it serves (the probe included).
struct ServiceLink {
  SphericalPoint point;
  double distance_km = 0.0;
  double beta = 0.0;  // large-scale loss, reference_loss * d^-alpha
  double fade_amp = 0.0;
  double fade_phase = 0.0;
  long users = 1;
};

/// A visible satellite outside the service cone.
struct InterferenceLink {
  SphericalPoint point;
  double distance_km = 0.0;
  double beta = 0.0;
  double fade_amp = 0.0;
  double fade_phase = 0.0;
};

struct Snapshot {
  std::vector<ServiceLink> service;
  std::vector<InterferenceLink> interferers;
};

/// One SINR evaluation. All powers in the linear power unit of the config.
struct SinrSample {
  double ds_power = 0.0;
  double mui_power = 0.0;
  double isi_power = 0.0;
  double noise_power = 0.0;
  double sinr = 0.0;
};

enum class CsiMode { Perfect, Trained, NoBeamforming };

struct CsiSpec {
  CsiMode mode = CsiMode::Perfect;
  int pool_size = 0;  // pilots available; 0 means "use pilot_len"
};

/// Outcome of uplink pilot training for the probe terminal: per service
/// satellite the phase of the channel estimate that conjugate beamforming
/// will apply, plus the pilot bookkeeping.
struct TrainingResult {
  int pool_size = 0;
  int pilot_of_typical = 0;
  std::vector<double> est_phase;
  std::vector<long> copilot_counts;
};

/// Partition externally supplied satellites around an arbitrary terminal
/// position and draw per-link fading and per-satellite user counts.
Snapshot snapshot_from_points(const std::vector<SphericalPoint>& points,
                              const Eigen::Vector3d& ut_position, const NetworkConfig& cfg,
                              Xoshiro256pp& rng);

/// Sample one constellation snapshot around the probe terminal (placed at the
/// north pole; the point process is isotropic so the choice is free).
Snapshot draw_snapshot(const NetworkConfig& cfg, Xoshiro256pp& rng);

/// Scalar LMMSE channel estimate from a pilot projection that received the
/// wanted channel plus co-pilot channels plus noise (all before the
/// sqrt(tau_p rho_p) scaling, which the coefficient reapplies internally).
std::complex<double> lmmse_estimate(double beta_typical, std::complex<double> h_typical,
                                    const std::vector<double>& copilot_betas,
                                    const std::vector<std::complex<double>>& copilot_h,
                                    double tau_p, double rho_p, double sigma2, double omega,
                                    std::complex<double> projected_noise);

/// Uplink training for the probe terminal over every service satellite.
/// pool_size must satisfy 1 <= pool_size <= pilot_len.
TrainingResult uplink_train(const Snapshot& snap, const NetworkConfig& cfg, int pool_size,
                            Xoshiro256pp& rng);

/// Normalized desired-signal amplitude sum_l beta^{1/2} |h| e^{i phase} / sqrt(users_l)
/// under the given beamforming mode.
double dss_amplitude(const Snapshot& snap, const NetworkConfig& cfg, CsiMode mode,
                     const TrainingResult* training = nullptr);

/// Full SINR decomposition of one snapshot. Empty service set marks outage
/// (all-zero desired power, sinr 0).
SinrSample sinr_of(const Snapshot& snap, const NetworkConfig& cfg, CsiMode mode,
                   const TrainingResult* training = nullptr);

/// 95% Wilson interval half width for `successes` out of `trials`.
double wilson_half_width(long successes, long trials);

/// Empirical coverage over a dB threshold grid; outage snapshots count as not
/// covered. Deterministic for fixed (cfg, thresholds, trials, csi, seed)
/// regardless of `threads`.
CoverageCurve estimate_coverage(const NetworkConfig& cfg, const Eigen::ArrayXd& thresholds_db,
                                long trials, const CsiSpec& csi, std::uint64_t seed, int threads);

/// Baseline where only the closest visible satellite serves (full power,
/// main lobe) and every other visible satellite interferes via the side lobe.
CoverageCurve nearest_satellite_coverage(const NetworkConfig& cfg,
                                         const Eigen::ArrayXd& thresholds_db, long trials,
                                         std::uint64_t seed, int threads);

/// Raw per-trial normalized DSS draws.
std::vector<double> sample_dss(const NetworkConfig& cfg, long trials, const CsiSpec& csi,
                               std::uint64_t seed, int threads);

struct EmpiricalCcdf {
  Eigen::ArrayXd x;
  Eigen::ArrayXd ccdf;
};

/// Empirical CCDF of the normalized DSS on an automatic (evenly spaced) grid.
EmpiricalCcdf empirical_dss_ccdf(const NetworkConfig& cfg, long trials, const CsiSpec& csi,
                                 std::uint64_t seed, int threads, int grid_size = 201);

/// Monte Carlo mean of the normalized interference components, for
/// cross-checks against the closed-form means.
struct InterferenceMeans {
  double mui = 0.0;
  double isi = 0.0;
};
InterferenceMeans estimate_interference_means(const NetworkConfig& cfg, long trials,
                                              std::uint64_t seed, int threads);

namespace streams {
inline constexpr std::uint64_t kCoverage = 1;
inline constexpr std::uint64_t kDss = 2;
inline constexpr std::uint64_t kNearest = 3;
inline constexpr std::uint64_t kWalker = 4;
inline constexpr std::uint64_t kInterference = 5;
}  // namespace streams

}  // namespace leocf
