#pragma once

#include <vector>

#include "leocf/montecarlo.hpp"

namespace leocf {

enum class PhaseMode { Fixed, Random };

struct WalkerShell {
  double inclination_deg = 53.0;  // in [0, 90]
  int num_planes = 1;
  int sats_per_plane = 1;
  double altitude_km = 500.0;
};

/// Walker-style multi-shell constellation. Fixed mode spaces planes and
/// in-plane anomalies evenly with a one-slot inter-plane phasing; random mode
/// draws an independent plane ascension and in-plane phase offset per plane.
struct WalkerSpec {
  std::vector<WalkerShell> shells;
  PhaseMode phase_mode = PhaseMode::Fixed;

  long total_count() const;
  void validate() const;
};

std::vector<SphericalPoint> generate(const WalkerSpec& spec, double earth_radius_km,
                                     Xoshiro256pp& rng);

/// Walker spec whose total satellite count matches the mean count of a
/// Poisson process of the given density on the shell at `altitude_km`
/// (one shell per inclination, equal planes each).
WalkerSpec walker_matched_to_density(const std::vector<double>& inclinations_deg, int num_planes,
                                     double altitude_km, double earth_radius_km,
                                     double sap_density_per_km2, PhaseMode mode);

/// Coverage of a terminal at the given latitude served by a fixed set of
/// satellite positions; fading and user counts are redrawn each trial.
CoverageCurve coverage_at_latitude(const std::vector<SphericalPoint>& points,
                                   double observer_lat_deg, const NetworkConfig& cfg,
                                   const Eigen::ArrayXd& thresholds_db, long trials,
                                   std::uint64_t seed, int threads);

/// Same estimator driven by a WalkerSpec. In random phase mode the plane
/// phases are redrawn every trial (a fresh constellation realization per
/// snapshot); in fixed mode the geometry is generated once.
CoverageCurve coverage_at_latitude(const WalkerSpec& spec, double observer_lat_deg,
                                   const NetworkConfig& cfg, const Eigen::ArrayXd& thresholds_db,
                                   long trials, std::uint64_t seed, int threads);

}  // namespace leocf
