#include "leocf/constellation.hpp"

#include <cmath>

#include "leocf/parallel.hpp"

namespace leocf {

long WalkerSpec::total_count() const {
  long n = 0;
  for (const WalkerShell& s : shells)
    n += static_cast<long>(s.num_planes) * static_cast<long>(s.sats_per_plane);
  return n;
}

void WalkerSpec::validate() const {
  if (shells.empty()) throw std::invalid_argument("walker: at least one shell required");
  for (const WalkerShell& s : shells) {
    if (!(s.inclination_deg >= 0.0 && s.inclination_deg <= 90.0))
      throw std::invalid_argument("walker: inclination_deg must lie in [0, 90]");
    if (s.num_planes < 1) throw std::invalid_argument("walker: num_planes must be >= 1");
    if (s.sats_per_plane < 1) throw std::invalid_argument("walker: sats_per_plane must be >= 1");
    if (!(s.altitude_km > 0.0)) throw std::invalid_argument("walker: altitude_km must be > 0");
  }
}

std::vector<SphericalPoint> generate(const WalkerSpec& spec, double earth_radius_km,
                                     Xoshiro256pp& rng) {
  spec.validate();
  std::vector<SphericalPoint> pts;
  pts.reserve(static_cast<std::size_t>(spec.total_count()));
  for (const WalkerShell& shell : spec.shells) {
    const double radius = earth_radius_km + shell.altitude_km;
    const double incl = shell.inclination_deg * kPi / 180.0;
    const int planes = shell.num_planes;
    const int per_plane = shell.sats_per_plane;
    for (int p = 0; p < planes; ++p) {
      double raan = 2.0 * kPi * p / planes;
      // phasing: one anomaly slot walked per plane in fixed mode
      double anomaly0 = 2.0 * kPi * p / (static_cast<double>(planes) * per_plane);
      if (spec.phase_mode == PhaseMode::Random) {
        raan += rng.uniform(0.0, 2.0 * kPi);
        anomaly0 = rng.uniform(0.0, 2.0 * kPi);
      }
      const Eigen::Matrix3d orient =
          (Eigen::AngleAxisd(raan, Eigen::Vector3d::UnitZ()) *
           Eigen::AngleAxisd(incl, Eigen::Vector3d::UnitX()))
              .toRotationMatrix();
      for (int j = 0; j < per_plane; ++j) {
        const double nu = anomaly0 + 2.0 * kPi * j / per_plane;
        const Eigen::Vector3d dir = orient * Eigen::Vector3d(std::cos(nu), std::sin(nu), 0.0);
        pts.push_back({dir, radius});
      }
    }
  }
  return pts;
}

WalkerSpec walker_matched_to_density(const std::vector<double>& inclinations_deg, int num_planes,
                                     double altitude_km, double earth_radius_km,
                                     double sap_density_per_km2, PhaseMode mode) {
  if (inclinations_deg.empty())
    throw std::invalid_argument("walker_matched_to_density: need at least one inclination");
  const double radius = earth_radius_km + altitude_km;
  const double target = 4.0 * kPi * radius * radius * sap_density_per_km2;
  const double per_plane_real =
      target / (static_cast<double>(inclinations_deg.size()) * static_cast<double>(num_planes));
  const int per_plane = std::max(1, static_cast<int>(std::lround(per_plane_real)));

  WalkerSpec spec;
  spec.phase_mode = mode;
  for (const double incl : inclinations_deg)
    spec.shells.push_back({incl, num_planes, per_plane, altitude_km});
  return spec;
}

namespace {

Eigen::Vector3d observer_position(double lat_deg, double earth_radius_km) {
  const double lat = lat_deg * kPi / 180.0;
  return earth_radius_km * Eigen::Vector3d(std::cos(lat), 0.0, std::sin(lat));
}

CoverageCurve coverage_kernel(const NetworkConfig& cfg, const Eigen::ArrayXd& thresholds_db,
                              long trials, std::uint64_t seed, int threads,
                              const std::function<Snapshot(long, Xoshiro256pp&)>& draw) {
  const Eigen::Index k = thresholds_db.size();
  Eigen::ArrayXd gammas(k);
  for (Eigen::Index i = 0; i < k; ++i) gammas[i] = db_to_linear(thresholds_db[i]);

  std::vector<double> sinrs(static_cast<std::size_t>(trials), 0.0);
  parallel_trials(trials, threads, seed, streams::kWalker, [&](long i, Xoshiro256pp& rng) {
    const Snapshot snap = draw(i, rng);
    sinrs[static_cast<std::size_t>(i)] = sinr_of(snap, cfg, CsiMode::Perfect).sinr;
  });

  CoverageCurve curve;
  curve.thresholds_db = thresholds_db;
  curve.coverage.resize(k);
  curve.half_width.resize(k);
  curve.source = CurveSource::MonteCarlo;
  for (Eigen::Index i = 0; i < k; ++i) {
    long hits = 0;
    for (const double s : sinrs)
      if (s > gammas[i]) ++hits;
    curve.coverage[i] = static_cast<double>(hits) / static_cast<double>(trials);
    curve.half_width[i] = wilson_half_width(hits, static_cast<long>(trials));
  }
  return curve;
}

}  // namespace

CoverageCurve coverage_at_latitude(const std::vector<SphericalPoint>& points,
                                   double observer_lat_deg, const NetworkConfig& cfg,
                                   const Eigen::ArrayXd& thresholds_db, long trials,
                                   std::uint64_t seed, int threads) {
  cfg.validate();
  if (trials < 1) throw std::invalid_argument("coverage_at_latitude: trials must be >= 1");
  const Eigen::Vector3d ut = observer_position(observer_lat_deg, cfg.geometry.earth_radius_km);
  return coverage_kernel(cfg, thresholds_db, trials, seed, threads,
                         [&](long, Xoshiro256pp& rng) {
                           return snapshot_from_points(points, ut, cfg, rng);
                         });
}

CoverageCurve coverage_at_latitude(const WalkerSpec& spec, double observer_lat_deg,
                                   const NetworkConfig& cfg, const Eigen::ArrayXd& thresholds_db,
                                   long trials, std::uint64_t seed, int threads) {
  cfg.validate();
  spec.validate();
  for (const WalkerShell& s : spec.shells)
    if (std::abs(cfg.geometry.earth_radius_km + s.altitude_km - cfg.geometry.shell_radius_km) >
        1e-6)
      throw std::invalid_argument(
          "coverage_at_latitude: shell altitude must match the configured shell radius");
  if (trials < 1) throw std::invalid_argument("coverage_at_latitude: trials must be >= 1");

  const Eigen::Vector3d ut = observer_position(observer_lat_deg, cfg.geometry.earth_radius_km);
  if (spec.phase_mode == PhaseMode::Fixed) {
    Xoshiro256pp gen_rng = Xoshiro256pp::substream(seed, streams::kWalker, ~0ULL);
    const std::vector<SphericalPoint> pts = generate(spec, cfg.geometry.earth_radius_km, gen_rng);
    return coverage_kernel(cfg, thresholds_db, trials, seed, threads,
                           [&, pts](long, Xoshiro256pp& rng) {
                             return snapshot_from_points(pts, ut, cfg, rng);
                           });
  }
  return coverage_kernel(cfg, thresholds_db, trials, seed, threads,
                         [&](long, Xoshiro256pp& rng) {
                           const std::vector<SphericalPoint> pts =
                               generate(spec, cfg.geometry.earth_radius_km, rng);
                           return snapshot_from_points(pts, ut, cfg, rng);
                         });
}

}  // namespace leocf
