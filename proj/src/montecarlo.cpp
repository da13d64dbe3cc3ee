#include "leocf/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "leocf/parallel.hpp"

namespace leocf {

namespace {

constexpr double kHugeSinr = 1e300;

double safe_ratio(double num, double den) {
  if (den > 0.0) return num / den;
  return num > 0.0 ? kHugeSinr : 0.0;
}

}  // namespace

Snapshot snapshot_from_points(const std::vector<SphericalPoint>& points,
                              const Eigen::Vector3d& ut_position, const NetworkConfig& cfg,
                              Xoshiro256pp& rng) {
  const DistanceBounds b = service_bounds(cfg.geometry);
  const double mean_others = avg_users_per_sap(cfg.geometry, cfg.ut_density_per_km2);
  const double ut_radius = ut_position.norm();
  const Eigen::Vector3d ut_dir = ut_position / ut_radius;
  const double tol = 1e-9 * cfg.geometry.shell_radius_km;

  Snapshot snap;
  for (const SphericalPoint& p : points) {
    const double d = chord_distance(ut_radius, p.radius_km, ut_dir.dot(p.direction));
    if (d <= b.r_s_max_km + tol) {
      ServiceLink link;
      link.point = p;
      link.distance_km = d;
      link.beta = path_loss(d, cfg.channel);
      snap.service.push_back(link);
    } else if (d <= b.r_max_km + tol) {
      InterferenceLink link;
      link.point = p;
      link.distance_km = d;
      link.beta = path_loss(d, cfg.channel);
      snap.interferers.push_back(link);
    }
  }
  for (ServiceLink& link : snap.service) {
    link.users = 1 + draw_poisson(rng, mean_others);
    link.fade_amp = sample_nakagami_amplitude(cfg.channel, rng);
    link.fade_phase = rng.uniform(0.0, 2.0 * kPi);
  }
  for (InterferenceLink& link : snap.interferers) {
    link.fade_amp = sample_nakagami_amplitude(cfg.channel, rng);
    link.fade_phase = rng.uniform(0.0, 2.0 * kPi);
  }
  return snap;
}

Snapshot draw_snapshot(const NetworkConfig& cfg, Xoshiro256pp& rng) {
  cfg.validate();
  // Only the cap above the terminal's horizon can contribute; the cap cut in
  // cos(colatitude) for the pole observer is exactly R_E / R_S.
  const double horizon_cos = cfg.geometry.earth_radius_km / cfg.geometry.shell_radius_km;
  const std::vector<SphericalPoint> pts = sample_spherical_cap_ppp(
      cfg.sap_density_per_km2, cfg.geometry.shell_radius_km, horizon_cos, rng);
  const Eigen::Vector3d pole(0.0, 0.0, cfg.geometry.earth_radius_km);
  return snapshot_from_points(pts, pole, cfg, rng);
}

std::complex<double> lmmse_estimate(double beta_typical, std::complex<double> h_typical,
                                    const std::vector<double>& copilot_betas,
                                    const std::vector<std::complex<double>>& copilot_h,
                                    double tau_p, double rho_p, double sigma2, double omega,
                                    std::complex<double> projected_noise) {
  const double pilot_energy = tau_p * rho_p;
  std::complex<double> projection = std::sqrt(beta_typical) * h_typical;
  double beta_sum = beta_typical;
  for (std::size_t i = 0; i < copilot_betas.size(); ++i) {
    projection += std::sqrt(copilot_betas[i]) * copilot_h[i];
    beta_sum += copilot_betas[i];
  }
  projection = std::sqrt(pilot_energy) * projection + projected_noise;
  const double coeff = std::sqrt(pilot_energy) * beta_typical * omega /
                       (pilot_energy * beta_sum * omega + sigma2);
  return coeff * projection;
}

TrainingResult uplink_train(const Snapshot& snap, const NetworkConfig& cfg, int pool_size,
                            Xoshiro256pp& rng) {
  if (pool_size < 1) throw std::invalid_argument("uplink_train: pool_size must be >= 1");
  if (pool_size > cfg.pilot_len)
    throw std::invalid_argument("uplink_train: pool_size must not exceed pilot_len");

  TrainingResult out;
  out.pool_size = pool_size;
  out.pilot_of_typical = static_cast<int>(rng.uniform01() * pool_size);
  if (out.pilot_of_typical >= pool_size) out.pilot_of_typical = pool_size - 1;
  out.est_phase.reserve(snap.service.size());
  out.copilot_counts.reserve(snap.service.size());

  const double tau_p = static_cast<double>(cfg.pilot_len);
  std::vector<double> betas;
  std::vector<std::complex<double>> chans;
  for (const ServiceLink& link : snap.service) {
    // Co-served terminals pick pilots uniformly; collisions contaminate the
    // projection with their channels, drawn at service-distance law.
    const long collisions = draw_binomial(rng, link.users - 1, 1.0 / pool_size);
    betas.clear();
    chans.clear();
    for (long j = 0; j < collisions; ++j) {
      const double d = sample_service_distance(cfg.geometry, rng);
      betas.push_back(path_loss(d, cfg.channel));
      const double amp = sample_nakagami_amplitude(cfg.channel, rng);
      const double ph = rng.uniform(0.0, 2.0 * kPi);
      chans.emplace_back(amp * std::cos(ph), amp * std::sin(ph));
    }
    const std::complex<double> h(link.fade_amp * std::cos(link.fade_phase),
                                 link.fade_amp * std::sin(link.fade_phase));
    const double noise_sd = std::sqrt(cfg.noise_power / 2.0);
    const std::complex<double> noise(noise_sd * draw_normal(rng), noise_sd * draw_normal(rng));
    const std::complex<double> est = lmmse_estimate(link.beta, h, betas, chans, tau_p,
                                                    cfg.tx_power_pilot, cfg.noise_power,
                                                    cfg.channel.omega, noise);
    out.est_phase.push_back(std::arg(est));
    out.copilot_counts.push_back(collisions);
  }
  return out;
}

namespace {

std::complex<double> ds_sum(const Snapshot& snap, CsiMode mode, const TrainingResult* training) {
  if (mode == CsiMode::Trained) {
    if (training == nullptr || training->est_phase.size() != snap.service.size())
      throw std::invalid_argument("sinr_of: trained mode needs a matching TrainingResult");
  }
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = 0; i < snap.service.size(); ++i) {
    const ServiceLink& link = snap.service[i];
    const double amp = std::sqrt(link.beta / static_cast<double>(link.users)) * link.fade_amp;
    double phase = 0.0;  // perfect co-phasing
    if (mode == CsiMode::Trained) phase = link.fade_phase - training->est_phase[i];
    if (mode == CsiMode::NoBeamforming) phase = link.fade_phase;
    acc += std::complex<double>(amp * std::cos(phase), amp * std::sin(phase));
  }
  return acc;
}

}  // namespace

double dss_amplitude(const Snapshot& snap, const NetworkConfig& cfg, CsiMode mode,
                     const TrainingResult* training) {
  (void)cfg;
  return std::abs(ds_sum(snap, mode, training));
}

SinrSample sinr_of(const Snapshot& snap, const NetworkConfig& cfg, CsiMode mode,
                   const TrainingResult* training) {
  const double g_ml = effective_gain(Lobe::Main, cfg.channel);
  const double g_sl = effective_gain(Lobe::Side, cfg.channel);
  const double rho_d = cfg.tx_power_data;

  SinrSample out;
  out.noise_power = cfg.noise_power;

  std::complex<double> isi_acc(0.0, 0.0);
  for (const InterferenceLink& link : snap.interferers) {
    // Interfering satellites transmit independent unit-power symbols; the
    // uniform channel phase already randomizes the sum.
    const double amp = std::sqrt(link.beta) * link.fade_amp;
    isi_acc += std::complex<double>(amp * std::cos(link.fade_phase),
                                    amp * std::sin(link.fade_phase));
  }
  out.isi_power = rho_d * g_sl * std::norm(isi_acc);

  if (snap.service.empty()) {
    out.sinr = 0.0;  // outage
    return out;
  }

  out.ds_power = rho_d * g_ml * std::norm(ds_sum(snap, mode, training));

  double mui_norm = 0.0;
  for (const ServiceLink& link : snap.service) {
    // Per co-served terminal the cross term carries an independent beamforming
    // phase, so the squared magnitudes add; users share this link's channel.
    const double n = static_cast<double>(link.users);
    mui_norm += (n - 1.0) / n * link.beta * link.fade_amp * link.fade_amp;
  }
  out.mui_power = rho_d * g_ml * mui_norm;

  out.sinr = safe_ratio(out.ds_power, out.mui_power + out.isi_power + out.noise_power);
  return out;
}

double wilson_half_width(long successes, long trials) {
  if (trials <= 0) return 0.0;
  constexpr double z = 1.959963984540054;  // 97.5% normal quantile
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  return z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
}

namespace {

CoverageCurve curve_from_sinrs(const std::vector<double>& sinrs,
                               const Eigen::ArrayXd& thresholds_db) {
  const Eigen::Index k = thresholds_db.size();
  const long trials = static_cast<long>(sinrs.size());
  Eigen::ArrayXd gammas(k);
  for (Eigen::Index i = 0; i < k; ++i) gammas[i] = db_to_linear(thresholds_db[i]);

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
    curve.half_width[i] = wilson_half_width(hits, trials);
  }
  return curve;
}

}  // namespace

CoverageCurve estimate_coverage(const NetworkConfig& cfg, const Eigen::ArrayXd& thresholds_db,
                                long trials, const CsiSpec& csi, std::uint64_t seed, int threads) {
  cfg.validate();
  if (trials < 1) throw std::invalid_argument("estimate_coverage: trials must be >= 1");
  const int pool = csi.pool_size > 0 ? csi.pool_size : cfg.pilot_len;

  std::vector<double> sinrs(static_cast<std::size_t>(trials), 0.0);
  parallel_trials(trials, threads, seed, streams::kCoverage, [&](long i, Xoshiro256pp& rng) {
    const Snapshot snap = draw_snapshot(cfg, rng);
    if (csi.mode == CsiMode::Trained) {
      const TrainingResult tr = uplink_train(snap, cfg, pool, rng);
      sinrs[static_cast<std::size_t>(i)] = sinr_of(snap, cfg, csi.mode, &tr).sinr;
    } else {
      sinrs[static_cast<std::size_t>(i)] = sinr_of(snap, cfg, csi.mode).sinr;
    }
  });
  return curve_from_sinrs(sinrs, thresholds_db);
}

CoverageCurve nearest_satellite_coverage(const NetworkConfig& cfg,
                                         const Eigen::ArrayXd& thresholds_db, long trials,
                                         std::uint64_t seed, int threads) {
  cfg.validate();
  if (trials < 1) throw std::invalid_argument("nearest_satellite_coverage: trials must be >= 1");
  const double g_ml = effective_gain(Lobe::Main, cfg.channel);
  const double g_sl = effective_gain(Lobe::Side, cfg.channel);
  const double horizon_cos = cfg.geometry.earth_radius_km / cfg.geometry.shell_radius_km;
  const double re = cfg.geometry.earth_radius_km;

  std::vector<double> sinrs(static_cast<std::size_t>(trials), 0.0);
  parallel_trials(trials, threads, seed, streams::kNearest, [&](long i, Xoshiro256pp& rng) {
    const std::vector<SphericalPoint> pts = sample_spherical_cap_ppp(
        cfg.sap_density_per_km2, cfg.geometry.shell_radius_km, horizon_cos, rng);
    if (pts.empty()) return;  // outage, sinr stays 0
    std::size_t nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> dist(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
      dist[j] = chord_distance(re, pts[j].radius_km, pts[j].direction.z());
      if (dist[j] < best) {
        best = dist[j];
        nearest = j;
      }
    }
    double signal = 0.0;
    double interference = 0.0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const double amp = sample_nakagami_amplitude(cfg.channel, rng);
      const double p = path_loss(dist[j], cfg.channel) * amp * amp * cfg.tx_power_data;
      if (j == nearest)
        signal = p * g_ml;
      else
        interference += p * g_sl;
    }
    sinrs[static_cast<std::size_t>(i)] = safe_ratio(signal, interference + cfg.noise_power);
  });
  return curve_from_sinrs(sinrs, thresholds_db);
}

std::vector<double> sample_dss(const NetworkConfig& cfg, long trials, const CsiSpec& csi,
                               std::uint64_t seed, int threads) {
  cfg.validate();
  if (trials < 1) throw std::invalid_argument("sample_dss: trials must be >= 1");
  const int pool = csi.pool_size > 0 ? csi.pool_size : cfg.pilot_len;
  std::vector<double> values(static_cast<std::size_t>(trials), 0.0);
  parallel_trials(trials, threads, seed, streams::kDss, [&](long i, Xoshiro256pp& rng) {
    const Snapshot snap = draw_snapshot(cfg, rng);
    if (csi.mode == CsiMode::Trained) {
      const TrainingResult tr = uplink_train(snap, cfg, pool, rng);
      values[static_cast<std::size_t>(i)] = dss_amplitude(snap, cfg, csi.mode, &tr);
    } else {
      values[static_cast<std::size_t>(i)] = dss_amplitude(snap, cfg, csi.mode);
    }
  });
  return values;
}

EmpiricalCcdf empirical_dss_ccdf(const NetworkConfig& cfg, long trials, const CsiSpec& csi,
                                 std::uint64_t seed, int threads, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("empirical_dss_ccdf: grid_size must be >= 2");
  std::vector<double> values = sample_dss(cfg, trials, csi, seed, threads);
  std::sort(values.begin(), values.end());
  const double x_max = values.empty() ? 1.0 : values.back() * 1.02;

  EmpiricalCcdf out;
  out.x.resize(grid_size);
  out.ccdf.resize(grid_size);
  const double n = static_cast<double>(values.size());
  for (int i = 0; i < grid_size; ++i) {
    const double x = x_max * static_cast<double>(i) / static_cast<double>(grid_size - 1);
    const auto it = std::upper_bound(values.begin(), values.end(), x);
    out.x[i] = x;
    out.ccdf[i] = static_cast<double>(values.end() - it) / n;
  }
  return out;
}

InterferenceMeans estimate_interference_means(const NetworkConfig& cfg, long trials,
                                              std::uint64_t seed, int threads) {
  cfg.validate();
  if (trials < 1) throw std::invalid_argument("estimate_interference_means: trials must be >= 1");
  const double g_ml = effective_gain(Lobe::Main, cfg.channel);
  const double rho_d = cfg.tx_power_data;
  std::vector<double> mui(static_cast<std::size_t>(trials), 0.0);
  std::vector<double> isi(static_cast<std::size_t>(trials), 0.0);
  parallel_trials(trials, threads, seed, streams::kInterference, [&](long i, Xoshiro256pp& rng) {
    const Snapshot snap = draw_snapshot(cfg, rng);
    const SinrSample s = sinr_of(snap, cfg, CsiMode::Perfect);
    // normalized by rho_d G_ml to line up with the closed-form means
    mui[static_cast<std::size_t>(i)] = s.mui_power / (rho_d * g_ml);
    isi[static_cast<std::size_t>(i)] = s.isi_power / (rho_d * g_ml);
  });
  InterferenceMeans out;
  for (long i = 0; i < trials; ++i) {
    out.mui += mui[static_cast<std::size_t>(i)];
    out.isi += isi[static_cast<std::size_t>(i)];
  }
  out.mui /= static_cast<double>(trials);
  out.isi /= static_cast<double>(trials);
  return out;
}

}  // namespace leocf
