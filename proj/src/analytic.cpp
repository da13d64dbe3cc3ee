#include "leocf/analytic.hpp"

#include <cmath>
#include <vector>

#include "leocf/quadrature.hpp"

namespace leocf {

void IltControl::validate() const {
  if (!(ilt_a > 0.0)) throw std::invalid_argument("ilt: a must be > 0");
  if (ilt_b < 1) throw std::invalid_argument("ilt: b must be >= 1");
  if (ilt_c < 1) throw std::invalid_argument("ilt: c must be >= 1");
}

void NetworkConfig::validate() const {
  geometry.validate();
  channel.validate();
  if (!(sap_density_per_km2 >= 0.0))
    throw std::invalid_argument("network: sap_density_per_km2 must be >= 0");
  if (!(ut_density_per_km2 >= 0.0))
    throw std::invalid_argument("network: ut_density_per_km2 must be >= 0");
  if (!(tx_power_data > 0.0)) throw std::invalid_argument("network: tx_power_data must be > 0");
  if (!(tx_power_pilot > 0.0)) throw std::invalid_argument("network: tx_power_pilot must be > 0");
  if (!(noise_power > 0.0)) throw std::invalid_argument("network: noise_power must be > 0");
  if (pilot_len < 0 || pilot_len >= coherence_len)
    throw std::invalid_argument("network: pilot_len must satisfy 0 <= pilot_len < coherence_len");
}

void CapacityConfig::validate() const {
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("capacity: bandwidth_hz must be > 0");
  if (num_users < 1) throw std::invalid_argument("capacity: num_users must be >= 1");
}

std::complex<double> laplace_dss(std::complex<double> s, const NetworkConfig& cfg,
                                 const SeriesControl& series) {
  if (s.real() < 0.0) throw std::invalid_argument("laplace_dss: requires Re(s) >= 0");
  cfg.validate();
  if (cfg.sap_density_per_km2 == 0.0 || s == std::complex<double>(0.0, 0.0)) return {1.0, 0.0};

  const DistanceBounds b = service_bounds(cfg.geometry);
  const double beta0 = cfg.channel.reference_loss * cfg.channel.omega;
  const double alpha = cfg.channel.path_loss_exponent;
  const double m = cfg.channel.nakagami_m;

  const auto integrand = [&](double r) -> std::complex<double> {
    const std::complex<double> delta = s * std::sqrt(beta0 * std::pow(r, -alpha));
    return (1.0 - nakagami_exp_moment(delta, m, series)) * r;
  };
  std::complex<double> theta;
  try {
    theta = integrate_adaptive(integrand, b.r_s_min_km, b.r_s_max_km, 1e-8, 1e-14, 1 << 14);
  } catch (const QuadratureNonconvergence& e) {
    throw NumericError(std::string("laplace_dss: ") + e.what());
  }
  const double rate = 2.0 * kPi * cfg.sap_density_per_km2 *
                      (cfg.geometry.shell_radius_km / cfg.geometry.earth_radius_km);
  return std::exp(-rate * theta);
}

double invert_laplace_cdf(double x,
                          const std::function<std::complex<double>(std::complex<double>)>& transform,
                          const IltControl& ctl, IltStats* stats) {
  if (!(x > 0.0)) throw std::invalid_argument("invert_laplace_cdf: x must be > 0");
  ctl.validate();
  const double a = ctl.ilt_a;
  const int big_b = ctl.ilt_b;
  const int big_c = ctl.ilt_c;

  // Alternating-sign partial sums of Re[L(s_c)/s_c] at s_c = (A + 2 pi i c)/(2x),
  // then binomially averaged over the last B of them.
  const int n_terms = big_c + big_b + 1;
  std::vector<double> prefix(static_cast<std::size_t>(n_terms));
  double acc = 0.0;
  for (int c = 0; c < n_terms; ++c) {
    const std::complex<double> s(a / (2.0 * x), kPi * c / x);
    const std::complex<double> val = transform(s) / s;
    const double sign = (c % 2 == 0) ? 1.0 : -1.0;
    acc += sign * val.real() / IltControl::d_weight(c);
    prefix[static_cast<std::size_t>(c)] = acc;
  }

  double sum = 0.0;
  double binom = 1.0;  // C(B, 0)
  for (int k = 0; k <= big_b; ++k) {
    sum += binom * prefix[static_cast<std::size_t>(big_c + k)];
    binom *= static_cast<double>(big_b - k) / static_cast<double>(k + 1);
  }
  const double raw = std::exp2(-big_b) * std::exp(a / 2.0) / x * sum;

  double clamped = raw;
  if (raw < 0.0) clamped = 0.0;
  if (raw > 1.0) clamped = 1.0;
  if (stats && clamped != raw) {
    stats->clamped++;
    const double excursion = raw < 0.0 ? -raw : raw - 1.0;
    stats->max_excursion = std::max(stats->max_excursion, excursion);
    if (excursion > 0.05) stats->overshoot_warnings++;
  }
  return clamped;
}

double dss_ccdf(double x, const NetworkConfig& cfg, const IltControl& ctl, IltStats* stats) {
  if (!(x > 0.0)) throw std::invalid_argument("dss_ccdf: x must be > 0");
  const double scaled = std::sqrt(cfg.avg_users_clamped()) * x;
  const double cdf = invert_laplace_cdf(
      scaled, [&](std::complex<double> s) { return laplace_dss(s, cfg); }, ctl, stats);
  return 1.0 - cdf;
}

namespace {

// Radial part of the mean-interference integrals: int r^{1-alpha} dr over
// [lo, hi], with the logarithmic branch at alpha == 2.
double radial_moment(double lo, double hi, double alpha) {
  if (std::abs(alpha - 2.0) < 1e-12) return std::log(hi / lo);
  const double p = 2.0 - alpha;
  return (std::pow(hi, p) - std::pow(lo, p)) / p;
}

}  // namespace

double avg_mui(const NetworkConfig& cfg) {
  cfg.validate();
  const DistanceBounds b = service_bounds(cfg.geometry);
  const double phi = cfg.avg_users_clamped();
  const double share = (phi - 1.0) / phi;
  const double rate = 2.0 * kPi * cfg.sap_density_per_km2 * cfg.geometry.shell_radius_km *
                      cfg.channel.omega * cfg.channel.reference_loss / cfg.geometry.earth_radius_km;
  if (b.r_s_max_km <= b.r_s_min_km) return 0.0;
  return rate * share * radial_moment(b.r_s_min_km, b.r_s_max_km, cfg.channel.path_loss_exponent);
}

double avg_isi(const NetworkConfig& cfg) {
  cfg.validate();
  const DistanceBounds b = service_bounds(cfg.geometry);
  if (b.r_max_km <= b.r_s_max_km) return 0.0;
  const double gain_ratio =
      effective_gain(Lobe::Side, cfg.channel) / effective_gain(Lobe::Main, cfg.channel);
  const double rate = 2.0 * kPi * cfg.sap_density_per_km2 * cfg.geometry.shell_radius_km *
                      cfg.channel.omega * cfg.channel.reference_loss / cfg.geometry.earth_radius_km;
  return gain_ratio * rate *
         radial_moment(b.r_s_max_km, b.r_max_km, cfg.channel.path_loss_exponent);
}

double coverage_probability(double gamma_th, const NetworkConfig& cfg, const IltControl& ctl,
                            IltStats* stats) {
  if (!(gamma_th > 0.0)) throw std::invalid_argument("coverage_probability: gamma_th must be > 0");
  const double interference = avg_mui(cfg) + avg_isi(cfg);
  const double x = std::sqrt(gamma_th * interference + gamma_th * cfg.noise_term());
  return dss_ccdf(x, cfg, ctl, stats);
}

double spectral_efficiency(const std::function<double(double)>& coverage_of_gamma) {
  const auto integrand = [&](double t) { return coverage_of_gamma(std::exp2(t) - 1.0); };
  double total = 0.0;
  int quiet_panels = 0;
  constexpr double kTailThreshold = 1e-6;
  constexpr int kMaxPanels = 64;
  for (int k = 0; k < kMaxPanels && quiet_panels < 3; ++k) {
    const double t0 = static_cast<double>(k);
    total += integrate_adaptive(integrand, t0, t0 + 1.0, 1e-7, 1e-10, 1 << 12);
    const double probe = std::max({integrand(t0 + 0.25), integrand(t0 + 0.75), integrand(t0 + 1.0)});
    if (probe < kTailThreshold)
      ++quiet_panels;
    else
      quiet_panels = 0;
    if (k == kMaxPanels - 1 && quiet_panels < 3)
      throw NumericError("spectral_efficiency: coverage tail did not decay");
  }
  return total;
}

double spectral_efficiency(const NetworkConfig& cfg, const IltControl& ctl, IltStats* stats) {
  cfg.validate();
  return spectral_efficiency(
      [&](double gamma) { return gamma <= 0.0 ? 1.0 : coverage_probability(gamma, cfg, ctl, stats); });
}

double spectral_efficiency(const CoverageCurve& curve) {
  const Eigen::Index n = curve.thresholds_db.size();
  if (n == 0) return 0.0;
  if (curve.coverage.size() != n) throw std::invalid_argument("spectral_efficiency: ragged curve");

  // Integrate p dt with t = log2(1 + gamma); flat head below the grid,
  // truncated tail above it.
  double total = 0.0;
  double t_prev = std::log2(1.0 + db_to_linear(curve.thresholds_db[0]));
  total += curve.coverage[0] * t_prev;
  for (Eigen::Index i = 1; i < n; ++i) {
    const double t = std::log2(1.0 + db_to_linear(curve.thresholds_db[i]));
    if (t < t_prev) throw std::invalid_argument("spectral_efficiency: thresholds must ascend");
    total += 0.5 * (curve.coverage[i - 1] + curve.coverage[i]) * (t - t_prev);
    t_prev = t;
  }
  return total;
}

CapacityResult system_capacity(const NetworkConfig& cfg, const CapacityConfig& cap,
                               const IltControl& ctl, IltStats* stats) {
  cfg.validate();
  cap.validate();
  if (cap.scheme != CapacityScheme::CellFree)
    throw std::invalid_argument("system_capacity: closed-form path serves the cell-free scheme; "
                                "pass a coverage curve for the nearest-satellite baseline");
  const double overhead =
      static_cast<double>(cfg.coherence_len - cfg.pilot_len) / static_cast<double>(cfg.coherence_len);
  const double se = spectral_efficiency(cfg, ctl, stats);
  CapacityResult out;
  out.num_users = cap.num_users;
  out.scheme = cap.scheme;
  out.system_bits_per_s = static_cast<double>(cap.num_users) * cap.bandwidth_hz * overhead * se;
  out.per_user_bits_per_s = out.system_bits_per_s / static_cast<double>(cap.num_users);
  return out;
}

CapacityResult system_capacity(const CoverageCurve& curve, const CapacityConfig& cap) {
  cap.validate();
  const double se = spectral_efficiency(curve);
  CapacityResult out;
  out.num_users = cap.num_users;
  out.scheme = CapacityScheme::NearestSatellite;
  out.system_bits_per_s = static_cast<double>(cap.num_users) * cap.bandwidth_hz * se;
  out.per_user_bits_per_s = out.system_bits_per_s / static_cast<double>(cap.num_users);
  return out;
}

}  // namespace leocf
