#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>

#include "leocf/channel.hpp"
#include "leocf/geometry.hpp"
#include "leocf/specfun.hpp"

namespace leocf {

/// Raised when a numerical pipeline (quadrature tail, transform inversion)
/// cannot produce a trustworthy value.
class NumericError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Euler-summation tuning for the finite-sum Bromwich inversion.
struct IltControl {
  double ilt_a = 18.4;
  int ilt_b = 11;
  int ilt_c = 15;

  static double d_weight(int c) { return c == 0 ? 2.0 : 1.0; }
  void validate() const;
};

/// Bookkeeping for probability clamping during transform inversion.
struct IltStats {
  long clamped = 0;         // results pulled back into [0, 1]
  long overshoot_warnings = 0;  // excursions beyond 0.05 outside [0, 1]
  double max_excursion = 0.0;

  void merge(const IltStats& o) {
    clamped += o.clamped;
    overshoot_warnings += o.overshoot_warnings;
    max_excursion = std::max(max_excursion, o.max_excursion);
  }
};

/// Full system parameter record. Powers are linear (mW), densities per km^2,
/// lengths km.
struct NetworkConfig {
  GeometryConfig geometry;
  ChannelConfig channel;
  double sap_density_per_km2 = 1e-5;
  double ut_density_per_km2 = 3e-6;
  double tx_power_data = db_to_linear(33.0);   // rho_d, mW
  double tx_power_pilot = db_to_linear(30.0);  // rho_p, mW
  double noise_power = db_to_linear(-100.0);   // sigma^2, mW
  int pilot_len = 200;                         // tau_p, symbols
  int coherence_len = 500;                     // tau_c, symbols

  void validate() const;

  /// Mean co-served-terminal count, clamped below at 1 wherever it divides
  /// transmit power: a satellite serving the probe terminal serves at least it.
  double avg_users_clamped() const {
    return std::max(1.0, avg_users_per_sap(geometry, ut_density_per_km2));
  }

  /// Noise-to-effective-power ratio sigma^2 / (rho_d G_ml) in the normalized
  /// interference units used throughout.
  double noise_term() const { return noise_power / (tx_power_data * effective_gain(Lobe::Main, channel)); }
};

enum class CurveSource { Analytic, MonteCarlo };

/// Thresholds (dB) paired with coverage values; half widths are zero for
/// analytic curves and 95% Wilson half widths for empirical ones.
struct CoverageCurve {
  Eigen::ArrayXd thresholds_db;
  Eigen::ArrayXd coverage;
  Eigen::ArrayXd half_width;
  CurveSource source = CurveSource::Analytic;
};

enum class CapacityScheme { CellFree, NearestSatellite };

struct CapacityConfig {
  double bandwidth_hz = 30e6;
  long num_users = 1000;
  CapacityScheme scheme = CapacityScheme::CellFree;

  void validate() const;
};

struct CapacityResult {
  long num_users = 0;
  CapacityScheme scheme = CapacityScheme::CellFree;
  double system_bits_per_s = 0.0;
  double per_user_bits_per_s = 0.0;
};

/// Laplace transform of the unnormalized desired-signal amplitude at complex
/// s with Re(s) >= 0. Evaluates the point-process expectation as
/// exp(-2 pi lambda_S (R_S/R_E) Theta(s)) with Theta integrated adaptively
/// over the service distance range.
std::complex<double> laplace_dss(std::complex<double> s, const NetworkConfig& cfg,
                                 const SeriesControl& series = {});

/// CDF of a nonnegative random variable at x > 0 recovered from its Laplace
/// transform by Euler-summed Bromwich inversion; result clamped to [0, 1].
double invert_laplace_cdf(double x, const std::function<std::complex<double>(std::complex<double>)>& transform,
                          const IltControl& ctl = {}, IltStats* stats = nullptr);

/// Complementary CDF of the normalized desired-signal amplitude at x > 0.
double dss_ccdf(double x, const NetworkConfig& cfg, const IltControl& ctl = {},
                IltStats* stats = nullptr);

/// Mean multi-user interference (power-like, normalized by rho_d G_ml).
double avg_mui(const NetworkConfig& cfg);

/// Mean inter-satellite interference, side-lobe weighted, same units.
double avg_isi(const NetworkConfig& cfg);

/// P{SINR > gamma_th} for a linear threshold gamma_th > 0.
double coverage_probability(double gamma_th, const NetworkConfig& cfg, const IltControl& ctl = {},
                            IltStats* stats = nullptr);

/// integral_0^inf coverage(2^t - 1) dt, bits/s/Hz, for an arbitrary coverage
/// function; stops once the integrand stays below 1e-6 for three consecutive
/// unit panels.
double spectral_efficiency(const std::function<double(double)>& coverage_of_gamma);

/// Same integral driven by the closed-form coverage of this configuration.
double spectral_efficiency(const NetworkConfig& cfg, const IltControl& ctl = {},
                           IltStats* stats = nullptr);

/// Bits/s/Hz implied by an empirical coverage curve, integrating the
/// piecewise-linear interpolation in t = log2(1 + gamma); coverage below the
/// first grid point is extended flat, beyond the last it is taken as zero.
double spectral_efficiency(const CoverageCurve& curve);

/// System and per-user capacity for the cell-free scheme (closed-form path;
/// training overhead (tau_c - tau_p)/tau_c applies).
CapacityResult system_capacity(const NetworkConfig& cfg, const CapacityConfig& cap,
                               const IltControl& ctl = {}, IltStats* stats = nullptr);

/// System and per-user capacity from an externally estimated coverage curve
/// (nearest-satellite baseline; no training overhead).
CapacityResult system_capacity(const CoverageCurve& curve, const CapacityConfig& cap);

}  // namespace leocf
