#pragma once

#include "leocf/rng.hpp"

namespace leocf {

inline constexpr double kSpeedOfLightKmPerS = 299792.458;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

enum class Lobe { Main, Side };

/// Large-scale and small-scale channel parameters. Gains are stored in dB as
/// configured and converted to linear exactly once inside the accessors; all
/// other math in the library is linear.
struct ChannelConfig {
  double path_loss_exponent = 2.0;   // alpha >= 0; alpha == 2 has a dedicated log branch downstream
  double reference_loss = 1.0;       // linear loss at 1 km
  double carrier_hz = 2.0e9;
  double tx_gain_mainlobe_db = 30.0;
  double tx_gain_sidelobe_db = 20.0;
  double rx_gain_db = 0.0;
  double nakagami_m = 2.0;           // >= 0.5
  double omega = 1.0;                // E|h|^2

  void validate() const;
};

/// Distance-dependent attenuation reference_loss * d^-alpha, d in km.
double path_loss(double d_km, const ChannelConfig& c);

/// Combined transmit gain, receive gain and aperture term (c / 4 pi f)^2 with
/// c expressed in km/s so the result composes with km-based path loss.
double effective_gain(Lobe lobe, const ChannelConfig& c);

/// Amplitude draw with E|h|^2 = omega; square root of a Gamma(m, omega/m).
double sample_nakagami_amplitude(const ChannelConfig& c, Xoshiro256pp& rng);

/// Nakagami shape equivalent to a Rician factor K.
double rician_k_to_m(double k);

/// E|h| for a Nakagami(m, omega) amplitude.
double nakagami_mean_amplitude(double m, double omega);

}  // namespace leocf
