#include "leocf/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "leocf/geometry.hpp"

namespace leocf {

void ChannelConfig::validate() const {
  if (!(path_loss_exponent >= 0.0))
    throw std::invalid_argument("channel: path_loss_exponent must be >= 0");
  if (!(reference_loss > 0.0)) throw std::invalid_argument("channel: reference_loss must be > 0");
  if (!(carrier_hz > 0.0)) throw std::invalid_argument("channel: carrier_hz must be > 0");
  if (!(nakagami_m >= 0.5)) throw std::invalid_argument("channel: nakagami_m must be >= 0.5");
  if (!(omega > 0.0)) throw std::invalid_argument("channel: omega must be > 0");
}

double path_loss(double d_km, const ChannelConfig& c) {
  if (!(d_km > 0.0)) throw std::invalid_argument("path_loss: distance must be > 0");
  return c.reference_loss * std::pow(d_km, -c.path_loss_exponent);
}

double effective_gain(Lobe lobe, const ChannelConfig& c) {
  if (!(c.carrier_hz > 0.0)) throw std::invalid_argument("effective_gain: carrier_hz must be > 0");
  const double tx_db = lobe == Lobe::Main ? c.tx_gain_mainlobe_db : c.tx_gain_sidelobe_db;
  const double aperture = kSpeedOfLightKmPerS / (4.0 * kPi * c.carrier_hz);
  return db_to_linear(tx_db) * db_to_linear(c.rx_gain_db) * aperture * aperture;
}

double sample_nakagami_amplitude(const ChannelConfig& c, Xoshiro256pp& rng) {
  if (!(c.nakagami_m >= 0.5))
    throw std::invalid_argument("sample_nakagami_amplitude: nakagami_m must be >= 0.5");
  return std::sqrt(draw_gamma(rng, c.nakagami_m, c.omega / c.nakagami_m));
}

double rician_k_to_m(double k) {
  if (!(k >= 0.0)) throw std::invalid_argument("rician_k_to_m: k must be >= 0");
  return (k + 1.0) * (k + 1.0) / (2.0 * k + 1.0);
}

double nakagami_mean_amplitude(double m, double omega) {
  return std::exp(std::lgamma(m + 0.5) - std::lgamma(m)) * std::sqrt(omega / m);
}

}  // namespace leocf
