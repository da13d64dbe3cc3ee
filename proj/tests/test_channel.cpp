#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "leocf/channel.hpp"
#include "leocf/geometry.hpp"
#include "test_util.hpp"

using namespace leocf;

TEST_CASE("path_loss: reference point, inverse square, log-domain agreement") {
  ChannelConfig c;
  c.reference_loss = 3.5;
  c.path_loss_exponent = 2.7;
  CHECK(path_loss(1.0, c) == doctest::Approx(3.5).epsilon(1e-15));

  c.reference_loss = 1.0;
  c.path_loss_exponent = 2.0;
  CHECK(path_loss(10.0, c) == doctest::Approx(0.01).epsilon(1e-15));

  c.path_loss_exponent = 2.5;
  const double log_domain = std::exp(std::log(c.reference_loss) - 2.5 * std::log(500.0));
  CHECK(path_loss(500.0, c) == doctest::Approx(log_domain).epsilon(1e-12));

  CHECK_THROWS_AS(path_loss(0.0, c), std::invalid_argument);
  CHECK_THROWS_AS(path_loss(-2.0, c), std::invalid_argument);
}

TEST_CASE("path_loss is strictly decreasing in distance for positive exponent") {
  ChannelConfig c;
  c.path_loss_exponent = 1.7;
  double prev = path_loss(1.0, c);
  for (double d = 2.0; d < 3000.0; d *= 1.7) {
    const double v = path_loss(d, c);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("effective_gain: isotropic value and gain ratios") {
  ChannelConfig c;
  c.tx_gain_mainlobe_db = 0.0;
  c.tx_gain_sidelobe_db = 0.0;
  c.rx_gain_db = 0.0;
  c.carrier_hz = 2e9;

  // Same aperture factor evaluated in metres; internal result is km^2.
  const double lambda_m = 299792458.0 / 2e9;
  const double aperture_m2 = (lambda_m / (4.0 * kPi)) * (lambda_m / (4.0 * kPi));
  CHECK(aperture_m2 == doctest::Approx(1.425e-4).epsilon(3e-3));
  CHECK(effective_gain(Lobe::Main, c) == doctest::Approx(aperture_m2 * 1e-6).epsilon(1e-9));

  // Table-style gains: 30 dBi main lobe is exactly 1000x the isotropic value,
  // and the main/side ratio is exactly 10 (30 dBi - 20 dBi).
  ChannelConfig t;
  CHECK(effective_gain(Lobe::Main, t) ==
        doctest::Approx(1000.0 * effective_gain(Lobe::Main, c)).epsilon(1e-12));
  CHECK(effective_gain(Lobe::Main, t) / effective_gain(Lobe::Side, t) ==
        doctest::Approx(10.0).epsilon(1e-12));

  // The dB split between the two factors does not matter, only the sum.
  ChannelConfig swapped = t;
  swapped.tx_gain_mainlobe_db = 12.0;
  swapped.rx_gain_db = 18.0;
  CHECK(effective_gain(Lobe::Main, swapped) ==
        doctest::Approx(effective_gain(Lobe::Main, t)).epsilon(1e-12));

  c.carrier_hz = 0.0;
  CHECK_THROWS_AS(effective_gain(Lobe::Main, c), std::invalid_argument);
}

TEST_CASE("nakagami sampling: m=1 reduces to Rayleigh") {
  ChannelConfig c;
  c.nakagami_m = 1.0;
  c.omega = 1.0;
  Xoshiro256pp rng(23);
  std::vector<double> sample(100000);
  for (double& x : sample) x = sample_nakagami_amplitude(c, rng);
  const double ks = testutil::ks_statistic(
      sample, [&](double x) { return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x * x / c.omega); });
  CHECK(ks < 1.628 / std::sqrt(100000.0));  // 1% critical value
}

TEST_CASE("nakagami sampling: unit second moment") {
  ChannelConfig c;
  c.nakagami_m = 2.0;
  c.omega = 1.0;
  Xoshiro256pp rng(29);
  double sum2 = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const double x = sample_nakagami_amplitude(c, rng);
    sum2 += x * x;
  }
  CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.005));
}

TEST_CASE("nakagami sampling: m=2 histogram matches the closed-form density") {
  ChannelConfig c;
  c.nakagami_m = 2.0;
  c.omega = 1.0;
  Xoshiro256pp rng(31);
  const int n = 2000000;
  const double width = 0.1;
  const int bins = 30;
  std::vector<long> counts(bins, 0);
  for (int i = 0; i < n; ++i) {
    const double x = sample_nakagami_amplitude(c, rng);
    const int b = static_cast<int>(x / width);
    if (b < bins) counts[static_cast<std::size_t>(b)]++;
  }
  const auto pdf = [&](double x) {
    const double m = c.nakagami_m;
    return 2.0 * std::pow(m, m) / (std::pow(c.omega, m) * std::tgamma(m)) *
           std::pow(x, 2.0 * m - 1.0) * std::exp(-m * x * x / c.omega);
  };
  double sup = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double expected =
        testutil::integrate(pdf, b * width, (b + 1) * width, 1e-13) / width;
    const double observed = static_cast<double>(counts[static_cast<std::size_t>(b)]) / n / width;
    sup = std::max(sup, std::abs(observed - expected));
  }
  CHECK(sup < 0.01);
}

TEST_CASE("nakagami sampling follows the gamma-square-root law for several m") {
  for (const double m : {0.5, 1.0, 2.0, 4.0}) {
    ChannelConfig c;
    c.nakagami_m = m;
    c.omega = 1.3;
    Xoshiro256pp rng(static_cast<std::uint64_t>(37 + 10 * m));
    std::vector<double> sample(100000);
    for (double& x : sample) x = sample_nakagami_amplitude(c, rng);
    const double ks = testutil::ks_statistic(
        sample, [&](double x) { return testutil::nakagami_cdf(x, m, c.omega); });
    CHECK_MESSAGE(ks < 1.628 / std::sqrt(100000.0), "m = " << m);
  }
}

TEST_CASE("rician_k_to_m: limits and asymptote") {
  CHECK(rician_k_to_m(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rician_k_to_m(1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  const double k = 1e6;
  CHECK(rician_k_to_m(k) == doctest::Approx(k / 2.0 + 0.75).epsilon(1e-4));
  CHECK_THROWS_AS(rician_k_to_m(-0.1), std::invalid_argument);
}

TEST_CASE("channel coefficient second moment is beta * omega") {
  ChannelConfig c;
  c.nakagami_m = 2.0;
  c.omega = 1.0;
  const double beta = path_loss(800.0, c);
  Xoshiro256pp rng(41);
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const double g = std::sqrt(beta) * sample_nakagami_amplitude(c, rng);
    sum += g * g;
  }
  CHECK(sum / n == doctest::Approx(beta * c.omega).epsilon(0.01));
}

TEST_CASE("channel validation") {
  ChannelConfig c;
  c.nakagami_m = 0.3;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ChannelConfig{};
  c.path_loss_exponent = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ChannelConfig{};
  c.omega = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
