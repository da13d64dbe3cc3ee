#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "leocf/analytic.hpp"
#include "leocf/montecarlo.hpp"
#include "test_util.hpp"

using namespace leocf;
using Complex = std::complex<double>;

TEST_CASE("invert_laplace_cdf recovers the exponential distribution") {
  const auto transform = [](Complex s) { return 1.0 / (1.0 + s); };
  for (int i = 1; i <= 20; ++i) {
    const double x = 0.25 * i;
    const double expected = 1.0 - std::exp(-x);
    CHECK(std::abs(invert_laplace_cdf(x, transform) - expected) < 1e-5);
  }
  // total mass far in the tail
  CHECK(std::abs(invert_laplace_cdf(1e6, transform) - 1.0) < 1e-6);
  CHECK_THROWS_AS(invert_laplace_cdf(0.0, transform), std::invalid_argument);
}

TEST_CASE("invert_laplace_cdf recovers a gamma distribution") {
  const auto transform = [](Complex s) { return std::pow(1.0 + s, -3.0); };
  CHECK(std::abs(invert_laplace_cdf(2.0, transform) - testutil::gamma_p(3.0, 2.0)) < 1e-6);
  CHECK(testutil::gamma_p(3.0, 2.0) == doctest::Approx(0.323324).epsilon(1e-5));
  for (int i = 1; i <= 20; ++i) {
    const double x = 0.5 * i;
    CHECK(std::abs(invert_laplace_cdf(x, transform) - testutil::gamma_p(3.0, x)) < 1e-5);
  }
}

TEST_CASE("invert_laplace_cdf recovers a point mass away from the atom") {
  const double c = 1.0;
  const auto transform = [&](Complex s) { return std::exp(-c * s); };
  CHECK(std::abs(invert_laplace_cdf(0.5, transform) - 0.0) < 1e-5);
  CHECK(std::abs(invert_laplace_cdf(2.0, transform) - 1.0) < 1e-5);
}

TEST_CASE("laplace_dss: degenerate cases and transform properties") {
  NetworkConfig cfg;

  NetworkConfig empty = cfg;
  empty.sap_density_per_km2 = 0.0;
  CHECK(laplace_dss(Complex(3.0, 1.0), empty) == Complex(1.0, 0.0));

  CHECK(std::abs(laplace_dss(Complex(1e-9, 0.0), cfg) - 1.0) < 1e-9);

  // |L| <= 1 and conjugate symmetry
  const Complex pts[] = {{0.5, 0.0}, {2.0, 5.0}, {40.0, 100.0}, {300.0, -700.0}};
  for (const Complex s : pts) {
    const Complex v = laplace_dss(s, cfg);
    CHECK(std::abs(v) <= 1.0 + 1e-12);
    const Complex vc = laplace_dss(std::conj(s), cfg);
    CHECK(std::abs(vc - std::conj(v)) < 1e-12);
  }
  CHECK_THROWS_AS(laplace_dss(Complex(-1.0, 0.0), cfg), std::invalid_argument);
}

TEST_CASE("laplace_dss matches a Monte Carlo Laplace functional at s = 2") {
  NetworkConfig cfg;
  const double s = 2.0;
  Xoshiro256pp master(61);
  double acc = 0.0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    Xoshiro256pp rng = Xoshiro256pp::substream(61, 99, static_cast<std::uint64_t>(i));
    const Snapshot snap = draw_snapshot(cfg, rng);
    double amp_sum = 0.0;
    for (const ServiceLink& l : snap.service) amp_sum += std::sqrt(l.beta) * l.fade_amp;
    acc += std::exp(-s * amp_sum);
  }
  const double mc = acc / trials;
  CHECK(laplace_dss(Complex(s, 0.0), cfg).real() == doctest::Approx(mc).epsilon(0.01));
}

TEST_CASE("avg_mui: zero-user limit and the alpha = 2 logarithmic branch") {
  NetworkConfig cfg;

  NetworkConfig lonely = cfg;
  lonely.ut_density_per_km2 = 0.0;
  CHECK(avg_mui(lonely) == 0.0);

  // two-sided numeric limit around alpha = 2
  NetworkConfig lo = cfg, hi = cfg;
  lo.channel.path_loss_exponent = 2.0 - 1e-6;
  hi.channel.path_loss_exponent = 2.0 + 1e-6;
  const double limit = 0.5 * (avg_mui(lo) + avg_mui(hi));
  CHECK(avg_mui(cfg) == doctest::Approx(limit).epsilon(1e-4));
  CHECK(avg_isi(cfg) == doctest::Approx(0.5 * (avg_isi(lo) + avg_isi(hi))).epsilon(1e-4));
}

TEST_CASE("avg_mui coefficient grows with terminal density and stays below 1") {
  NetworkConfig cfg;
  double prev = 0.0;
  for (const double density : {1e-7, 1e-6, 3e-6, 1e-5, 1e-4}) {
    cfg.ut_density_per_km2 = density;
    const double phi = cfg.avg_users_clamped();
    const double coef = (phi - 1.0) / phi;
    CHECK(coef >= prev);
    CHECK(coef < 1.0);
    prev = coef;
  }
}

TEST_CASE("avg_isi: empty interference shell and side-lobe scaling") {
  NetworkConfig cfg;

  NetworkConfig full = cfg;
  full.geometry.dome_angle_rad = kPi / 2.0;
  CHECK(avg_isi(full) == 0.0);

  NetworkConfig silent = cfg;
  silent.channel.tx_gain_sidelobe_db = -2000.0;  // linear side-lobe gain ~ 0
  CHECK(avg_isi(silent) < 1e-150);

  NetworkConfig doubled = cfg;
  doubled.channel.tx_gain_sidelobe_db += 10.0 * std::log10(2.0);
  CHECK(avg_isi(doubled) == doctest::Approx(2.0 * avg_isi(cfg)).epsilon(1e-9));
}

TEST_CASE("dss_ccdf: limits and monotonicity") {
  NetworkConfig cfg;
  CHECK(dss_ccdf(1e-7, cfg) > 0.9999);
  CHECK(dss_ccdf(10.0, cfg) < 1e-9);
  double prev = 1.0;
  for (double x = 0.002; x < 0.05; x += 0.002) {
    const double v = dss_ccdf(x, cfg);
    CHECK(v <= prev + 1e-9);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
}

TEST_CASE("coverage_probability: limits and monotonicity in threshold and load") {
  NetworkConfig cfg;
  CHECK(coverage_probability(1e-12, cfg) > 0.9999);

  double prev = 1.1;
  for (const double db : {-5.0, 0.0, 3.0, 6.0, 9.0, 12.0, 15.0}) {
    const double v = coverage_probability(db_to_linear(db), cfg);
    CHECK(v <= prev + 1e-9);
    prev = v;
  }

  NetworkConfig crowded = cfg;
  crowded.ut_density_per_km2 = 2.0 * cfg.ut_density_per_km2;
  for (const double db : {0.0, 3.0, 6.0}) {
    CHECK(coverage_probability(db_to_linear(db), crowded) <=
          coverage_probability(db_to_linear(db), cfg) + 1e-9);
  }
  CHECK_THROWS_AS(coverage_probability(0.0, cfg), std::invalid_argument);
}

TEST_CASE("spectral_efficiency: rectangle and closed-form coverage functions") {
  const double T = 2.5;
  const double gamma_edge = std::exp2(T) - 1.0;
  const double rect = spectral_efficiency(
      [&](double gamma) { return gamma < gamma_edge ? 1.0 : 0.0; });
  CHECK(rect == doctest::Approx(T).epsilon(1e-3));

  const double expo = spectral_efficiency([](double gamma) { return std::exp(-gamma); });
  // independent trapezoid oracle on a fine grid in t
  double oracle = 0.0;
  const int n = 400000;
  const double t_hi = 30.0;
  double prev = 1.0;
  for (int i = 1; i <= n; ++i) {
    const double t = t_hi * i / n;
    const double f = std::exp(-(std::exp2(t) - 1.0));
    oracle += 0.5 * (prev + f) * (t_hi / n);
    prev = f;
  }
  CHECK(expo == doctest::Approx(oracle).epsilon(1e-5));
}

TEST_CASE("spectral_efficiency of the reference network is finite and falls with load") {
  NetworkConfig cfg;
  const double se = spectral_efficiency(cfg);
  CHECK(se > 0.0);
  CHECK(se < 30.0);
  NetworkConfig crowded = cfg;
  crowded.ut_density_per_km2 = 3.0 * cfg.ut_density_per_km2;
  CHECK(spectral_efficiency(crowded) < se);
}

TEST_CASE("system_capacity: overhead factor and linearity in the user count") {
  NetworkConfig cfg;
  CapacityConfig cap;
  cap.bandwidth_hz = 30e6;
  cap.num_users = 1000;

  const double se = spectral_efficiency(cfg);
  const CapacityResult with_training = system_capacity(cfg, cap);
  CHECK(with_training.system_bits_per_s ==
        doctest::Approx(1000.0 * 30e6 * 0.6 * se).epsilon(1e-6));

  NetworkConfig no_training = cfg;
  no_training.pilot_len = 0;
  const CapacityResult full = system_capacity(no_training, cap);
  CHECK(full.system_bits_per_s == doctest::Approx(1000.0 * 30e6 * se).epsilon(1e-6));

  // doubling users with the coverage curve held fixed doubles the system
  // capacity and leaves the per-user value unchanged
  CoverageCurve curve;
  curve.thresholds_db = Eigen::ArrayXd::LinSpaced(41, -10.0, 30.0);
  curve.coverage = 1.0 / (1.0 + Eigen::exp((curve.thresholds_db - 5.0) / 2.0));
  curve.half_width = Eigen::ArrayXd::Zero(41);
  curve.source = CurveSource::MonteCarlo;
  CapacityConfig cap2 = cap;
  cap2.num_users = 2000;
  const CapacityResult one = system_capacity(curve, cap);
  const CapacityResult two = system_capacity(curve, cap2);
  CHECK(two.system_bits_per_s == doctest::Approx(2.0 * one.system_bits_per_s).epsilon(1e-12));
  CHECK(two.per_user_bits_per_s == doctest::Approx(one.per_user_bits_per_s).epsilon(1e-12));
}

TEST_CASE("network validation catches inconsistent records") {
  NetworkConfig cfg;
  cfg.pilot_len = 500;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = NetworkConfig{};
  cfg.noise_power = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = NetworkConfig{};
  cfg.sap_density_per_km2 = -1e-6;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
