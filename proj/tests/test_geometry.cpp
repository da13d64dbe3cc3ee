#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "leocf/geometry.hpp"
#include "test_util.hpp"

using namespace leocf;

namespace {

GeometryConfig table_geometry() { return GeometryConfig{}; }  // defaults: 6371.393 / +500 km / 75 deg

constexpr double kSapDensity = 1e-5;
constexpr double kUtDensity = 3e-6;

}  // namespace

TEST_CASE("ppp sampling: zero density gives an empty process") {
  Xoshiro256pp rng(1);
  CHECK(sample_sphere_ppp(0.0, 6871.393, rng).empty());
  CHECK_THROWS_AS(sample_sphere_ppp(-1.0, 6871.393, rng), std::invalid_argument);
}

TEST_CASE("ppp sampling: mean counts match the area-density product") {
  const GeometryConfig g = table_geometry();
  Xoshiro256pp rng(42);
  const int draws = 10000;

  double shell_total = 0.0;
  for (int i = 0; i < draws; ++i)
    shell_total += static_cast<double>(sample_sphere_ppp(kSapDensity, g.shell_radius_km, rng).size());
  const double shell_mean = shell_total / draws;
  const double shell_expected = 4.0 * kPi * g.shell_radius_km * g.shell_radius_km * kSapDensity;
  CHECK(shell_expected == doctest::Approx(5933.0).epsilon(2e-4));
  CHECK(std::abs(shell_mean - shell_expected) < 3.0 * std::sqrt(shell_expected / draws));

  double earth_total = 0.0;
  for (int i = 0; i < draws; ++i)
    earth_total += static_cast<double>(sample_sphere_ppp(kUtDensity, g.earth_radius_km, rng).size());
  const double earth_mean = earth_total / draws;
  const double earth_expected = 4.0 * kPi * g.earth_radius_km * g.earth_radius_km * kUtDensity;
  CHECK(earth_expected == doctest::Approx(1531.0).epsilon(3e-4));
  CHECK(std::abs(earth_mean - earth_expected) < 3.0 * std::sqrt(earth_expected / draws));
}

TEST_CASE("ppp sampling: longitude and cos-colatitude are uniform") {
  const GeometryConfig g = table_geometry();
  Xoshiro256pp rng(7);
  std::vector<double> lon, z;
  while (lon.size() < 100000) {
    for (const SphericalPoint& p : sample_sphere_ppp(kSapDensity, g.shell_radius_km, rng)) {
      lon.push_back(std::atan2(p.direction.y(), p.direction.x()));
      z.push_back(p.direction.z());
    }
  }
  // chi-square, 20 equiprobable bins, 1% critical value for 19 dof
  const double crit = 36.191;
  CHECK(testutil::chi_square_uniform(lon, -kPi, kPi, 20) < crit);
  CHECK(testutil::chi_square_uniform(z, -1.0, 1.0, 20) < crit);
}

TEST_CASE("service_bounds: landmark distances") {
  GeometryConfig g = table_geometry();
  const DistanceBounds b = service_bounds(g);
  CHECK(b.r_s_min_km == doctest::Approx(500.0));
  CHECK(b.r_max_km == doctest::Approx(2573.2).epsilon(1e-4));
  CHECK(b.r_s_min_km <= b.r_s_max_km);
  CHECK(b.r_s_max_km <= b.r_max_km);

  g.dome_angle_rad = kPi / 2.0;
  const DistanceBounds full = service_bounds(g);
  CHECK(full.r_s_max_km == doctest::Approx(full.r_max_km).epsilon(1e-12));
}

TEST_CASE("min_vertical_height: branches and the service-range identity") {
  GeometryConfig g = table_geometry();

  g.dome_angle_rad = kPi / 2.0;
  CHECK(min_vertical_height(g) == 0.0);

  g.dome_angle_rad = 0.0;
  CHECK(min_vertical_height(g) == doctest::Approx(g.altitude_km()).epsilon(1e-12));

  g.dome_angle_rad = 75.0 * kPi / 180.0;
  const double hv = min_vertical_height(g);
  const DistanceBounds b = service_bounds(g);
  CHECK(hv / std::cos(g.dome_angle_rad) == doctest::Approx(b.r_s_max_km).epsilon(1e-9));
}

TEST_CASE("vertical_height_of: boundary values and range checking") {
  const GeometryConfig g = table_geometry();
  const DistanceBounds b = service_bounds(g);
  CHECK(vertical_height_of(b.r_s_min_km, g) == doctest::Approx(g.altitude_km()).epsilon(1e-9));
  CHECK(std::abs(vertical_height_of(b.r_max_km, g)) < 1e-6);
  CHECK(vertical_height_of(b.r_s_max_km, g) ==
        doctest::Approx(min_vertical_height(g)).epsilon(1e-9));
  CHECK_THROWS_AS(vertical_height_of(b.r_s_min_km - 1.0, g), std::invalid_argument);
  CHECK_THROWS_AS(vertical_height_of(b.r_max_km + 1.0, g), std::invalid_argument);
}

TEST_CASE("vertical_height_of agrees with the direct dot-product height") {
  const GeometryConfig g = table_geometry();
  Xoshiro256pp rng(11);
  const Eigen::Vector3d ut(0.0, 0.0, g.earth_radius_km);
  const double horizon_cos = g.earth_radius_km / g.shell_radius_km;
  const auto pts = sample_spherical_cap_ppp(kSapDensity, g.shell_radius_km, horizon_cos, rng);
  REQUIRE(pts.size() > 50);
  for (const SphericalPoint& p : pts) {
    CHECK(std::abs(p.direction.norm() - 1.0) < 1e-12);
    const double d = (p.position() - ut).norm();
    const double direct = p.position().z() - g.earth_radius_km;  // height above the pole tangent plane
    CHECK(vertical_height_of(d, g) == doctest::Approx(direct).epsilon(1e-11));
  }
}

TEST_CASE("cap_area: endpoints and derivative") {
  const GeometryConfig g = table_geometry();
  const DistanceBounds b = service_bounds(g);
  CHECK(std::abs(cap_area(b.r_s_min_km, g)) < 1e-3);
  CHECK(cap_area(b.r_max_km, g) ==
        doctest::Approx(2.0 * kPi * g.altitude_km() * g.shell_radius_km).epsilon(1e-9));

  const double r = 0.5 * (b.r_s_min_km + b.r_max_km);
  const double h = 1e-3;
  const double fd = (cap_area(r + h, g) - cap_area(r - h, g)) / (2.0 * h);
  CHECK(cap_area_derivative(r, g) == doctest::Approx(fd).epsilon(1e-6));
  CHECK(cap_area_derivative(r, g) ==
        doctest::Approx(2.0 * kPi * g.shell_radius_km / g.earth_radius_km * r).epsilon(1e-12));
}

TEST_CASE("distance_cdf: boundaries, monotonicity, range") {
  const GeometryConfig g = table_geometry();
  const DistanceBounds b = service_bounds(g);
  CHECK(distance_cdf(b.r_s_min_km, g) == 0.0);
  CHECK(distance_cdf(b.r_s_max_km, g) == 1.0);
  CHECK(distance_cdf(0.0, g) == 0.0);
  CHECK(distance_cdf(b.r_max_km, g) == 1.0);

  double prev = -1.0;
  for (int i = 0; i <= 200; ++i) {
    const double d = b.r_s_min_km + (b.r_s_max_km - b.r_s_min_km) * i / 200.0;
    const double f = distance_cdf(d, g);
    CHECK(f >= prev);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    prev = f;
  }
}

TEST_CASE("distance_cdf matches distances of uniformly sampled service satellites") {
  const GeometryConfig g = table_geometry();
  const double hv = min_vertical_height(g);

  // Uniform shell points restricted to a wide polar band, filtered by the
  // vertical-height service rule; the survivors are uniform on the service cap.
  Xoshiro256pp rng(13);
  std::vector<double> dist;
  dist.reserve(1000000);
  while (dist.size() < 1000000) {
    const double z = rng.uniform(0.97, 1.0);  // cos colatitude
    const double height = g.shell_radius_km * z - g.earth_radius_km;
    if (height < hv) continue;
    dist.push_back(chord_distance(g.earth_radius_km, g.shell_radius_km, z));
  }
  const double ks = testutil::ks_statistic(dist, [&](double d) { return distance_cdf(d, g); });
  CHECK(ks < 0.005);
}

TEST_CASE("distance_pdf: support, normalization, derivative of the cdf") {
  const GeometryConfig g = table_geometry();
  const DistanceBounds b = service_bounds(g);
  CHECK(distance_pdf(b.r_s_min_km - 1.0, g) == 0.0);
  CHECK(distance_pdf(b.r_s_max_km + 1.0, g) == 0.0);

  const double mass =
      testutil::integrate([&](double d) { return distance_pdf(d, g); }, b.r_s_min_km, b.r_s_max_km);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

  const double d0 = 0.35 * b.r_s_min_km + 0.65 * b.r_s_max_km;
  const double h = 1e-4 * d0;
  const double fd = (distance_cdf(d0 + h, g) - distance_cdf(d0 - h, g)) / (2.0 * h);
  CHECK(distance_pdf(d0, g) == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("sample_service_distance follows the service distance law") {
  const GeometryConfig g = table_geometry();
  Xoshiro256pp rng(17);
  std::vector<double> sample(100000);
  for (double& d : sample) d = sample_service_distance(g, rng);
  CHECK(testutil::ks_statistic(sample, [&](double d) { return distance_cdf(d, g); }) < 0.01);
}

TEST_CASE("avg_users_per_sap: closed-form values") {
  GeometryConfig g = table_geometry();
  CHECK(avg_users_per_sap(g, 0.0) == 0.0);

  g.dome_angle_rad = kPi / 2.0;
  const double re = g.earth_radius_km;
  const double expected =
      2.0 * kPi * re * kUtDensity * (re - re * re / g.shell_radius_km);  // full-dome simplification
  CHECK(avg_users_per_sap(g, kUtDensity) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(55.7).epsilon(2e-3));
}

TEST_CASE("avg_users_per_sap matches a direct footprint count") {
  const GeometryConfig g = table_geometry();
  const DistanceBounds b = service_bounds(g);

  // Independent oracle: one satellite fixed at the shell pole, terminals a
  // full-sphere process; a terminal is served iff it lies within r_s_max.
  Xoshiro256pp rng(19);
  const Eigen::Vector3d sap(0.0, 0.0, g.shell_radius_km);
  long served = 0;
  const int reps = 10000;
  for (int i = 0; i < reps; ++i) {
    for (const SphericalPoint& p : sample_sphere_ppp(kUtDensity, g.earth_radius_km, rng))
      if ((p.position() - sap).norm() <= b.r_s_max_km) ++served;
  }
  const double mc_mean = static_cast<double>(served) / reps;
  CHECK(mc_mean == doctest::Approx(avg_users_per_sap(g, kUtDensity)).epsilon(0.03));
}

TEST_CASE("config validation rejects bad geometry") {
  GeometryConfig g = table_geometry();
  g.shell_radius_km = g.earth_radius_km;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = table_geometry();
  g.dome_angle_rad = 2.0;  // > pi/2
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}
