#include "leocf/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace leocf {

namespace {

// Shared range slack for boundary arguments produced by upstream arithmetic.
double range_tol(const GeometryConfig& g) { return 1e-9 * g.shell_radius_km; }

// R_S - R_E sin^2(eta) - sqrt(R_S^2 - R_E^2 sin^2(eta)) cos(eta).
// One half of (r_s_max^2 - r_s_min^2) / R_E; vanishes as eta -> 0.
double service_span(const GeometryConfig& g) {
  const double se = std::sin(g.dome_angle_rad);
  const double ce = std::cos(g.dome_angle_rad);
  const double q = std::sqrt(g.shell_radius_km * g.shell_radius_km -
                             g.earth_radius_km * g.earth_radius_km * se * se);
  return g.shell_radius_km - g.earth_radius_km * se * se - q * ce;
}

}  // namespace

void GeometryConfig::validate() const {
  if (!(earth_radius_km > 0.0)) throw std::invalid_argument("geometry: earth_radius_km must be > 0");
  if (!(shell_radius_km > earth_radius_km))
    throw std::invalid_argument("geometry: shell_radius_km must exceed earth_radius_km");
  if (!(dome_angle_rad >= 0.0 && dome_angle_rad <= kPi / 2.0 + 1e-12))
    throw std::invalid_argument("geometry: dome_angle_rad must lie in [0, pi/2]");
}

DistanceBounds service_bounds(const GeometryConfig& g) {
  g.validate();
  const double se = std::sin(g.dome_angle_rad);
  const double ce = std::cos(g.dome_angle_rad);
  const double q = std::sqrt(g.shell_radius_km * g.shell_radius_km -
                             g.earth_radius_km * g.earth_radius_km * se * se);
  DistanceBounds b;
  b.r_s_min_km = g.shell_radius_km - g.earth_radius_km;
  b.r_s_max_km = q - g.earth_radius_km * ce;
  b.r_max_km = std::sqrt(g.shell_radius_km * g.shell_radius_km -
                         g.earth_radius_km * g.earth_radius_km);
  return b;
}

double min_vertical_height(const GeometryConfig& g) {
  g.validate();
  const double c = std::cos(g.dome_angle_rad);
  if (c <= 0.0) return 0.0;
  const double c2 = c * c;
  const double re = g.earth_radius_km;
  const double span2 = g.shell_radius_km * g.shell_radius_km - re * re;
  return c2 * (std::sqrt(re * re + span2 / c2) - re);
}

double vertical_height_of(double r_km, const GeometryConfig& g) {
  const DistanceBounds b = service_bounds(g);
  const double tol = range_tol(g);
  if (r_km < b.r_s_min_km - tol || r_km > b.r_max_km + tol)
    throw std::invalid_argument("vertical_height_of: r outside [r_s_min, r_max]");
  return (g.shell_radius_km * g.shell_radius_km - g.earth_radius_km * g.earth_radius_km -
          r_km * r_km) /
         (2.0 * g.earth_radius_km);
}

double cap_area(double r_km, const GeometryConfig& g) {
  const double h = vertical_height_of(r_km, g);  // also range-checks r
  return 2.0 * kPi * (g.shell_radius_km - g.earth_radius_km - h) * g.shell_radius_km;
}

double cap_area_derivative(double r_km, const GeometryConfig& g) {
  const DistanceBounds b = service_bounds(g);
  const double tol = range_tol(g);
  if (r_km < b.r_s_min_km - tol || r_km > b.r_max_km + tol)
    throw std::invalid_argument("cap_area_derivative: r outside [r_s_min, r_max]");
  return 2.0 * kPi * (g.shell_radius_km / g.earth_radius_km) * r_km;
}

double distance_cdf(double d_km, const GeometryConfig& g) {
  if (d_km < 0.0) throw std::invalid_argument("distance_cdf: d must be >= 0");
  const DistanceBounds b = service_bounds(g);
  // Normaliser equals r_s_max^2 - r_s_min^2, so the upper boundary maps to 1 exactly.
  const double span2 = b.r_s_max_km * b.r_s_max_km - b.r_s_min_km * b.r_s_min_km;
  if (d_km < b.r_s_min_km) return 0.0;
  if (d_km >= b.r_s_max_km) return 1.0;
  if (span2 <= 0.0) return 1.0;  // dome angle 0: support degenerates to a point
  return (d_km * d_km - b.r_s_min_km * b.r_s_min_km) / span2;
}

double distance_pdf(double d_km, const GeometryConfig& g) {
  if (d_km < 0.0) throw std::invalid_argument("distance_pdf: d must be >= 0");
  const DistanceBounds b = service_bounds(g);
  if (d_km < b.r_s_min_km || d_km > b.r_s_max_km) return 0.0;
  const double span2 = b.r_s_max_km * b.r_s_max_km - b.r_s_min_km * b.r_s_min_km;
  if (span2 <= 0.0) return 0.0;
  return 2.0 * d_km / span2;
}

double sample_service_distance(const GeometryConfig& g, Xoshiro256pp& rng) {
  const DistanceBounds b = service_bounds(g);
  const double lo2 = b.r_s_min_km * b.r_s_min_km;
  const double hi2 = b.r_s_max_km * b.r_s_max_km;
  return std::sqrt(lo2 + (hi2 - lo2) * rng.uniform01());
}

double avg_users_per_sap(const GeometryConfig& g, double ut_density_per_km2) {
  g.validate();
  if (!(ut_density_per_km2 >= 0.0))
    throw std::invalid_argument("avg_users_per_sap: density must be >= 0");
  const double re = g.earth_radius_km;
  return 2.0 * kPi * (re * re / g.shell_radius_km) * service_span(g) * ut_density_per_km2;
}

std::vector<SphericalPoint> sample_sphere_ppp(double density_per_km2, double radius_km,
                                              Xoshiro256pp& rng) {
  return sample_spherical_cap_ppp(density_per_km2, radius_km, -1.0, rng);
}

std::vector<SphericalPoint> sample_spherical_cap_ppp(double density_per_km2, double radius_km,
                                                     double cos_colat_min, Xoshiro256pp& rng) {
  if (!(density_per_km2 >= 0.0))
    throw std::invalid_argument("sample_spherical_cap_ppp: density must be >= 0");
  if (!(radius_km > 0.0))
    throw std::invalid_argument("sample_spherical_cap_ppp: radius must be > 0");
  if (!(cos_colat_min >= -1.0 && cos_colat_min < 1.0))
    throw std::invalid_argument("sample_spherical_cap_ppp: cos_colat_min outside [-1, 1)");

  const double area = 2.0 * kPi * radius_km * radius_km * (1.0 - cos_colat_min);
  const long n = draw_poisson(rng, area * density_per_km2);

  std::vector<SphericalPoint> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    // Uniform on the cap: cos(colatitude) uniform on [cos_colat_min, 1],
    // longitude uniform on [0, 2 pi).
    const double z = rng.uniform(cos_colat_min, 1.0);
    const double phi = rng.uniform(0.0, 2.0 * kPi);
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    pts.push_back({Eigen::Vector3d(s * std::cos(phi), s * std::sin(phi), z), radius_km});
  }
  return pts;
}

}  // namespace leocf
