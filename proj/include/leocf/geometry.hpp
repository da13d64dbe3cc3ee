#pragma once

#include <Eigen/Dense>
#include <vector>

#include "leocf/rng.hpp"

namespace leocf {

inline constexpr double kPi = 3.14159265358979323846;

/// A location on a sphere centred at the origin: unit direction plus radius.
struct SphericalPoint {
  Eigen::Vector3d direction;  // unit norm within 1e-12
  double radius_km = 0.0;

  Eigen::Vector3d position() const { return radius_km * direction; }
};

/// Two concentric spheres (Earth surface and one orbital shell) plus the
/// dome half-angle that bounds a terminal's service cone. All lengths km.
struct GeometryConfig {
  double earth_radius_km = 6371.393;
  double shell_radius_km = 6871.393;
  double dome_angle_rad = 75.0 * kPi / 180.0;  // in [0, pi/2]

  double altitude_km() const { return shell_radius_km - earth_radius_km; }
  void validate() const;  // throws std::invalid_argument on bad values
};

/// Distance landmarks seen from a terminal: nadir-most service satellite,
/// edge of the service cone, and the horizon.
struct DistanceBounds {
  double r_s_min_km = 0.0;
  double r_s_max_km = 0.0;
  double r_max_km = 0.0;
};

DistanceBounds service_bounds(const GeometryConfig& g);

/// Smallest height above the terminal's tangent plane a satellite must reach
/// to fall inside the service cone.
double min_vertical_height(const GeometryConfig& g);

/// Height above the terminal's tangent plane of a shell point at slant
/// distance r. Valid for r in [r_s_min, r_max].
double vertical_height_of(double r_km, const GeometryConfig& g);

/// Area of the shell cap holding every point within slant distance r of the
/// terminal, and its derivative in r. Valid for r in [r_s_min, r_max].
double cap_area(double r_km, const GeometryConfig& g);
double cap_area_derivative(double r_km, const GeometryConfig& g);

/// Distribution of the distance from the terminal to a uniformly chosen
/// service satellite. Total on d >= 0; the pdf vanishes off the support.
double distance_cdf(double d_km, const GeometryConfig& g);
double distance_pdf(double d_km, const GeometryConfig& g);

/// Draw a service-satellite distance (inverse-CDF, closed form).
double sample_service_distance(const GeometryConfig& g, Xoshiro256pp& rng);

/// Mean number of terminals inside one satellite's service footprint on the
/// Earth sphere, for terminal density ut_density_per_km2. Unclamped; callers
/// that divide transmit power must clamp below at 1.
double avg_users_per_sap(const GeometryConfig& g, double ut_density_per_km2);

/// Homogeneous Poisson point process on the full sphere of the given radius.
/// Count is Poisson(4 pi R^2 density); directions are i.i.d. uniform.
std::vector<SphericalPoint> sample_sphere_ppp(double density_per_km2, double radius_km,
                                              Xoshiro256pp& rng);

/// Same process restricted to the polar cap { z/R >= cos_colat_min }.
std::vector<SphericalPoint> sample_spherical_cap_ppp(double density_per_km2, double radius_km,
                                                     double cos_colat_min, Xoshiro256pp& rng);

/// Chord distance between points at radii r1, r2 with angle cosine cos_angle
/// between their directions.
inline double chord_distance(double r1, double r2, double cos_angle) {
  return std::sqrt(std::max(0.0, r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * cos_angle));
}

}  // namespace leocf
