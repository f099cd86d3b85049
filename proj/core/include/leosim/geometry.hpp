// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "leosim/constants.hpp"
#include "leosim/orbits.hpp"

namespace leosim {

struct GroundTerminal {
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;  // [-180, 180)
  double altitude_km = 0.0;
};

/// Terminal position in the inertial frame at time t. With earth_rotation
/// the terminal longitude advances at the sidereal rate from t = 0.
Eigen::Vector3d ground_position(const GroundTerminal& gt, double t, bool earth_rotation = false);
Eigen::Vector3d ground_velocity(const GroundTerminal& gt, double t, bool earth_rotation = false);

/// Sub-satellite point of an inertial position (static Earth).
GroundTerminal subsatellite_point(const Eigen::Vector3d& position_km);

struct LinkGeometry {
  double distance_km = 0.0;
  std::optional<double> elevation_deg;  // GSLs only
  double radial_speed_km_s = 0.0;       // > 0 when receding
  bool visible = false;
};

LinkGeometry gsl_geometry(const SatelliteState& sat, const GroundTerminal& gt,
                          double min_elevation_deg, bool earth_rotation = false);
/// Same, for a terminal given directly by inertial position and velocity.
LinkGeometry gsl_geometry(const SatelliteState& sat, const Eigen::Vector3d& ground_km,
                          const Eigen::Vector3d& ground_velocity_km_s, double min_elevation_deg);

/// Throws std::invalid_argument if the two states carry different times.
LinkGeometry isl_geometry(const SatelliteState& a, const SatelliteState& b,
                          double occlusion_radius_km = PhysicalConstants::earth_radius);

/// True when the segment a-b clears the sphere of the given radius.
bool segment_clears_sphere(const Eigen::Vector3d& a, const Eigen::Vector3d& b, double radius_km);

double radial_speed(const Eigen::Vector3d& pa, const Eigen::Vector3d& va,
                    const Eigen::Vector3d& pb, const Eigen::Vector3d& vb);

struct DopplerShift {
  double magnitude_hz = 0.0;
  bool receding = false;
};

DopplerShift doppler_shift(double radial_speed_km_s, double carrier_frequency_hz);

double propagation_delay_ms(double distance_km);

/// Distance from a ground point to a satellite at the given altitude seen
/// at the given elevation.
double slant_range_km(double altitude_km, double elevation_deg);

struct CoverageCap {
  double half_angle_deg = 0.0;  // Earth-central angle
  double area_fraction = 0.0;
};

CoverageCap coverage_cap(double altitude_km, double min_elevation_deg);

/// `count` points uniform by area on the spherical cap of the given
/// half-angle around `center`; deterministic in `seed`.
std::vector<GroundTerminal> sample_users(std::int64_t count, const GroundTerminal& center,
                                         double half_angle_deg, std::uint64_t seed);

/// Angular separation in degrees between two ground points.
double central_angle_deg(const GroundTerminal& a, const GroundTerminal& b);

struct PassSample {
  double t_s = 0.0;
  double elevation_deg = 0.0;
  double distance_km = 0.0;
};

struct PassProfile {
  std::vector<PassSample> samples;
  double start_s = 0.0;
  double end_s = 0.0;
  double beta_deg = 0.0;

  bool empty() const { return samples.empty(); }
  double duration_s() const { return empty() ? 0.0 : end_s - start_s; }
};

/// Overflight of an equatorial terminal at longitude offset beta from a
/// polar orbital plane. Times are relative to the satellite's equator
/// crossing. Samples lie on a `step_s` grid starting at AOS, plus LOS.
PassProfile compute_pass(double altitude_km, double beta_deg, double min_elevation_deg,
                         double step_s, bool earth_rotation = false);

struct FiberSpaceDelay {
  double fiber_ms = 0.0;
  double space_ms = 0.0;
};

FiberSpaceDelay fiber_vs_space_delay(double great_circle_distance_km, double space_path_length_km);

}  // namespace leosim
