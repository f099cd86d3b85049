// SPDX-License-Identifier: Apache-2.0
#include "leosim/orbits.hpp"

#include <cmath>
#include <stdexcept>

#include "leosim/constants.hpp"

namespace leosim {

double orbital_period(double altitude_km) {
  if (!(altitude_km >= 0.0)) throw std::invalid_argument("orbital_period: altitude must be >= 0");
  const double a = (PhysicalConstants::earth_radius + altitude_km) * 1e3;
  return 2.0 * kPi * std::sqrt(a * a * a / PhysicalConstants::geo_gravitational_parameter);
}

double orbital_speed(double altitude_km) {
  if (!(altitude_km >= 0.0)) throw std::invalid_argument("orbital_speed: altitude must be >= 0");
  const double a = (PhysicalConstants::earth_radius + altitude_km) * 1e3;
  return std::sqrt(PhysicalConstants::geo_gravitational_parameter / a) / 1e3;
}

SatelliteState propagate_satellite(const ConstellationConfig& config, int plane, int sat,
                                   double t) {
  if (plane < 1 || plane > config.num_planes || sat < 1 || sat > config.sats_per_plane)
    throw std::out_of_range("propagate_satellite: satellite index out of range");
  if (!(t >= 0.0)) throw std::invalid_argument("propagate: t must be >= 0");
  const double h = config.altitude_km(plane);
  const double r = PhysicalConstants::earth_radius + h;
  const double period = orbital_period(h);
  const double rate = 2.0 * kPi / period;
  // Reduce the time term before adding it so that t and t + T give the same anomaly.
  const double u = 2.0 * kPi * (sat - 1) / config.sats_per_plane +
                   deg2rad(config.phase_offset_deg(plane)) +
                   2.0 * kPi * std::fmod(t / period, 1.0);
  const double node = deg2rad(config.node_longitude_deg(plane));
  const double inc = deg2rad(config.inclination_deg);

  const double cu = std::cos(u), su = std::sin(u);
  const double cn = std::cos(node), sn = std::sin(node);
  const double ci = std::cos(inc), si = std::sin(inc);

  SatelliteState s;
  s.plane = plane;
  s.sat = sat;
  s.time_s = t;
  s.position_km = r * Eigen::Vector3d(cu * cn - su * ci * sn, cu * sn + su * ci * cn, su * si);
  s.velocity_km_s =
      r * rate * Eigen::Vector3d(-su * cn - cu * ci * sn, -su * sn + cu * ci * cn, cu * si);
  return s;
}

std::vector<SatelliteState> propagate(const ConstellationConfig& config, double t) {
  std::vector<SatelliteState> out;
  out.reserve(static_cast<std::size_t>(config.num_satellites()));
  for (int p = 1; p <= config.num_planes; ++p)
    for (int n = 1; n <= config.sats_per_plane; ++n)
      out.push_back(propagate_satellite(config, p, n, t));
  return out;
}

}  // namespace leosim
