// SPDX-License-Identifier: Apache-2.0
#include "leosim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace leosim {

namespace {

constexpr double kC = PhysicalConstants::speed_of_light_km_s;
constexpr double kR = PhysicalConstants::earth_radius;

double wrap_longitude(double lon) {
  double w = std::fmod(lon + 180.0, 360.0);
  if (w < 0.0) w += 360.0;
  return w - 180.0;
}

GroundTerminal from_unit(const Eigen::Vector3d& u, double altitude_km) {
  GroundTerminal g;
  g.latitude_deg = rad2deg(std::asin(std::clamp(u.z(), -1.0, 1.0)));
  g.longitude_deg = wrap_longitude(rad2deg(std::atan2(u.y(), u.x())));
  g.altitude_km = altitude_km;
  return g;
}

Eigen::Vector3d unit_of(const GroundTerminal& g) {
  const double lat = deg2rad(g.latitude_deg), lon = deg2rad(g.longitude_deg);
  return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Eigen::Vector3d ground_position(const GroundTerminal& gt, double t, bool earth_rotation) {
  GroundTerminal g = gt;
  if (earth_rotation) g.longitude_deg += rad2deg(PhysicalConstants::earth_rotation_rate * t);
  return (kR + gt.altitude_km) * unit_of(g);
}

Eigen::Vector3d ground_velocity(const GroundTerminal& gt, double t, bool earth_rotation) {
  if (!earth_rotation) return Eigen::Vector3d::Zero();
  const Eigen::Vector3d r = ground_position(gt, t, true);
  return Eigen::Vector3d(0.0, 0.0, PhysicalConstants::earth_rotation_rate).cross(r);
}

GroundTerminal subsatellite_point(const Eigen::Vector3d& position_km) {
  return from_unit(position_km.normalized(), 0.0);
}

double radial_speed(const Eigen::Vector3d& pa, const Eigen::Vector3d& va,
                    const Eigen::Vector3d& pb, const Eigen::Vector3d& vb) {
  const Eigen::Vector3d d = pb - pa;
  const double n = d.norm();
  if (n == 0.0) return 0.0;
  return (vb - va).dot(d) / n;
}

LinkGeometry gsl_geometry(const SatelliteState& sat, const Eigen::Vector3d& ground_km,
                          const Eigen::Vector3d& ground_velocity_km_s, double min_elevation_deg) {
  LinkGeometry g;
  const Eigen::Vector3d d = sat.position_km - ground_km;
  g.distance_km = d.norm();
  const double s = d.dot(ground_km.normalized()) / g.distance_km;
  g.elevation_deg = rad2deg(std::asin(std::clamp(s, -1.0, 1.0)));
  g.radial_speed_km_s = radial_speed(ground_km, ground_velocity_km_s, sat.position_km,
                                     sat.velocity_km_s);
  g.visible = *g.elevation_deg >= min_elevation_deg;
  return g;
}

LinkGeometry gsl_geometry(const SatelliteState& sat, const GroundTerminal& gt,
                          double min_elevation_deg, bool earth_rotation) {
  return gsl_geometry(sat, ground_position(gt, sat.time_s, earth_rotation),
                      ground_velocity(gt, sat.time_s, earth_rotation), min_elevation_deg);
}

bool segment_clears_sphere(const Eigen::Vector3d& a, const Eigen::Vector3d& b, double radius_km) {
  const Eigen::Vector3d d = b - a;
  const double dd = d.squaredNorm();
  double s = dd > 0.0 ? -a.dot(d) / dd : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return (a + s * d).norm() >= radius_km;
}

LinkGeometry isl_geometry(const SatelliteState& a, const SatelliteState& b,
                          double occlusion_radius_km) {
  if (a.time_s != b.time_s)
    throw std::invalid_argument("isl_geometry: states have different time stamps");
  LinkGeometry g;
  g.distance_km = (b.position_km - a.position_km).norm();
  g.radial_speed_km_s = radial_speed(a.position_km, a.velocity_km_s, b.position_km,
                                     b.velocity_km_s);
  g.visible = g.distance_km > 0.0 &&
              segment_clears_sphere(a.position_km, b.position_km, occlusion_radius_km);
  return g;
}

DopplerShift doppler_shift(double radial_speed_km_s, double carrier_frequency_hz) {
  return {std::abs(radial_speed_km_s) * carrier_frequency_hz / kC, radial_speed_km_s > 0.0};
}

double propagation_delay_ms(double distance_km) {
  if (!(distance_km >= 0.0)) throw std::invalid_argument("propagation_delay: distance < 0");
  return distance_km / kC * 1e3;
}

double slant_range_km(double altitude_km, double elevation_deg) {
  const double s = std::sin(deg2rad(elevation_deg));
  return std::sqrt(kR * kR * s * s + 2.0 * kR * altitude_km + altitude_km * altitude_km) - kR * s;
}

CoverageCap coverage_cap(double altitude_km, double min_elevation_deg) {
  if (!(altitude_km > 0.0)) throw std::invalid_argument("coverage_cap: altitude must be > 0");
  if (!(min_elevation_deg >= 0.0 && min_elevation_deg < 90.0))
    throw std::invalid_argument("coverage_cap: elevation must lie in [0, 90)");
  const double eps = deg2rad(min_elevation_deg);
  const double lambda = std::acos(kR / (kR + altitude_km) * std::cos(eps)) - eps;
  return {rad2deg(lambda), (1.0 - std::cos(lambda)) / 2.0};
}

std::vector<GroundTerminal> sample_users(std::int64_t count, const GroundTerminal& center,
                                         double half_angle_deg, std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("sample_users: count must be >= 0");
  std::vector<GroundTerminal> out;
  out.reserve(static_cast<std::size_t>(count));
  const Eigen::Vector3d c = unit_of(center);
  Eigen::Vector3d east = Eigen::Vector3d::UnitZ().cross(c);
  if (east.norm() < 1e-12) east = Eigen::Vector3d::UnitY();
  east.normalize();
  const Eigen::Vector3d north = c.cross(east);
  const double cos_max = std::cos(deg2rad(half_angle_deg));
  std::mt19937_64 rng(seed);
  for (std::int64_t i = 0; i < count; ++i) {
    const double ct = 1.0 - uniform01(rng) * (1.0 - cos_max);
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    const double phi = 2.0 * kPi * uniform01(rng);
    const Eigen::Vector3d u = ct * c + st * (std::cos(phi) * east + std::sin(phi) * north);
    out.push_back(from_unit(u.normalized(), center.altitude_km));
  }
  return out;
}

double central_angle_deg(const GroundTerminal& a, const GroundTerminal& b) {
  const Eigen::Vector3d ua = unit_of(a), ub = unit_of(b);
  return rad2deg(std::atan2(ua.cross(ub).norm(), ua.dot(ub)));
}

PassProfile compute_pass(double altitude_km, double beta_deg, double min_elevation_deg,
                         double step_s, bool earth_rotation) {
  if (!(step_s > 0.0)) throw std::invalid_argument("compute_pass: step must be > 0");
  ConstellationConfig plane;
  plane.num_planes = 1;
  plane.sats_per_plane = 1;
  plane.base_altitude_km = altitude_km;
  const double period = orbital_period(altitude_km);
  const GroundTerminal gt{0.0, beta_deg, 0.0};

  // Negative times are handled by shifting into [0, T): the orbit is periodic.
  auto state_at = [&](double t) {
    double tt = std::fmod(t, period);
    if (tt < 0.0) tt += period;
    SatelliteState s = propagate_satellite(plane, 1, 1, tt);
    s.time_s = t;
    return s;
  };
  auto geometry_at = [&](double t) { return gsl_geometry(state_at(t), gt, min_elevation_deg, earth_rotation); };
  auto elevation_at = [&](double t) { return *geometry_at(t).elevation_deg; };

  PassProfile prof;
  prof.beta_deg = beta_deg;

  // Coarse scan over the half orbit centred on the equator crossing.
  const double scan = std::min(step_s, 1.0);
  const double half = period / 4.0;
  double best_t = -half, best_el = -90.0;
  for (double t = -half; t <= half; t += scan) {
    const double el = elevation_at(t);
    if (el > best_el) {
      best_el = el;
      best_t = t;
    }
  }
  if (best_el < min_elevation_deg) return prof;

  // Bisection keeping `inside` on the visible side, so endpoint samples pass the mask.
  auto edge = [&](double inside, double outside) {
    for (int i = 0; i < 200 && std::abs(inside - outside) > 1e-9; ++i) {
      const double mid = 0.5 * (inside + outside);
      (elevation_at(mid) >= min_elevation_deg ? inside : outside) = mid;
    }
    return inside;
  };
  double lo_in = best_t, lo = best_t - scan;
  while (elevation_at(lo) >= min_elevation_deg) lo_in = lo, lo -= scan;
  double hi_in = best_t, hi = best_t + scan;
  while (elevation_at(hi) >= min_elevation_deg) hi_in = hi, hi += scan;
  prof.start_s = edge(lo_in, lo);
  prof.end_s = edge(hi_in, hi);
  if (!(prof.start_s < prof.end_s)) return PassProfile{{}, 0.0, 0.0, beta_deg};

  auto push = [&](double t) {
    const LinkGeometry g = geometry_at(t);
    prof.samples.push_back({t, *g.elevation_deg, g.distance_km});
  };
  const auto steps = static_cast<std::int64_t>(std::floor((prof.end_s - prof.start_s) / step_s));
  for (std::int64_t k = 0; k <= steps; ++k) push(prof.start_s + static_cast<double>(k) * step_s);
  if (prof.samples.back().t_s < prof.end_s - 1e-9) push(prof.end_s);
  return prof;
}

FiberSpaceDelay fiber_vs_space_delay(double great_circle_distance_km, double space_path_length_km) {
  if (!(great_circle_distance_km >= 0.0) || !(space_path_length_km >= 0.0))
    throw std::invalid_argument("fiber_vs_space_delay: distances must be >= 0");
  return {great_circle_distance_km * PhysicalConstants::fiber_slowdown_factor / kC * 1e3,
          space_path_length_km / kC * 1e3};
}

}  // namespace leosim
