// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace leosim {

// Physical constants shared by every module. Lengths in km unless the
// name says otherwise.
struct PhysicalConstants {
  static constexpr double speed_of_light = 299792458.0;           // m/s
  static constexpr double speed_of_light_km_s = 299792.458;       // km/s
  static constexpr double earth_radius = 6371.0;                  // km
  static constexpr double geo_gravitational_parameter = 3.986004418e14;  // m^3/s^2
  static constexpr double boltzmann = 1.380649e-23;               // J/K
  static constexpr double fiber_slowdown_factor = 1.47;
  static constexpr double earth_rotation_rate = 7.2921150e-5;     // rad/s, sidereal
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDegToRad = kPi / 180.0;
inline constexpr double kRadToDeg = 180.0 / kPi;

constexpr double deg2rad(double deg) { return deg * kDegToRad; }
constexpr double rad2deg(double rad) { return rad * kRadToDeg; }

}  // namespace leosim
