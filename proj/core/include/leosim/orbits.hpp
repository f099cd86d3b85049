// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "leosim/scenario.hpp"

namespace leosim {

/// Position and velocity of one satellite in the Earth-centered inertial
/// frame whose x-axis points at node longitude 0.
struct SatelliteState {
  int plane = 1;  // 1..P
  int sat = 1;    // 1..N
  double time_s = 0.0;
  Eigen::Vector3d position_km = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity_km_s = Eigen::Vector3d::Zero();
};

/// Circular-orbit period in seconds (Kepler's third law).
double orbital_period(double altitude_km);
/// Circular-orbit speed in km/s.
double orbital_speed(double altitude_km);

SatelliteState propagate_satellite(const ConstellationConfig& config, int plane, int sat,
                                   double t);

/// All P*N states at time t, ordered plane-major (see state_index).
std::vector<SatelliteState> propagate(const ConstellationConfig& config, double t);

inline std::size_t state_index(const ConstellationConfig& config, int plane, int sat) {
  return static_cast<std::size_t>(plane - 1) * config.sats_per_plane + (sat - 1);
}

}  // namespace leosim
