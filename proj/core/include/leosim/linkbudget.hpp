// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <optional>

#include "leosim/geometry.hpp"
#include "leosim/scenario.hpp"

namespace leosim {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

/// 20 log10(4 pi d f / c), d in km.
double fspl_db(double distance_km, double carrier_frequency_hz);
/// Free-space power gain (lambda / 4 pi d)^2, linear.
double free_space_gain(double distance_km, double carrier_frequency_hz);
/// 10 log10(k T B) in dBW.
double noise_power_dbw(double temperature_k, double bandwidth_hz);
double shannon_rate(double bandwidth_hz, double sinr_linear);

struct LinkBudgetResult {
  double fspl_db = 0.0;
  double received_power_dbw = 0.0;
  double noise_power_dbw = 0.0;
  std::optional<double> interference_dbw;
  double sinr_db = 0.0;
  double rate_bps = 0.0;
  double spectral_efficiency = 0.0;  // bit/s/Hz
  double bandwidth_hz = 0.0;
};

/// Budget for one visible link. Atmospheric and scintillation losses apply
/// only when the geometry is a GSL (it carries an elevation). The occupied
/// bandwidth defaults to params.bandwidth_hz; EIRP follows derived_eirp.
/// Throws std::invalid_argument when the link is not visible.
LinkBudgetResult link_rate(const LinkGeometry& geom, const LinkBudgetParams& params,
                           std::optional<double> interference_dbw = std::nullopt,
                           std::optional<double> occupied_bandwidth_hz = std::nullopt);

/// Same budget with an explicit total EIRP in dBW.
LinkBudgetResult link_rate_with_eirp(const LinkGeometry& geom, const LinkBudgetParams& params,
                                     double eirp_dbw, std::optional<double> interference_dbw,
                                     double occupied_bandwidth_hz);

}  // namespace leosim
