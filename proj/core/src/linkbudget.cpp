// SPDX-License-Identifier: Apache-2.0
#include "leosim/linkbudget.hpp"

#include <stdexcept>

#include "leosim/constants.hpp"

namespace leosim {

double fspl_db(double distance_km, double carrier_frequency_hz) {
  if (!(distance_km > 0.0) || !(carrier_frequency_hz > 0.0))
    throw std::invalid_argument("fspl: distance and frequency must be > 0");
  return 20.0 * std::log10(4.0 * kPi * distance_km * 1e3 * carrier_frequency_hz /
                           PhysicalConstants::speed_of_light);
}

double free_space_gain(double distance_km, double carrier_frequency_hz) {
  const double x = PhysicalConstants::speed_of_light /
                   (4.0 * kPi * distance_km * 1e3 * carrier_frequency_hz);
  return x * x;
}

double noise_power_dbw(double temperature_k, double bandwidth_hz) {
  if (!(temperature_k > 0.0) || !(bandwidth_hz > 0.0))
    throw std::invalid_argument("noise_power: temperature and bandwidth must be > 0");
  return 10.0 * std::log10(PhysicalConstants::boltzmann * temperature_k * bandwidth_hz);
}

double shannon_rate(double bandwidth_hz, double sinr_linear) {
  return bandwidth_hz * std::log2(1.0 + sinr_linear);
}

LinkBudgetResult link_rate_with_eirp(const LinkGeometry& geom, const LinkBudgetParams& params,
                                     double eirp_dbw, std::optional<double> interference_dbw,
                                     double occupied_bandwidth_hz) {
  if (!geom.visible) throw std::invalid_argument("link_rate: link is not visible");
  LinkBudgetResult r;
  r.bandwidth_hz = occupied_bandwidth_hz;
  r.fspl_db = fspl_db(geom.distance_km, params.carrier_frequency_hz);
  const double losses =
      geom.elevation_deg ? params.atmospheric_loss_db + params.scintillation_loss_db : 0.0;
  r.received_power_dbw = eirp_dbw - r.fspl_db - losses + params.rx_gain_dbi;
  r.noise_power_dbw = noise_power_dbw(params.noise_temperature_k, occupied_bandwidth_hz);
  double denom = db_to_linear(r.noise_power_dbw);
  if (interference_dbw) {
    r.interference_dbw = interference_dbw;
    denom += db_to_linear(*interference_dbw);
  }
  const double sinr = db_to_linear(r.received_power_dbw) / denom;
  r.sinr_db = linear_to_db(sinr);
  r.rate_bps = shannon_rate(occupied_bandwidth_hz, sinr);
  r.spectral_efficiency = std::log2(1.0 + sinr);
  return r;
}

LinkBudgetResult link_rate(const LinkGeometry& geom, const LinkBudgetParams& params,
                           std::optional<double> interference_dbw,
                           std::optional<double> occupied_bandwidth_hz) {
  const double bw = occupied_bandwidth_hz.value_or(params.bandwidth_hz);
  return link_rate_with_eirp(geom, params, derived_eirp(params, bw), interference_dbw, bw);
}

}  // namespace leosim
