// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "leosim/constants.hpp"

namespace leosim {

/// Trail formation of N_S satellites over a ground-station ULA. Lengths in
/// km unless marked _m.
struct MimoScenario {
  int num_satellites = 6;
  int total_tx_antennas = 12;
  double inter_satellite_distance_km = 100.0;  // arc length along the orbit
  double altitude_km = 600.0;
  int gs_antennas = 100;
  double gs_element_gain_dbi = 20.0;
  double tx_element_gain_dbi = 0.0;
  double carrier_frequency_hz = 20e9;
  double bandwidth_hz = 400e6;
  double noise_temperature_k = 354.81;
  double gs_spacing_m = 0.0;  // 0 selects lambda / 2
  double tx_spacing_m = 0.0;  // 0 selects lambda / 2
  std::vector<double> sum_eirp_sweep_dbw = {30, 35, 40, 45, 50, 55, 60};

  int antennas_per_satellite() const { return total_tx_antennas / num_satellites; }
  double wavelength_m() const { return PhysicalConstants::speed_of_light / carrier_frequency_hz; }
  double effective_gs_spacing_m() const { return gs_spacing_m > 0 ? gs_spacing_m : wavelength_m() / 2; }
  double effective_tx_spacing_m() const { return tx_spacing_m > 0 ? tx_spacing_m : wavelength_m() / 2; }
  double noise_power_dbw() const;
  /// Throws std::invalid_argument unless N_S divides the antenna total.
  void validate() const;
};

using ChannelMatrix = Eigen::MatrixXcd;

/// Element positions in metres, local frame: GS array centre at the origin,
/// x along the ground track, z up.
std::vector<Eigen::Vector3d> tx_element_positions(const MimoScenario& s);
std::vector<Eigen::Vector3d> rx_element_positions(const MimoScenario& s);

/// Rows are receive elements, columns transmit elements. Entry amplitude
/// (lambda / 4 pi d) sqrt(G_rx G_tx), phase -2 pi d / lambda, exact d.
ChannelMatrix build_channel(const MimoScenario& s);

/// Power per eigenmode for channel gains g_i (s_i^2 / noise) under a total
/// power budget. Returns one entry per gain, in input order.
std::vector<double> waterfill(const std::vector<double>& gains, double total_power);

/// Squared singular values of H divided by the noise power (watts).
std::vector<double> eigenmode_gains(const ChannelMatrix& h, double noise_w);

/// Waterfilled capacity in bit/s/Hz. Total transmit power is the sum EIRP
/// with the element gain removed.
double achievable_rate(const ChannelMatrix& h, double sum_eirp_dbw, double noise_dbw,
                       double tx_element_gain_dbi = 0.0);
/// Equal power on every transmit element (baseline).
double equal_power_rate(const ChannelMatrix& h, double sum_eirp_dbw, double noise_dbw,
                        double tx_element_gain_dbi = 0.0);

struct MimoRow {
  int n_s = 0;
  double sum_eirp_dbw = 0.0;
  double rate_bps_hz = 0.0;
  double equal_power_bps_hz = 0.0;
};

/// Full factorial over the N_S values and the scenario's EIRP sweep.
std::vector<MimoRow> sweep_rates(const MimoScenario& base,
                                 const std::vector<int>& n_s_values = {1, 2, 3, 4, 6},
                                 int threads = 1);

}  // namespace leosim
