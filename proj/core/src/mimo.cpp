// SPDX-License-Identifier: Apache-2.0
#include "leosim/mimo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

#include <Eigen/SVD>

#include "leosim/linkbudget.hpp"
#include "leosim/parallel.hpp"

namespace leosim {

double MimoScenario::noise_power_dbw() const {
  return leosim::noise_power_dbw(noise_temperature_k, bandwidth_hz);
}

void MimoScenario::validate() const {
  if (num_satellites < 1 || total_tx_antennas % num_satellites != 0)
    throw std::invalid_argument("MimoScenario: N_S must divide the transmit antenna total");
  if (gs_antennas < 1) throw std::invalid_argument("MimoScenario: gs_antennas >= 1 required");
  if (!(altitude_km > 0.0) || !(carrier_frequency_hz > 0.0))
    throw std::invalid_argument("MimoScenario: altitude and frequency must be > 0");
}

std::vector<Eigen::Vector3d> tx_element_positions(const MimoScenario& s) {
  s.validate();
  const double R = PhysicalConstants::earth_radius * 1e3;
  const double r = R + s.altitude_km * 1e3;
  const int nt = s.antennas_per_satellite();
  const double spacing = s.effective_tx_spacing_m();
  std::vector<Eigen::Vector3d> out;
  out.reserve(static_cast<std::size_t>(s.total_tx_antennas));
  for (int k = 0; k < s.num_satellites; ++k) {
    const double offset = (k - (s.num_satellites - 1) / 2.0) * s.inter_satellite_distance_km * 1e3;
    const double th = offset / r;
    const Eigen::Vector3d centre(r * std::sin(th), 0.0, r * std::cos(th) - R);
    const Eigen::Vector3d along(std::cos(th), 0.0, -std::sin(th));
    for (int m = 0; m < nt; ++m) out.push_back(centre + (m - (nt - 1) / 2.0) * spacing * along);
  }
  return out;
}

std::vector<Eigen::Vector3d> rx_element_positions(const MimoScenario& s) {
  const double spacing = s.effective_gs_spacing_m();
  std::vector<Eigen::Vector3d> out;
  out.reserve(static_cast<std::size_t>(s.gs_antennas));
  for (int q = 0; q < s.gs_antennas; ++q)
    out.emplace_back((q - (s.gs_antennas - 1) / 2.0) * spacing, 0.0, 0.0);
  return out;
}

ChannelMatrix build_channel(const MimoScenario& s) {
  const auto tx = tx_element_positions(s);
  const auto rx = rx_element_positions(s);
  const double lambda = s.wavelength_m();
  const double g = std::sqrt(db_to_linear(s.gs_element_gain_dbi + s.tx_element_gain_dbi));
  ChannelMatrix h(static_cast<Eigen::Index>(rx.size()), static_cast<Eigen::Index>(tx.size()));
  for (std::size_t q = 0; q < rx.size(); ++q)
    for (std::size_t m = 0; m < tx.size(); ++m) {
      const double d = (tx[m] - rx[q]).norm();
      const double amp = lambda / (4.0 * kPi * d) * g;
      // Reduce the path length to one wavelength first to keep the phase accurate.
      const double phase = -2.0 * kPi * std::fmod(d, lambda) / lambda;
      h(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(m)) = std::polar(amp, phase);
    }
  return h;
}

std::vector<double> waterfill(const std::vector<double>& gains, double total_power) {
  std::vector<double> p(gains.size(), 0.0);
  if (!(total_power > 0.0)) return p;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < gains.size(); ++i)
    if (gains[i] > 0.0) idx.push_back(i);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return gains[a] != gains[b] ? gains[a] > gains[b] : a < b;
  });
  // Largest active set whose water level clears every member's floor.
  double inv_sum = 0.0, level = 0.0;
  std::size_t active = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const double inv = 1.0 / gains[idx[k]];
    const double mu = (total_power + inv_sum + inv) / static_cast<double>(k + 1);
    if (mu <= inv) break;
    inv_sum += inv;
    level = mu;
    active = k + 1;
  }
  for (std::size_t k = 0; k < active; ++k) p[idx[k]] = level - 1.0 / gains[idx[k]];
  return p;
}

std::vector<double> eigenmode_gains(const ChannelMatrix& h, double noise_w) {
  Eigen::JacobiSVD<ChannelMatrix> svd(h);
  const auto& sv = svd.singularValues();
  std::vector<double> g(static_cast<std::size_t>(sv.size()));
  for (Eigen::Index i = 0; i < sv.size(); ++i) g[static_cast<std::size_t>(i)] = sv(i) * sv(i) / noise_w;
  return g;
}

double achievable_rate(const ChannelMatrix& h, double sum_eirp_dbw, double noise_dbw,
                       double tx_element_gain_dbi) {
  const auto g = eigenmode_gains(h, db_to_linear(noise_dbw));
  const auto p = waterfill(g, db_to_linear(sum_eirp_dbw - tx_element_gain_dbi));
  double rate = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) rate += std::log2(1.0 + p[i] * g[i]);
  return rate;
}

double equal_power_rate(const ChannelMatrix& h, double sum_eirp_dbw, double noise_dbw,
                        double tx_element_gain_dbi) {
  const auto g = eigenmode_gains(h, db_to_linear(noise_dbw));
  const double per = db_to_linear(sum_eirp_dbw - tx_element_gain_dbi) / static_cast<double>(h.cols());
  double rate = 0.0;
  for (double gi : g) rate += std::log2(1.0 + per * gi);
  return rate;
}

std::vector<MimoRow> sweep_rates(const MimoScenario& base, const std::vector<int>& n_s_values,
                                 int threads) {
  if (base.sum_eirp_sweep_dbw.empty()) throw std::invalid_argument("sweep_rates: empty sweep");
  const std::size_t E = base.sum_eirp_sweep_dbw.size();
  std::vector<MimoRow> rows(n_s_values.size() * E);
  parallel_for(n_s_values.size(), threads, [&](std::size_t a) {
    MimoScenario s = base;
    s.num_satellites = n_s_values[a];
    const ChannelMatrix h = build_channel(s);
    const double noise = s.noise_power_dbw();
    for (std::size_t e = 0; e < E; ++e) {
      const double eirp = s.sum_eirp_sweep_dbw[e];
      rows[a * E + e] = {s.num_satellites, eirp,
                         achievable_rate(h, eirp, noise, s.tx_element_gain_dbi),
                         equal_power_rate(h, eirp, noise, s.tx_element_gain_dbi)};
    }
  });
  return rows;
}

}  // namespace leosim
