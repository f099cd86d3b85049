// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace leosim {

/// Raised for malformed or out-of-bounds configuration. `key()` names the
/// offending field using its dotted JSON path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message),
        key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Walker-star constellation shape. Plane indices are 1-based throughout.
struct ConstellationConfig {
  int num_planes = 0;
  int sats_per_plane = 0;
  double base_altitude_km = 600.0;
  double altitude_step_km = 10.0;
  double inclination_deg = 90.0;
  double min_elevation_deg = 30.0;
  bool cross_seam_enabled = false;
  // Walker phasing: plane p is offset in anomaly by
  // phasing_factor * 360 / (P * N) * (p - 1) degrees, plus any explicit
  // per-plane entry in phase_offsets_deg.
  double phasing_factor = 0.0;
  std::vector<double> phase_offsets_deg;
  int max_inter_degree = 1;  // inter-plane ISLs per (satellite, adjacent plane)
  double occlusion_radius_km = 6371.0;

  double altitude_km(int plane) const;
  double node_longitude_deg(int plane) const;
  double phase_offset_deg(int plane) const;
  int num_satellites() const { return num_planes * sats_per_plane; }
  double min_altitude_km() const { return altitude_km(1); }
  double max_altitude_km() const { return altitude_km(num_planes); }

  /// Throws ConfigError if any invariant is violated.
  void validate() const;

  /// Copy with (P, N) replaced, phase offsets dropped if they no longer fit.
  ConstellationConfig with_shape(int planes, int sats) const;

  bool operator==(const ConstellationConfig&) const = default;
};

enum class TransmitterKind { SatelliteEirpDensity, GroundFixedPower };

/// Budget parameters for one link direction.
struct LinkBudgetParams {
  double carrier_frequency_hz = 30e9;
  double bandwidth_hz = 400e6;
  TransmitterKind transmitter = TransmitterKind::SatelliteEirpDensity;
  double eirp_density_dbw_per_mhz = 4.0;
  double tx_power_dbm = 33.0;
  double tx_gain_dbi = 0.0;
  double rx_gain_dbi = 38.5;
  double atmospheric_loss_db = 0.0;
  double scintillation_loss_db = 0.0;
  double noise_temperature_k = 354.81;

  void validate() const;
  bool operator==(const LinkBudgetParams&) const = default;
};

enum class LinkClass { GslDownlink, GslUplink, Isl };

/// The parameter table as configured; expands into per-direction
/// LinkBudgetParams via `params()`.
struct LinkBudgetConfig {
  double downlink_frequency_hz = 20e9;
  double uplink_frequency_hz = 30e9;  // also used by ISLs
  double bandwidth_hz = 400e6;
  double sat_eirp_density_dbw_per_mhz = 4.0;
  double sat_antenna_gain_dbi = 38.5;
  double ground_tx_power_dbm = 33.0;
  double ground_tx_gain_dbi = 43.2;
  double ground_rx_gain_dbi = 39.7;
  double atmospheric_loss_db = 0.5;
  double scintillation_loss_db = 0.3;
  double noise_temperature_k = 354.81;

  LinkBudgetParams params(LinkClass cls) const;
  void validate() const;
  bool operator==(const LinkBudgetConfig&) const = default;
};

/// Experiment-level knobs. Zero duration means "one orbital period of the
/// lowest plane".
struct ExperimentParams {
  std::string name;
  double duration_s = 0.0;
  double step_s = 1.0;
  std::uint64_t seed = 1;
  std::int64_t users = 100000;
  std::filesystem::path output_dir = "out";
  std::vector<std::pair<int, int>> variants = {{7, 20}, {12, 40}};
  bool earth_rotation = false;
  int threads = 1;
  // fig5 / passes
  std::vector<double> betas_deg = {0.0, 4.0};
  std::vector<double> pass_tx_powers_dbm = {30.0, 50.0};
  double pass_altitude_km = 600.0;
  // fig7
  int max_resources = 8;
  double interference_rx_gain_dbi = 0.0;
  bool include_intra_interference = false;
  // fig6
  std::vector<double> eirp_sweep_dbw = {30, 35, 40, 45, 50, 55, 60};

  void validate() const;
  bool operator==(const ExperimentParams&) const = default;
};

struct Config {
  ConstellationConfig constellation;
  LinkBudgetConfig link_budget;
  ExperimentParams experiment;

  bool operator==(const Config&) const = default;
};

/// Parses JSON text. An empty or whitespace-only document is read as `{}`.
Config parse_config(const std::string& text);
Config load_config(const std::filesystem::path& path);
/// Canonical JSON (sorted keys, fixed indent); parse_config round-trips it.
std::string serialize_config(const Config& config);

/// Total EIRP in dBW over `occupied_bandwidth_hz`.
double derived_eirp(const LinkBudgetParams& params, double occupied_bandwidth_hz);

/// Sub-seed for an independent Monte-Carlo task (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t task_index);

/// FNV-1a 64-bit, used for config fingerprints in run manifests.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace leosim
