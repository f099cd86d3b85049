// SPDX-License-Identifier: Apache-2.0
#include "leosim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace leosim {

using nlohmann::json;

namespace {

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}


template <typename T>
void read(const json& obj, const char* name, const std::string& prefix, T& out) {
  auto it = obj.find(name);
  if (it == obj.end() || it->is_null()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(prefix + name, std::string("wrong type: ") + e.what());
  }
}

const json& section(const json& root, const char* name) {
  static const json empty = json::object();
  auto it = root.find(name);
  if (it == root.end() || it->is_null()) return empty;
  if (!it->is_object()) throw ConfigError(name, "must be an object");
  return *it;
}

}  // namespace

double ConstellationConfig::altitude_km(int plane) const {
  return base_altitude_km + altitude_step_km * (plane - 1);
}

double ConstellationConfig::node_longitude_deg(int plane) const {
  return 180.0 * (plane - 1) / num_planes;
}

double ConstellationConfig::phase_offset_deg(int plane) const {
  double offset = 0.0;
  if (num_planes > 0 && sats_per_plane > 0)
    offset = phasing_factor * 360.0 / (num_planes * sats_per_plane) * (plane - 1);
  if (plane >= 1 && static_cast<std::size_t>(plane) <= phase_offsets_deg.size())
    offset += phase_offsets_deg[plane - 1];
  return offset;
}

void ConstellationConfig::validate() const {
  require(num_planes >= 1, "constellation.num_planes", "P >= 1 required");
  require(sats_per_plane >= 1, "constellation.sats_per_plane", "N >= 1 required");
  require(base_altitude_km >= 500.0 && base_altitude_km <= 2000.0,
          "constellation.base_altitude_km", "altitude must lie in [500, 2000] km");
  require(altitude_step_km >= 0.0, "constellation.altitude_step_km", "must be >= 0");
  require(max_altitude_km() <= 2000.0, "constellation.altitude_step_km",
          "highest plane altitude exceeds 2000 km");
  require(inclination_deg > 0.0 && inclination_deg <= 180.0, "constellation.inclination_deg",
          "must lie in (0, 180] degrees");
  require(min_elevation_deg >= 0.0 && min_elevation_deg < 90.0,
          "constellation.min_elevation_deg", "must lie in [0, 90) degrees");
  require(phase_offsets_deg.size() <= static_cast<std::size_t>(num_planes),
          "constellation.phase_offsets_deg", "more entries than planes");
  require(max_inter_degree >= 1, "constellation.max_inter_degree", "must be >= 1");
  require(occlusion_radius_km > 0.0 && occlusion_radius_km < base_altitude_km + 6371.0,
          "constellation.occlusion_radius_km", "must be positive and below the orbit radius");
}

ConstellationConfig ConstellationConfig::with_shape(int planes, int sats) const {
  ConstellationConfig out = *this;
  out.num_planes = planes;
  out.sats_per_plane = sats;
  if (out.phase_offsets_deg.size() > static_cast<std::size_t>(planes))
    out.phase_offsets_deg.resize(planes);
  return out;
}

void LinkBudgetParams::validate() const {
  require(carrier_frequency_hz > 0.0, "link_budget.carrier_frequency_hz", "must be > 0");
  require(bandwidth_hz > 0.0, "link_budget.bandwidth_hz", "must be > 0");
  require(noise_temperature_k > 0.0, "link_budget.noise_temperature_k", "must be > 0");
  require(atmospheric_loss_db >= 0.0, "link_budget.atmospheric_loss_db", "must be >= 0");
  require(scintillation_loss_db >= 0.0, "link_budget.scintillation_loss_db", "must be >= 0");
}

LinkBudgetParams LinkBudgetConfig::params(LinkClass cls) const {
  LinkBudgetParams p;
  p.bandwidth_hz = bandwidth_hz;
  p.noise_temperature_k = noise_temperature_k;
  p.eirp_density_dbw_per_mhz = sat_eirp_density_dbw_per_mhz;
  p.tx_power_dbm = ground_tx_power_dbm;
  switch (cls) {
    case LinkClass::GslDownlink:
      p.carrier_frequency_hz = downlink_frequency_hz;
      p.transmitter = TransmitterKind::SatelliteEirpDensity;
      p.tx_gain_dbi = 0.0;  // already inside the EIRP density
      p.rx_gain_dbi = ground_rx_gain_dbi;
      p.atmospheric_loss_db = atmospheric_loss_db;
      p.scintillation_loss_db = scintillation_loss_db;
      break;
    case LinkClass::GslUplink:
      p.carrier_frequency_hz = uplink_frequency_hz;
      p.transmitter = TransmitterKind::GroundFixedPower;
      p.tx_gain_dbi = ground_tx_gain_dbi;
      p.rx_gain_dbi = sat_antenna_gain_dbi;
      p.atmospheric_loss_db = atmospheric_loss_db;
      p.scintillation_loss_db = scintillation_loss_db;
      break;
    case LinkClass::Isl:
      p.carrier_frequency_hz = uplink_frequency_hz;
      p.transmitter = TransmitterKind::SatelliteEirpDensity;
      p.tx_gain_dbi = 0.0;
      p.rx_gain_dbi = sat_antenna_gain_dbi;
      p.atmospheric_loss_db = 0.0;
      p.scintillation_loss_db = 0.0;
      break;
  }
  return p;
}

void LinkBudgetConfig::validate() const {
  require(downlink_frequency_hz > 0.0, "link_budget.downlink_frequency_hz", "must be > 0");
  require(uplink_frequency_hz > 0.0, "link_budget.uplink_frequency_hz", "must be > 0");
  require(bandwidth_hz > 0.0, "link_budget.bandwidth_hz", "bandwidth must be > 0");
  require(noise_temperature_k > 0.0, "link_budget.noise_temperature_k", "must be > 0");
  require(atmospheric_loss_db >= 0.0, "link_budget.atmospheric_loss_db", "must be >= 0");
  require(scintillation_loss_db >= 0.0, "link_budget.scintillation_loss_db", "must be >= 0");
}

void ExperimentParams::validate() const {
  require(step_s > 0.0, "experiment.step_s", "step must be > 0");
  require(duration_s == 0.0 || duration_s >= step_s, "experiment.duration_s",
          "duration must be >= step (or 0 for one orbital period)");
  require(users >= 0, "experiment.users", "must be >= 0");
  require(threads >= 1, "experiment.threads", "must be >= 1");
  require(!variants.empty(), "experiment.variants", "at least one (P, N) variant required");
  for (const auto& [p, n] : variants)
    require(p >= 1 && n >= 3, "experiment.variants", "each variant needs P >= 1 and N >= 3");
  require(max_resources >= 1, "experiment.max_resources", "must be >= 1");
  require(pass_altitude_km > 0.0, "experiment.pass_altitude_km", "must be > 0");
  require(!eirp_sweep_dbw.empty(), "experiment.eirp_sweep_dbw", "sweep must be nonempty");
}

Config parse_config(const std::string& text) {
  json root;
  const bool blank = text.find_first_not_of(" \t\r\n") == std::string::npos;
  if (blank) {
    root = json::object();
  } else {
    try {
      root = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError("", std::string("parse failure: ") + e.what());
    }
  }
  if (!root.is_object()) throw ConfigError("", "top level must be a JSON object");

  Config cfg;
  const json& c = section(root, "constellation");
  const std::string cp = "constellation.";
  if (!c.contains("num_planes")) throw ConfigError(cp + "num_planes", "P required");
  if (!c.contains("sats_per_plane")) throw ConfigError(cp + "sats_per_plane", "N required");
  auto& cc = cfg.constellation;
  read(c, "num_planes", cp, cc.num_planes);
  read(c, "sats_per_plane", cp, cc.sats_per_plane);
  read(c, "base_altitude_km", cp, cc.base_altitude_km);
  read(c, "altitude_step_km", cp, cc.altitude_step_km);
  read(c, "inclination_deg", cp, cc.inclination_deg);
  read(c, "min_elevation_deg", cp, cc.min_elevation_deg);
  read(c, "cross_seam_enabled", cp, cc.cross_seam_enabled);
  read(c, "phasing_factor", cp, cc.phasing_factor);
  read(c, "phase_offsets_deg", cp, cc.phase_offsets_deg);
  read(c, "max_inter_degree", cp, cc.max_inter_degree);
  read(c, "occlusion_radius_km", cp, cc.occlusion_radius_km);

  const json& l = section(root, "link_budget");
  const std::string lp = "link_budget.";
  auto& lb = cfg.link_budget;
  read(l, "downlink_frequency_hz", lp, lb.downlink_frequency_hz);
  read(l, "uplink_frequency_hz", lp, lb.uplink_frequency_hz);
  read(l, "bandwidth_hz", lp, lb.bandwidth_hz);
  read(l, "sat_eirp_density_dbw_per_mhz", lp, lb.sat_eirp_density_dbw_per_mhz);
  read(l, "sat_antenna_gain_dbi", lp, lb.sat_antenna_gain_dbi);
  read(l, "ground_tx_power_dbm", lp, lb.ground_tx_power_dbm);
  read(l, "ground_tx_gain_dbi", lp, lb.ground_tx_gain_dbi);
  read(l, "ground_rx_gain_dbi", lp, lb.ground_rx_gain_dbi);
  read(l, "atmospheric_loss_db", lp, lb.atmospheric_loss_db);
  read(l, "scintillation_loss_db", lp, lb.scintillation_loss_db);
  read(l, "noise_temperature_k", lp, lb.noise_temperature_k);

  const json& e = section(root, "experiment");
  const std::string ep = "experiment.";
  auto& ex = cfg.experiment;
  read(e, "name", ep, ex.name);
  read(e, "duration_s", ep, ex.duration_s);
  read(e, "step_s", ep, ex.step_s);
  read(e, "seed", ep, ex.seed);
  read(e, "users", ep, ex.users);
  if (auto it = e.find("output_dir"); it != e.end() && it->is_string())
    ex.output_dir = it->get<std::string>();
  read(e, "variants", ep, ex.variants);
  read(e, "earth_rotation", ep, ex.earth_rotation);
  read(e, "threads", ep, ex.threads);
  read(e, "betas_deg", ep, ex.betas_deg);
  read(e, "pass_tx_powers_dbm", ep, ex.pass_tx_powers_dbm);
  read(e, "pass_altitude_km", ep, ex.pass_altitude_km);
  read(e, "max_resources", ep, ex.max_resources);
  read(e, "interference_rx_gain_dbi", ep, ex.interference_rx_gain_dbi);
  read(e, "include_intra_interference", ep, ex.include_intra_interference);
  read(e, "eirp_sweep_dbw", ep, ex.eirp_sweep_dbw);

  cc.validate();
  lb.validate();
  ex.validate();
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const Config& cfg) {
  const auto& cc = cfg.constellation;
  const auto& lb = cfg.link_budget;
  const auto& ex = cfg.experiment;
  // nlohmann::json (not ordered_json) sorts keys, which keeps the dump canonical.
  json root;
  root["constellation"] = {
      {"num_planes", cc.num_planes},
      {"sats_per_plane", cc.sats_per_plane},
      {"base_altitude_km", cc.base_altitude_km},
      {"altitude_step_km", cc.altitude_step_km},
      {"inclination_deg", cc.inclination_deg},
      {"min_elevation_deg", cc.min_elevation_deg},
      {"cross_seam_enabled", cc.cross_seam_enabled},
      {"phasing_factor", cc.phasing_factor},
      {"phase_offsets_deg", cc.phase_offsets_deg},
      {"max_inter_degree", cc.max_inter_degree},
      {"occlusion_radius_km", cc.occlusion_radius_km},
  };
  root["link_budget"] = {
      {"downlink_frequency_hz", lb.downlink_frequency_hz},
      {"uplink_frequency_hz", lb.uplink_frequency_hz},
      {"bandwidth_hz", lb.bandwidth_hz},
      {"sat_eirp_density_dbw_per_mhz", lb.sat_eirp_density_dbw_per_mhz},
      {"sat_antenna_gain_dbi", lb.sat_antenna_gain_dbi},
      {"ground_tx_power_dbm", lb.ground_tx_power_dbm},
      {"ground_tx_gain_dbi", lb.ground_tx_gain_dbi},
      {"ground_rx_gain_dbi", lb.ground_rx_gain_dbi},
      {"atmospheric_loss_db", lb.atmospheric_loss_db},
      {"scintillation_loss_db", lb.scintillation_loss_db},
      {"noise_temperature_k", lb.noise_temperature_k},
  };
  root["experiment"] = {
      {"name", ex.name},
      {"duration_s", ex.duration_s},
      {"step_s", ex.step_s},
      {"seed", ex.seed},
      {"users", ex.users},
      {"output_dir", ex.output_dir.string()},
      {"variants", ex.variants},
      {"earth_rotation", ex.earth_rotation},
      {"threads", ex.threads},
      {"betas_deg", ex.betas_deg},
      {"pass_tx_powers_dbm", ex.pass_tx_powers_dbm},
      {"pass_altitude_km", ex.pass_altitude_km},
      {"max_resources", ex.max_resources},
      {"interference_rx_gain_dbi", ex.interference_rx_gain_dbi},
      {"include_intra_interference", ex.include_intra_interference},
      {"eirp_sweep_dbw", ex.eirp_sweep_dbw},
  };
  return root.dump(2) + "\n";
}

double derived_eirp(const LinkBudgetParams& params, double occupied_bandwidth_hz) {
  if (!(occupied_bandwidth_hz > 0.0))
    throw std::invalid_argument("derived_eirp: occupied bandwidth must be > 0");
  if (params.transmitter == TransmitterKind::SatelliteEirpDensity)
    return params.eirp_density_dbw_per_mhz + 10.0 * std::log10(occupied_bandwidth_hz / 1e6);
  return params.tx_power_dbm - 30.0 + params.tx_gain_dbi;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t task_index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (task_index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace leosim
