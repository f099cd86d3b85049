// SPDX-License-Identifier: Apache-2.0
#include "leosim/experiments.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "leosim/constants.hpp"
#include "leosim/geometry.hpp"
#include "leosim/linkbudget.hpp"
#include "leosim/orbits.hpp"
#include "leosim/parallel.hpp"
#include "leosim/topology.hpp"

namespace leosim {

const char* build_version() { return LEOSIM_VERSION " (" LEOSIM_GIT_DESCRIBE ")"; }

double horizon_s(const Config& config, const ConstellationConfig& shape) {
  return config.experiment.duration_s > 0.0 ? config.experiment.duration_s
                                            : orbital_period(shape.min_altitude_km());
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

StatSummary summarize_or_empty(std::vector<double> v) {
  if (v.empty()) return {kNaN, kNaN, kNaN, kNaN, 0};
  return summarize(std::move(v));
}

struct ClassBuffer {
  std::vector<double> delay_ms, doppler_khz, rate_mbps;
  void append(const ClassBuffer& o) {
    delay_ms.insert(delay_ms.end(), o.delay_ms.begin(), o.delay_ms.end());
    doppler_khz.insert(doppler_khz.end(), o.doppler_khz.begin(), o.doppler_khz.end());
    rate_mbps.insert(rate_mbps.end(), o.rate_mbps.begin(), o.rate_mbps.end());
  }
};

enum Cls { kGslDown, kGslUp, kIntra, kInter, kSeam, kNumCls };
const char* const kClassNames[kNumCls] = {"gsl_downlink", "gsl_uplink", "intra_isl", "inter_isl",
                                          "cross_seam_isl"};

void add_isl(ClassBuffer& b, const LinkGeometry& g, const LinkBudgetParams& isl) {
  b.delay_ms.push_back(propagation_delay_ms(g.distance_km));
  b.doppler_khz.push_back(doppler_shift(g.radial_speed_km_s, isl.carrier_frequency_hz).magnitude_hz / 1e3);
  b.rate_mbps.push_back(link_rate(g, isl).rate_bps / 1e6);
}

}  // namespace

std::vector<LinkClassStats> link_statistics(const Config& config) {
  const auto& ex = config.experiment;
  const LinkBudgetParams isl = config.link_budget.params(LinkClass::Isl);
  const LinkBudgetParams dl = config.link_budget.params(LinkClass::GslDownlink);
  const LinkBudgetParams ul = config.link_budget.params(LinkClass::GslUplink);
  std::vector<LinkClassStats> out;

  for (std::size_t v = 0; v < ex.variants.size(); ++v) {
    const auto [P, N] = ex.variants[v];
    const ConstellationConfig shape = config.constellation.with_shape(P, N);
    shape.validate();
    const std::vector<double> times = snapshot_times(horizon_s(config, shape), ex.step_s);
    const std::size_t S = times.size();
    const auto num_sats = static_cast<std::size_t>(shape.num_satellites());
    const auto U = static_cast<std::size_t>(ex.users);

    std::vector<std::array<ClassBuffer, kNumCls>> slots(S);
    parallel_for(S, ex.threads, [&](std::size_t k) {
      auto& buf = slots[k];
      const double t = times[k];
      const auto states = propagate(shape, t);
      const IslMatching m = greedy_match(shape, states, isl);

      for (const SatPair& p : m.intra_links) {
        const LinkGeometry g = isl_geometry(states[state_index(shape, p.a.plane, p.a.sat)],
                                            states[state_index(shape, p.b.plane, p.b.sat)],
                                            shape.occlusion_radius_km);
        if (g.visible) add_isl(buf[kIntra], g, isl);
      }
      for (const InterLink& l : m.inter_links)
        add_isl(buf[is_cross_seam(shape, l.a.plane, l.b.plane) ? kSeam : kInter], l.geometry, isl);

      // Users u with u mod S == k are evaluated at this snapshot against its
      // round-robin reference satellite.
      const std::size_t count = U / S + (k < U % S ? 1 : 0);
      if (count == 0) return;
      const SatelliteState& ref = states[k % num_sats];
      const double half = coverage_cap(shape.altitude_km(ref.plane), shape.min_elevation_deg).half_angle_deg;
      const std::uint64_t seed = derive_seed(ex.seed, (static_cast<std::uint64_t>(v) << 32) | k);
      auto users = sample_users(static_cast<std::int64_t>(count), subsatellite_point(ref.position_km),
                                half, seed);
      for (auto& gt : users) {
        // Sampled in the inertial frame at time t; refer back to t = 0.
        if (ex.earth_rotation) {
          double lon = gt.longitude_deg - rad2deg(PhysicalConstants::earth_rotation_rate * t);
          lon = std::fmod(lon + 180.0, 360.0);
          gt.longitude_deg = (lon < 0.0 ? lon + 360.0 : lon) - 180.0;
        }
        const LinkGeometry g = gsl_geometry(ref, gt, shape.min_elevation_deg, ex.earth_rotation);
        if (!g.visible) continue;
        const double delay = propagation_delay_ms(g.distance_km);
        buf[kGslDown].delay_ms.push_back(delay);
        buf[kGslUp].delay_ms.push_back(delay);
        buf[kGslDown].doppler_khz.push_back(
            doppler_shift(g.radial_speed_km_s, dl.carrier_frequency_hz).magnitude_hz / 1e3);
        buf[kGslUp].doppler_khz.push_back(
            doppler_shift(g.radial_speed_km_s, ul.carrier_frequency_hz).magnitude_hz / 1e3);
        buf[kGslDown].rate_mbps.push_back(link_rate(g, dl).rate_bps / 1e6);
        buf[kGslUp].rate_mbps.push_back(link_rate(g, ul).rate_bps / 1e6);
      }
    });

    std::array<ClassBuffer, kNumCls> all;
    for (const auto& s : slots)
      for (int c = 0; c < kNumCls; ++c) all[c].append(s[c]);
    for (int c = 0; c < kNumCls; ++c) {
      if (c == kSeam && !shape.cross_seam_enabled) continue;
      LinkClassStats st;
      st.num_planes = P;
      st.sats_per_plane = N;
      st.link_class = kClassNames[c];
      st.carrier_frequency_hz = c == kGslDown ? dl.carrier_frequency_hz
                                : c == kGslUp ? ul.carrier_frequency_hz
                                              : isl.carrier_frequency_hz;
      st.delay_ms = summarize_or_empty(std::move(all[c].delay_ms));
      st.doppler_khz = summarize_or_empty(std::move(all[c].doppler_khz));
      st.rate_mbps = summarize_or_empty(std::move(all[c].rate_mbps));
      out.push_back(std::move(st));
    }
  }
  return out;
}

double PassSeries::peak_se() const {
  return se_bps_hz.empty() ? kNaN : *std::max_element(se_bps_hz.begin(), se_bps_hz.end());
}

double PassSeries::min_se() const {
  return se_bps_hz.empty() ? kNaN : *std::min_element(se_bps_hz.begin(), se_bps_hz.end());
}

std::vector<PassSeries> pass_series(const Config& config) {
  const auto& ex = config.experiment;
  const LinkBudgetParams dl = config.link_budget.params(LinkClass::GslDownlink);
  std::vector<PassSeries> out;
  for (double beta : ex.betas_deg) {
    const PassProfile pass = compute_pass(ex.pass_altitude_km, beta,
                                          config.constellation.min_elevation_deg, ex.step_s,
                                          ex.earth_rotation);
    for (double ptx : ex.pass_tx_powers_dbm) {
      PassSeries s;
      s.beta_deg = beta;
      s.tx_power_dbm = ptx;
      s.pass = pass;
      const double eirp = ptx - 30.0 + config.link_budget.sat_antenna_gain_dbi;
      for (const PassSample& p : pass.samples) {
        LinkGeometry g;
        g.distance_km = p.distance_km;
        g.elevation_deg = p.elevation_deg;
        g.visible = true;
        const LinkBudgetResult r = link_rate_with_eirp(g, dl, eirp, std::nullopt, dl.bandwidth_hz);
        s.snr_db.push_back(r.sinr_db);
        s.se_bps_hz.push_back(r.spectral_efficiency);
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<AccessRateStats> access_statistics(const Config& config) {
  const auto& ex = config.experiment;
  const LinkBudgetParams isl = config.link_budget.params(LinkClass::Isl);
  const double B = isl.bandwidth_hz;

  std::vector<AccessScheme> schemes;
  for (int k = 1; k <= ex.max_resources; ++k) schemes.push_back(AccessScheme::ofdma(k, B));
  for (int k = 1; k <= ex.max_resources; k *= 2) schemes.push_back(AccessScheme::cdma(k, B));

  std::vector<AccessRateStats> out;
  for (const auto& [P, N] : ex.variants) {
    const ConstellationConfig shape = config.constellation.with_shape(P, N);
    shape.validate();
    const SnapshotSeries series =
        simulate_snapshots(shape, isl, horizon_s(config, shape), ex.step_s, ex.threads, true);
    const AccessWorkspace ws(shape, config.link_budget, series,
                             {ex.interference_rx_gain_dbi, ex.include_intra_interference},
                             ex.threads);
    std::vector<std::vector<std::vector<double>>> slots(
        ws.num_snapshots(), std::vector<std::vector<double>>(schemes.size()));
    parallel_for(ws.num_snapshots(), ex.threads, [&](std::size_t k) {
      const AccessProblem problem = ws.problem(k);
      for (std::size_t s = 0; s < schemes.size(); ++s) {
        const ResourceAllocation a = allocate(problem, schemes[s]);
        auto& dst = slots[k][s];
        for (std::size_t l = 0; l < problem.num_links; ++l) dst.push_back(effective_rate(problem, a, l));
      }
    });
    for (std::size_t s = 0; s < schemes.size(); ++s) {
      std::vector<double> all;
      for (const auto& slot : slots) all.insert(all.end(), slot[s].begin(), slot[s].end());
      out.push_back({schemes[s].num_resources, schemes[s].kind, P, N,
                     summarize_or_empty(std::move(all))});
    }
  }
  return out;
}

MimoScenario mimo_scenario(const Config& config) {
  MimoScenario s;
  s.carrier_frequency_hz = config.link_budget.downlink_frequency_hz;
  s.bandwidth_hz = config.link_budget.bandwidth_hz;
  s.noise_temperature_k = config.link_budget.noise_temperature_k;
  s.altitude_km = config.experiment.pass_altitude_km;
  s.sum_eirp_sweep_dbw = config.experiment.eirp_sweep_dbw;
  return s;
}

namespace {

void add_summary(CsvTable& t, const StatSummary& s) { t.add(s.median).add(s.p95).add(s.mean); }

}  // namespace

CsvTable fig3_table(const std::vector<LinkClassStats>& stats) {
  CsvTable t({"P", "N", "link_class", "carrier_ghz", "count", "low_count", "delay_median_ms",
              "delay_p95_ms", "delay_mean_ms", "doppler_median_khz", "doppler_p95_khz",
              "doppler_mean_khz"});
  for (const auto& s : stats) {
    t.row().add(s.num_planes).add(s.sats_per_plane).add(s.link_class)
        .add(s.carrier_frequency_hz / 1e9).add(s.delay_ms.count)
        .add(s.delay_ms.count < kLowSampleCount);
    add_summary(t, s.delay_ms);
    add_summary(t, s.doppler_khz);
  }
  return t;
}

CsvTable fig4_table(const std::vector<LinkClassStats>& stats) {
  CsvTable t({"P", "N", "link_class", "carrier_ghz", "count", "low_count", "rate_median_mbps",
              "rate_p95_mbps", "rate_mean_mbps"});
  for (const auto& s : stats) {
    t.row().add(s.num_planes).add(s.sats_per_plane).add(s.link_class)
        .add(s.carrier_frequency_hz / 1e9).add(s.rate_mbps.count)
        .add(s.rate_mbps.count < kLowSampleCount);
    add_summary(t, s.rate_mbps);
  }
  return t;
}

CsvTable fig5_table(const std::vector<PassSeries>& series) {
  CsvTable t({"beta_deg", "tx_power_dbm", "t_s", "elevation_deg", "distance_km", "snr_db",
              "se_bps_hz"});
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.pass.samples.size(); ++i) {
      const auto& p = s.pass.samples[i];
      t.row().add(s.beta_deg).add(s.tx_power_dbm).add(p.t_s - s.pass.start_s)
          .add(p.elevation_deg).add(p.distance_km).add(s.snr_db[i]).add(s.se_bps_hz[i]);
    }
  return t;
}

CsvTable fig5_summary_table(const std::vector<PassSeries>& series) {
  CsvTable t({"beta_deg", "tx_power_dbm", "duration_min", "se_peak_bps_hz", "se_min_bps_hz",
              "peak_min_ratio"});
  for (const auto& s : series)
    t.row().add(s.beta_deg).add(s.tx_power_dbm).add(s.pass.duration_s() / 60.0)
        .add(s.peak_se()).add(s.min_se()).add(s.peak_se() / s.min_se());
  return t;
}

CsvTable fig6_table(const std::vector<MimoRow>& rows, const MimoScenario& scenario) {
  CsvTable t({"n_s", "n_t", "sum_eirp_dbw", "rate_bps_hz", "equal_power_bps_hz"});
  for (const auto& r : rows)
    t.row().add(r.n_s).add(scenario.total_tx_antennas / r.n_s).add(r.sum_eirp_dbw)
        .add(r.rate_bps_hz).add(r.equal_power_bps_hz);
  return t;
}

CsvTable fig7_table(const std::vector<AccessRateStats>& stats) {
  CsvTable t({"K", "scheme", "P", "N", "mean_rate_bps", "p5_rate_bps", "p95_rate_bps", "count"});
  for (const auto& s : stats)
    t.row().add(s.num_resources).add(s.kind == AccessKind::Ofdma ? "ofdma" : "cdma")
        .add(s.num_planes).add(s.sats_per_plane).add(s.rate_bps.mean).add(s.rate_bps.p5)
        .add(s.rate_bps.p95).add(s.rate_bps.count);
  return t;
}

CsvTable passes_table(const std::vector<PassSeries>& series) {
  CsvTable t({"beta_deg", "start_s", "end_s", "duration_s", "max_elevation_deg",
              "min_distance_km", "samples"});
  std::map<double, const PassSeries*> by_beta;
  for (const auto& s : series) by_beta.emplace(s.beta_deg, &s);
  for (const auto& [beta, s] : by_beta) {
    double max_el = kNaN, min_d = kNaN;
    for (const auto& p : s->pass.samples) {
      max_el = std::isnan(max_el) ? p.elevation_deg : std::max(max_el, p.elevation_deg);
      min_d = std::isnan(min_d) ? p.distance_km : std::min(min_d, p.distance_km);
    }
    t.row().add(beta).add(s->pass.start_s).add(s->pass.end_s).add(s->pass.duration_s())
        .add(max_el).add(min_d).add(s->pass.samples.size());
  }
  return t;
}

CsvTable matching_table(const SnapshotSeries& series) {
  CsvTable t({"time", "plane_a", "sat_a", "plane_b", "sat_b", "distance_km", "rate_bps"});
  for (const auto& m : series.matchings)
    for (const auto& l : m.inter_links)
      t.row().add(m.time_s).add(l.a.plane).add(l.a.sat).add(l.b.plane).add(l.b.sat)
          .add(l.geometry.distance_km).add(l.rate_bps);
  return t;
}

CsvTable contacts_table(const std::vector<ContactRecord>& contacts) {
  CsvTable t({"plane_a", "sat_a", "plane_b", "sat_b", "kind", "start_s", "end_s", "duration_s"});
  for (const auto& c : contacts)
    t.row().add(c.pair.a.plane).add(c.pair.a.sat).add(c.pair.b.plane).add(c.pair.b.sat)
        .add(c.intra ? "intra" : "inter").add(c.start_s).add(c.end_s).add(c.end_s - c.start_s);
  return t;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"fig3_delay_doppler", "fig4_rates", "fig5_pass",
                                                 "fig6_mimo",          "fig7_access", "passes",
                                                 "topology_dump"};
  return names;
}

std::string canonical_experiment_name(const std::string& name) {
  static const std::map<std::string, std::string> alias = {
      {"fig3", "fig3_delay_doppler"}, {"fig4", "fig4_rates"}, {"fig5", "fig5_pass"},
      {"fig6", "fig6_mimo"},          {"fig7", "fig7_access"}, {"topology", "topology_dump"}};
  if (auto it = alias.find(name); it != alias.end()) return it->second;
  const auto& n = experiment_names();
  if (std::find(n.begin(), n.end(), name) != n.end()) return name;
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

std::vector<OutputFile> run_experiment(const std::string& name, const Config& config) {
  const std::string exp = canonical_experiment_name(name);
  if (exp == "fig3_delay_doppler") return {{"fig3.csv", fig3_table(link_statistics(config))}};
  if (exp == "fig4_rates") return {{"fig4.csv", fig4_table(link_statistics(config))}};
  if (exp == "fig5_pass") {
    const auto s = pass_series(config);
    return {{"fig5.csv", fig5_table(s)}, {"fig5_summary.csv", fig5_summary_table(s)}};
  }
  if (exp == "fig6_mimo") {
    const MimoScenario m = mimo_scenario(config);
    return {{"fig6.csv", fig6_table(sweep_rates(m, {1, 2, 3, 4, 6}, config.experiment.threads), m)}};
  }
  if (exp == "fig7_access") return {{"fig7.csv", fig7_table(access_statistics(config))}};
  if (exp == "passes") return {{"passes.csv", passes_table(pass_series(config))}};
  // topology_dump
  const ConstellationConfig& shape = config.constellation;
  const double T = horizon_s(config, shape);
  const SnapshotSeries s = simulate_snapshots(shape, config.link_budget.params(LinkClass::Isl), T,
                                              config.experiment.step_s, config.experiment.threads);
  return {{"topology.csv", matching_table(s)},
          {"contacts.csv", contacts_table(contacts_from_matchings(s.matchings, s.step_s, T))}};
}

std::vector<std::filesystem::path> run_and_write(const std::string& name, const Config& config,
                                                 const std::filesystem::path& out_dir) {
  const std::string exp = canonical_experiment_name(name);
  const auto files = run_experiment(exp, config);
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  nlohmann::json rows = nlohmann::json::object();
  for (const auto& f : files) {
    f.table.write(out_dir / f.filename);
    written.push_back(out_dir / f.filename);
    rows[f.filename] = f.table.num_rows();
  }
  // Thread count and output location do not affect results; keep them out
  // of the fingerprint.
  Config fingerprint = config;
  fingerprint.experiment.threads = 1;
  fingerprint.experiment.output_dir = ExperimentParams{}.output_dir;
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, fnv1a64(serialize_config(fingerprint)));
  nlohmann::json manifest = {{"experiment", exp},
                             {"config_hash", hash},
                             {"seed", config.experiment.seed},
                             {"git_describe", LEOSIM_GIT_DESCRIBE},
                             {"version", LEOSIM_VERSION},
                             {"rows", rows}};
  const auto path = out_dir / "run.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << manifest.dump(2) << '\n';
  written.push_back(path);
  return written;
}

}  // namespace leosim
