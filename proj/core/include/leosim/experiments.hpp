// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "leosim/access.hpp"
#include "leosim/csv.hpp"
#include "leosim/mimo.hpp"
#include "leosim/scenario.hpp"
#include "leosim/stats.hpp"

namespace leosim {

/// Rows with fewer samples than this are flagged in the CSV output.
inline constexpr std::size_t kLowSampleCount = 100;

/// Linked-in build identifier (git describe at configure time).
const char* build_version();

/// Simulation horizon for a shape: the configured duration, or one period
/// of the lowest plane when it is zero.
double horizon_s(const Config& config, const ConstellationConfig& shape);

struct LinkClassStats {
  int num_planes = 0;
  int sats_per_plane = 0;
  std::string link_class;  // gsl_downlink, gsl_uplink, intra_isl, inter_isl, cross_seam_isl
  double carrier_frequency_hz = 0.0;
  StatSummary delay_ms;
  StatSummary doppler_khz;
  StatSummary rate_mbps;
};

/// Per-snapshot delay, Doppler and interference-free rate samples for every
/// link class and (P, N) variant. GSL users are drawn once per experiment
/// in the coverage cap of a reference satellite.
std::vector<LinkClassStats> link_statistics(const Config& config);

struct PassSeries {
  double beta_deg = 0.0;
  double tx_power_dbm = 0.0;
  PassProfile pass;
  std::vector<double> snr_db;
  std::vector<double> se_bps_hz;
  double peak_se() const;
  double min_se() const;
};

/// Downlink spectral efficiency along each pass, satellite EIRP =
/// P_tx + satellite antenna gain.
std::vector<PassSeries> pass_series(const Config& config);

struct AccessRateStats {
  int num_resources = 0;
  AccessKind kind = AccessKind::Ofdma;
  int num_planes = 0;
  int sats_per_plane = 0;
  StatSummary rate_bps;
};

/// Zero-outage inter-plane rates over all matched links and snapshots, for
/// OFDMA K = 1..max and CDMA K = 1, 2, 4, ... <= max.
std::vector<AccessRateStats> access_statistics(const Config& config);

MimoScenario mimo_scenario(const Config& config);

CsvTable fig3_table(const std::vector<LinkClassStats>& stats);
CsvTable fig4_table(const std::vector<LinkClassStats>& stats);
CsvTable fig5_table(const std::vector<PassSeries>& series);
CsvTable fig5_summary_table(const std::vector<PassSeries>& series);
CsvTable fig6_table(const std::vector<MimoRow>& rows, const MimoScenario& scenario);
CsvTable fig7_table(const std::vector<AccessRateStats>& stats);
CsvTable passes_table(const std::vector<PassSeries>& series);
CsvTable matching_table(const SnapshotSeries& series);
CsvTable contacts_table(const std::vector<ContactRecord>& contacts);

struct OutputFile {
  std::string filename;
  CsvTable table;
};

/// Known experiment names, long form. Short aliases (fig3, ...) and the
/// long names are both accepted by canonical_experiment_name.
const std::vector<std::string>& experiment_names();
/// Throws std::invalid_argument for unknown names.
std::string canonical_experiment_name(const std::string& name);

std::vector<OutputFile> run_experiment(const std::string& name, const Config& config);

/// Runs the experiment, writes its CSVs and run.json into out_dir (created
/// if needed) and returns the files written.
std::vector<std::filesystem::path> run_and_write(const std::string& name, const Config& config,
                                                 const std::filesystem::path& out_dir);

}  // namespace leosim
