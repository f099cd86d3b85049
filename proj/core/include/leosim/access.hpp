// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <tuple>
#include <vector>

#include "leosim/scenario.hpp"
#include "leosim/topology.hpp"

namespace leosim {

enum class AccessKind { Ofdma, Cdma };

struct AccessScheme {
  AccessKind kind = AccessKind::Ofdma;
  int num_resources = 1;  // K
  double bandwidth_hz = 400e6;

  /// Throws std::invalid_argument for K < 1.
  static AccessScheme ofdma(int k, double bandwidth_hz);
  /// Throws std::invalid_argument unless K is a power of two.
  static AccessScheme cdma(int k, double bandwidth_hz);

  /// OFDMA subcarrier bandwidth B/K; CDMA chip bandwidth B.
  double occupied_bandwidth_hz() const;
  /// Bandwidth that sets the symbol rate: B/K for both schemes.
  double rate_bandwidth_hz() const { return bandwidth_hz / num_resources; }
  int spreading_factor() const { return kind == AccessKind::Cdma ? num_resources : 1; }
};

/// Sylvester-Hadamard rows of length K (K a power of two), entries +-1.
std::vector<std::vector<int>> walsh_codes(int k);

/// Path data of one snapshot's inter-plane links. Gains are linear and
/// already include the receive antenna gains. coupling(i, r, j) is the gain
/// from both transmitters of link j to receiver r (0 = a, 1 = b) of link i,
/// each taken at its minimum distance over link i's window.
struct AccessProblem {
  std::size_t num_links = 0;
  std::vector<double> desired_gain;     // per link, at the worst distance over the window
  std::vector<double> coupling_gain;    // num_links * 2 * num_links
  std::vector<double> background_gain;  // num_links * 2, interferers on every resource
  double eirp_density_w_per_hz = 0.0;
  double noise_density_w_per_hz = 0.0;

  double coupling(std::size_t i, int r, std::size_t j) const {
    return coupling_gain[(i * 2 + static_cast<std::size_t>(r)) * num_links + j];
  }
  double& coupling(std::size_t i, int r, std::size_t j) {
    return coupling_gain[(i * 2 + static_cast<std::size_t>(r)) * num_links + j];
  }
  double background(std::size_t i, int r) const {
    return background_gain.empty() ? 0.0 : background_gain[i * 2 + static_cast<std::size_t>(r)];
  }
  /// Worst-receiver total coupling toward all other links.
  double exposure(std::size_t i) const;
};

struct ResourceAllocation {
  AccessScheme scheme;
  std::vector<int> assignment;  // link -> resource in [0, K)
};

/// Greedy max-min allocation. Links are placed weakest first (ascending
/// SINR with every link on one resource, ties: lower index). Each takes the
/// resource that maximizes the minimum worst-case SINR over all links placed
/// so far; ties go to the higher own SINR, then the lower resource index.
/// Single-link moves are then applied, best first, while they raise the
/// minimum worst-case SINR.
ResourceAllocation allocate(const AccessProblem& problem, const AccessScheme& scheme);

/// Worst-case SINR (linear) of one link: worst receiver, co-resource
/// interferers plus background.
double worst_case_sinr(const AccessProblem& problem, const ResourceAllocation& alloc,
                       std::size_t link);
/// Interference power in dBW at the worst receiver; -inf when alone.
double worst_case_interference_dbw(const AccessProblem& problem, const ResourceAllocation& alloc,
                                   std::size_t link);
/// Zero-outage rate (B/K) log2(1 + SINR_wc).
double effective_rate(const AccessProblem& problem, const ResourceAllocation& alloc,
                      std::size_t link);
/// Smallest worst-case SINR over all links (allocation objective used by
/// the exhaustive check).
double min_worst_case_sinr(const AccessProblem& problem, const ResourceAllocation& alloc);

struct AccessOptions {
  double interference_rx_gain_dbi = 0.0;
  bool include_intra_interference = false;
};

/// Window-worst path data for every snapshot of a series that kept its
/// states. Distances are refined under linear relative motion across each
/// snapshot's hold interval.
class AccessWorkspace {
 public:
  AccessWorkspace(const ConstellationConfig& config, const LinkBudgetConfig& link_budget,
                  const SnapshotSeries& series, AccessOptions options = {}, int threads = 1);

  std::size_t num_snapshots() const { return series_->matchings.size(); }
  AccessProblem problem(std::size_t snapshot) const;

 private:
  struct WindowData {
    double desired_max_km = 0.0;
    std::array<std::vector<double>, 2> min_distance_km;  // indexed by state index
  };
  using Key = std::tuple<SatPair, std::size_t, std::size_t>;

  const ConstellationConfig config_;
  const LinkBudgetConfig link_budget_;
  const SnapshotSeries* series_;
  AccessOptions options_;
  std::vector<std::vector<ContactWindow>> windows_;
  std::map<Key, WindowData> cache_;
};

}  // namespace leosim
