// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "leosim/geometry.hpp"
#include "leosim/orbits.hpp"
#include "leosim/scenario.hpp"

namespace leosim {

struct SatId {
  int plane = 1;
  int sat = 1;
  auto operator<=>(const SatId&) const = default;
};

/// Unordered satellite pair stored with a <= b.
struct SatPair {
  SatId a;
  SatId b;
  static SatPair make(SatId x, SatId y) { return x < y ? SatPair{x, y} : SatPair{y, x}; }
  auto operator<=>(const SatPair&) const = default;
};

struct InterLink {
  SatId a;  // lower plane (plane 1 for a seam link)
  SatId b;
  LinkGeometry geometry;
  double rate_bps = 0.0;
  SatPair pair() const { return SatPair::make(a, b); }
};

struct IslMatching {
  double time_s = 0.0;
  std::vector<SatPair> intra_links;
  std::vector<InterLink> inter_links;
};

/// Ring of fore/aft neighbours in every plane; P*N links. Needs N >= 3.
std::vector<SatPair> intra_plane_ring(const ConstellationConfig& config);

/// Planes 1 and P of a Walker star (P >= 3).
bool is_cross_seam(const ConstellationConfig& config, int plane_a, int plane_b);
/// Planes eligible for inter-plane ISLs under the config.
bool planes_adjacent(const ConstellationConfig& config, int plane_a, int plane_b);

/// Visible inter-plane candidates with their interference-free rates.
std::vector<InterLink> inter_plane_candidates(const ConstellationConfig& config,
                                              const std::vector<SatelliteState>& states,
                                              const LinkBudgetParams& isl_params);

/// Greedy selection by descending rate with the (plane, sat) tie-break.
/// Each satellite takes at most `max_degree` links toward any one other
/// plane. The result is maximal and sorted in selection order.
std::vector<InterLink> greedy_select(std::vector<InterLink> candidates, int max_degree);

IslMatching greedy_match(const ConstellationConfig& config,
                         const std::vector<SatelliteState>& states,
                         const LinkBudgetParams& isl_params);

/// Snapshot times k * step for k = 0, 1, ... while k * step < duration.
std::vector<double> snapshot_times(double duration_s, double step_s);

struct SnapshotSeries {
  double step_s = 0.0;
  double duration_s = 0.0;
  std::vector<double> times;
  std::vector<std::vector<SatelliteState>> states;  // empty unless kept
  std::vector<IslMatching> matchings;
};

SnapshotSeries simulate_snapshots(const ConstellationConfig& config,
                                  const LinkBudgetParams& isl_params, double duration_s,
                                  double step_s, int threads = 1, bool keep_states = false);

/// Half-open hold interval [start, end) of one matched pair. Snapshot k
/// covers [t_k, t_k + step), clipped to the simulated duration.
struct ContactRecord {
  SatPair pair;
  double start_s = 0.0;
  double end_s = 0.0;
  bool intra = false;
};

/// Snapshot indices [first, last] over which a matched inter-plane link is
/// held consecutively.
struct ContactWindow {
  std::size_t first = 0;
  std::size_t last = 0;
};

/// windows[s][l] is the hold window of matchings[s].inter_links[l].
std::vector<std::vector<ContactWindow>> contact_windows(const std::vector<IslMatching>& matchings);

/// Records for intra- and inter-plane links, sorted by (intra, pair, start).
std::vector<ContactRecord> contacts_from_matchings(const std::vector<IslMatching>& matchings,
                                                   double step_s, double duration_s);

std::vector<ContactRecord> contact_times(const ConstellationConfig& config,
                                         const LinkBudgetParams& isl_params, double duration_s,
                                         double step_s, int threads = 1);

}  // namespace leosim
