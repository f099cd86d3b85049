// SPDX-License-Identifier: Apache-2.0
#include "leosim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include "leosim/linkbudget.hpp"
#include "leosim/parallel.hpp"

namespace leosim {

std::vector<SatPair> intra_plane_ring(const ConstellationConfig& config) {
  if (config.sats_per_plane < 3)
    throw std::invalid_argument("intra_plane_ring: N >= 3 required");
  std::vector<SatPair> out;
  out.reserve(static_cast<std::size_t>(config.num_satellites()));
  for (int p = 1; p <= config.num_planes; ++p)
    for (int n = 1; n <= config.sats_per_plane; ++n)
      out.push_back(SatPair::make({p, n}, {p, n % config.sats_per_plane + 1}));
  return out;
}

bool is_cross_seam(const ConstellationConfig& config, int plane_a, int plane_b) {
  const int lo = std::min(plane_a, plane_b), hi = std::max(plane_a, plane_b);
  return config.num_planes >= 3 && lo == 1 && hi == config.num_planes;
}

bool planes_adjacent(const ConstellationConfig& config, int plane_a, int plane_b) {
  if (std::abs(plane_a - plane_b) == 1) return true;
  return config.cross_seam_enabled && is_cross_seam(config, plane_a, plane_b);
}

std::vector<InterLink> inter_plane_candidates(const ConstellationConfig& config,
                                              const std::vector<SatelliteState>& states,
                                              const LinkBudgetParams& isl_params) {
  std::vector<InterLink> out;
  const int P = config.num_planes, N = config.sats_per_plane;
  for (int pa = 1; pa <= P; ++pa) {
    for (int pb = pa + 1; pb <= P; ++pb) {
      if (!planes_adjacent(config, pa, pb)) continue;
      for (int na = 1; na <= N; ++na) {
        const SatelliteState& sa = states[state_index(config, pa, na)];
        for (int nb = 1; nb <= N; ++nb) {
          const SatelliteState& sb = states[state_index(config, pb, nb)];
          LinkGeometry g = isl_geometry(sa, sb, config.occlusion_radius_km);
          if (!g.visible) continue;
          const double rate = link_rate(g, isl_params).rate_bps;
          out.push_back({{pa, na}, {pb, nb}, g, rate});
        }
      }
    }
  }
  return out;
}

std::vector<InterLink> greedy_select(std::vector<InterLink> candidates, int max_degree) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const InterLink& x, const InterLink& y) {
                     if (x.rate_bps != y.rate_bps) return x.rate_bps > y.rate_bps;
                     return std::tie(x.a, x.b) < std::tie(y.a, y.b);
                   });
  // Degree is counted per (satellite, plane on the other end).
  std::map<std::pair<SatId, int>, int> degree;
  std::vector<InterLink> chosen;
  for (const InterLink& c : candidates) {
    int& da = degree[{c.a, c.b.plane}];
    int& db = degree[{c.b, c.a.plane}];
    if (da >= max_degree || db >= max_degree) continue;
    ++da;
    ++db;
    chosen.push_back(c);
  }
  return chosen;
}

IslMatching greedy_match(const ConstellationConfig& config,
                         const std::vector<SatelliteState>& states,
                         const LinkBudgetParams& isl_params) {
  if (states.size() != static_cast<std::size_t>(config.num_satellites()))
    throw std::invalid_argument("greedy_match: state count does not match the config");
  IslMatching m;
  m.time_s = states.empty() ? 0.0 : states.front().time_s;
  if (config.sats_per_plane >= 3) m.intra_links = intra_plane_ring(config);
  m.inter_links = greedy_select(inter_plane_candidates(config, states, isl_params),
                                config.max_inter_degree);
  return m;
}

std::vector<double> snapshot_times(double duration_s, double step_s) {
  if (!(step_s > 0.0)) throw std::invalid_argument("snapshot_times: step must be > 0");
  if (!(duration_s > 0.0)) throw std::invalid_argument("snapshot_times: duration must be > 0");
  const auto n = static_cast<std::size_t>(std::ceil(duration_s / step_s - 1e-9));
  std::vector<double> t(std::max<std::size_t>(n, 1));
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = static_cast<double>(k) * step_s;
  return t;
}

SnapshotSeries simulate_snapshots(const ConstellationConfig& config,
                                  const LinkBudgetParams& isl_params, double duration_s,
                                  double step_s, int threads, bool keep_states) {
  SnapshotSeries s;
  s.step_s = step_s;
  s.duration_s = duration_s;
  s.times = snapshot_times(duration_s, step_s);
  s.matchings.resize(s.times.size());
  if (keep_states) s.states.resize(s.times.size());
  parallel_for(s.times.size(), threads, [&](std::size_t k) {
    auto states = propagate(config, s.times[k]);
    s.matchings[k] = greedy_match(config, states, isl_params);
    if (keep_states) s.states[k] = std::move(states);
  });
  return s;
}

std::vector<std::vector<ContactWindow>> contact_windows(const std::vector<IslMatching>& matchings) {
  const std::size_t S = matchings.size();
  std::vector<std::vector<ContactWindow>> w(S);
  std::map<SatPair, std::size_t> open;  // pair -> first snapshot of the current run
  for (std::size_t k = 0; k < S; ++k) {
    std::map<SatPair, std::size_t> next;
    w[k].resize(matchings[k].inter_links.size());
    for (std::size_t l = 0; l < matchings[k].inter_links.size(); ++l) {
      const SatPair p = matchings[k].inter_links[l].pair();
      auto it = open.find(p);
      const std::size_t first = it == open.end() ? k : it->second;
      next[p] = first;
      w[k][l].first = first;
    }
    open = std::move(next);
  }
  // Walk backwards to fill in the last index of each run.
  std::map<SatPair, std::size_t> last;
  for (std::size_t k = S; k-- > 0;) {
    std::map<SatPair, std::size_t> next;
    for (std::size_t l = 0; l < matchings[k].inter_links.size(); ++l) {
      const SatPair p = matchings[k].inter_links[l].pair();
      auto it = last.find(p);
      const std::size_t end = it == last.end() ? k : it->second;
      next[p] = end;
      w[k][l].last = end;
    }
    last = std::move(next);
  }
  return w;
}

std::vector<ContactRecord> contacts_from_matchings(const std::vector<IslMatching>& matchings,
                                                   double step_s, double duration_s) {
  std::vector<ContactRecord> out;
  auto close = [&](const SatPair& p, std::size_t first, std::size_t last, bool intra) {
    const double start = matchings[first].time_s;
    const double end = std::min(matchings[last].time_s + step_s, duration_s);
    out.push_back({p, start, end, intra});
  };
  for (bool intra : {false, true}) {
    std::map<SatPair, std::size_t> open;
    for (std::size_t k = 0; k < matchings.size(); ++k) {
      std::vector<SatPair> cur;
      if (intra) {
        cur = matchings[k].intra_links;
      } else {
        for (const auto& l : matchings[k].inter_links) cur.push_back(l.pair());
      }
      std::sort(cur.begin(), cur.end());
      std::map<SatPair, std::size_t> next;
      for (const auto& p : cur) {
        auto it = open.find(p);
        next[p] = it == open.end() ? k : it->second;
      }
      for (const auto& [p, first] : open)
        if (!next.count(p)) close(p, first, k - 1, intra);
      open = std::move(next);
    }
    for (const auto& [p, first] : open) close(p, first, matchings.size() - 1, intra);
  }
  std::sort(out.begin(), out.end(), [](const ContactRecord& x, const ContactRecord& y) {
    return std::tie(x.intra, x.pair, x.start_s) < std::tie(y.intra, y.pair, y.start_s);
  });
  return out;
}

std::vector<ContactRecord> contact_times(const ConstellationConfig& config,
                                         const LinkBudgetParams& isl_params, double duration_s,
                                         double step_s, int threads) {
  if (!(duration_s > step_s && step_s > 0.0))
    throw std::invalid_argument("contact_times: duration > step > 0 required");
  const SnapshotSeries s = simulate_snapshots(config, isl_params, duration_s, step_s, threads);
  return contacts_from_matchings(s.matchings, step_s, duration_s);
}

}  // namespace leosim
