// SPDX-License-Identifier: Apache-2.0
#include "leosim/access.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "leosim/constants.hpp"
#include "leosim/linkbudget.hpp"
#include "leosim/parallel.hpp"

namespace leosim {

AccessScheme AccessScheme::ofdma(int k, double bandwidth_hz) {
  if (k < 1) throw std::invalid_argument("OFDMA needs K >= 1");
  return {AccessKind::Ofdma, k, bandwidth_hz};
}

AccessScheme AccessScheme::cdma(int k, double bandwidth_hz) {
  if (k < 1 || (k & (k - 1)) != 0) throw std::invalid_argument("CDMA needs K a power of two");
  return {AccessKind::Cdma, k, bandwidth_hz};
}

double AccessScheme::occupied_bandwidth_hz() const {
  return kind == AccessKind::Ofdma ? bandwidth_hz / num_resources : bandwidth_hz;
}

std::vector<std::vector<int>> walsh_codes(int k) {
  if (k < 1 || (k & (k - 1)) != 0) throw std::invalid_argument("walsh_codes: K must be 2^m");
  std::vector<std::vector<int>> h{{1}};
  while (static_cast<int>(h.size()) < k) {
    const std::size_t n = h.size();
    std::vector<std::vector<int>> next(2 * n, std::vector<int>(2 * n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        next[i][j] = next[i][j + n] = next[i + n][j] = h[i][j];
        next[i + n][j + n] = -h[i][j];
      }
    h = std::move(next);
  }
  return h;
}

double AccessProblem::exposure(std::size_t i) const {
  double worst = 0.0;
  for (int r = 0; r < 2; ++r) {
    double s = background(i, r);
    for (std::size_t j = 0; j < num_links; ++j) s += coupling(i, r, j);
    worst = std::max(worst, s);
  }
  return worst;
}

namespace {

// All powers per hertz of occupied bandwidth: the scheme only changes how
// interference is weighted (CDMA despreading divides it by K).
double sinr_from(const AccessProblem& p, const AccessScheme& s, std::size_t link,
                 double worst_coupling) {
  const double signal = p.eirp_density_w_per_hz * p.desired_gain[link];
  const double interference = p.eirp_density_w_per_hz * worst_coupling / s.spreading_factor();
  return signal / (p.noise_density_w_per_hz + interference);
}

double worst_coupling(const AccessProblem& p, const ResourceAllocation& a, std::size_t link) {
  double worst = 0.0;
  const int k = a.assignment.at(link);
  for (int r = 0; r < 2; ++r) {
    double s = p.background(link, r);
    for (std::size_t j = 0; j < p.num_links; ++j)
      if (j != link && a.assignment[j] == k) s += p.coupling(link, r, j);
    worst = std::max(worst, s);
  }
  return worst;
}

}  // namespace

ResourceAllocation allocate(const AccessProblem& problem, const AccessScheme& scheme) {
  const std::size_t n = problem.num_links;
  const int K = scheme.num_resources;
  if (K < 1) throw std::invalid_argument("allocate: K >= 1 required");
  ResourceAllocation out{scheme, std::vector<int>(n, -1)};

  // Weakest link first: ascending SINR when every link shares one resource.
  std::vector<double> shared(n);
  for (std::size_t i = 0; i < n; ++i) shared[i] = sinr_from(problem, scheme, i, problem.exposure(i));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return shared[x] < shared[y]; });

  // acc[i*2 + r]: coupling into receiver r of link i from links already on its resource.
  std::vector<double> acc(n * 2, 0.0);
  std::vector<double> sinr(n, 0.0);
  auto worst_with = [&](std::size_t i, std::size_t extra) {
    double w = 0.0;
    for (int r = 0; r < 2; ++r)
      w = std::max(w, problem.background(i, r) + acc[i * 2 + r] + problem.coupling(i, r, extra));
    return w;
  };
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(K));
  constexpr double kInf = std::numeric_limits<double>::infinity();

  for (std::size_t l : order) {
    std::vector<double> res_min(static_cast<std::size_t>(K), kInf);
    for (int k = 0; k < K; ++k)
      for (std::size_t i : members[k]) res_min[k] = std::min(res_min[k], sinr[i]);

    int best_k = 0;
    double best_global = -1.0, best_own = -1.0;
    for (int k = 0; k < K; ++k) {
      // Global objective after placing l on k: the minimum worst-case SINR
      // over every link placed so far.
      double global = kInf;
      for (int q = 0; q < K; ++q)
        if (q != k) global = std::min(global, res_min[q]);
      double own_coupling = 0.0;
      for (int r = 0; r < 2; ++r) {
        double s = problem.background(l, r);
        for (std::size_t i : members[k]) s += problem.coupling(l, r, i);
        own_coupling = std::max(own_coupling, s);
      }
      const double own = sinr_from(problem, scheme, l, own_coupling);
      global = std::min(global, own);
      for (std::size_t i : members[k])
        global = std::min(global, sinr_from(problem, scheme, i, worst_with(i, l)));
      if (global > best_global || (global == best_global && own > best_own)) {
        best_global = global;
        best_own = own;
        best_k = k;
      }
    }

    out.assignment[l] = best_k;
    double own_coupling = 0.0;
    for (int r = 0; r < 2; ++r) {
      double s = 0.0;
      for (std::size_t i : members[best_k]) s += problem.coupling(l, r, i);
      acc[l * 2 + r] = s;
      own_coupling = std::max(own_coupling, problem.background(l, r) + s);
    }
    for (std::size_t i : members[best_k]) {
      for (int r = 0; r < 2; ++r) acc[i * 2 + r] += problem.coupling(i, r, l);
      double w = 0.0;
      for (int r = 0; r < 2; ++r) w = std::max(w, problem.background(i, r) + acc[i * 2 + r]);
      sinr[i] = sinr_from(problem, scheme, i, w);
    }
    sinr[l] = sinr_from(problem, scheme, l, own_coupling);
    members[best_k].push_back(l);
  }

  // Refinement: steepest single-link moves while the minimum improves.
  auto refresh = [&](int k) {
    for (std::size_t i : members[k]) {
      double w = 0.0;
      for (int r = 0; r < 2; ++r) {
        double s = 0.0;
        for (std::size_t j : members[k])
          if (j != i) s += problem.coupling(i, r, j);
        acc[i * 2 + r] = s;
        w = std::max(w, problem.background(i, r) + s);
      }
      sinr[i] = sinr_from(problem, scheme, i, w);
    }
  };
  for (;;) {
    std::vector<double> res_min(static_cast<std::size_t>(K), kInf);
    double current = kInf;
    for (int k = 0; k < K; ++k)
      for (std::size_t i : members[k]) res_min[k] = std::min(res_min[k], sinr[i]);
    for (double v : res_min) current = std::min(current, v);

    double best = current * (1.0 + 1e-12);
    std::size_t move_link = n;
    int move_to = -1;
    for (std::size_t l : order) {
      const int from = out.assignment[l];
      for (int to = 0; to < K; ++to) {
        if (to == from) continue;
        double global = kInf;
        for (int q = 0; q < K; ++q)
          if (q != from && q != to) global = std::min(global, res_min[q]);
        if (global <= best) continue;
        for (std::size_t i : members[from]) {
          if (i == l) continue;
          double w = 0.0;
          for (int r = 0; r < 2; ++r)
            w = std::max(w, problem.background(i, r) + acc[i * 2 + r] - problem.coupling(i, r, l));
          global = std::min(global, sinr_from(problem, scheme, i, w));
        }
        double own = 0.0;
        for (int r = 0; r < 2; ++r) {
          double s = problem.background(l, r);
          for (std::size_t i : members[to]) s += problem.coupling(l, r, i);
          own = std::max(own, s);
        }
        global = std::min(global, sinr_from(problem, scheme, l, own));
        for (std::size_t i : members[to])
          if (global > best) global = std::min(global, sinr_from(problem, scheme, i, worst_with(i, l)));
        if (global > best) {
          best = global;
          move_link = l;
          move_to = to;
        }
      }
    }
    if (move_link == n) break;
    const int from = out.assignment[move_link];
    auto& src = members[from];
    src.erase(std::find(src.begin(), src.end(), move_link));
    members[move_to].push_back(move_link);
    out.assignment[move_link] = move_to;
    refresh(from);
    refresh(move_to);
  }
  return out;
}

double worst_case_sinr(const AccessProblem& problem, const ResourceAllocation& alloc,
                       std::size_t link) {
  return sinr_from(problem, alloc.scheme, link, worst_coupling(problem, alloc, link));
}

double worst_case_interference_dbw(const AccessProblem& problem, const ResourceAllocation& alloc,
                                   std::size_t link) {
  const double w = worst_coupling(problem, alloc, link);
  if (w <= 0.0) return -std::numeric_limits<double>::infinity();
  const double watts = problem.eirp_density_w_per_hz * alloc.scheme.occupied_bandwidth_hz() * w /
                       alloc.scheme.spreading_factor();
  return linear_to_db(watts);
}

double effective_rate(const AccessProblem& problem, const ResourceAllocation& alloc,
                      std::size_t link) {
  return shannon_rate(alloc.scheme.rate_bandwidth_hz(), worst_case_sinr(problem, alloc, link));
}

double min_worst_case_sinr(const AccessProblem& problem, const ResourceAllocation& alloc) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < problem.num_links; ++i)
    m = std::min(m, worst_case_sinr(problem, alloc, i));
  return m;
}

namespace {

// Extremes of |d + v t| for t in [0, tau].
double min_distance_linear(const Eigen::Vector3d& d, const Eigen::Vector3d& v, double tau) {
  const double vv = v.squaredNorm();
  double t = vv > 0.0 ? std::clamp(-d.dot(v) / vv, 0.0, tau) : 0.0;
  return (d + v * t).norm();
}

double max_distance_linear(const Eigen::Vector3d& d, const Eigen::Vector3d& v, double tau) {
  return std::max(d.norm(), (d + v * tau).norm());
}

}  // namespace

AccessWorkspace::AccessWorkspace(const ConstellationConfig& config,
                                 const LinkBudgetConfig& link_budget, const SnapshotSeries& series,
                                 AccessOptions options, int threads)
    : config_(config),
      link_budget_(link_budget),
      series_(&series),
      options_(options),
      windows_(contact_windows(series.matchings)) {
  if (series.states.size() != series.matchings.size())
    throw std::invalid_argument("AccessWorkspace: series must keep its states");

  std::vector<Key> keys;
  for (std::size_t s = 0; s < series.matchings.size(); ++s) {
    const auto& m = series.matchings[s];
    for (std::size_t l = 0; l < m.inter_links.size(); ++l) {
      // The window data is identical at every snapshot of a run; build it once.
      if (windows_[s][l].first != s) continue;
      keys.emplace_back(m.inter_links[l].pair(), windows_[s][l].first, windows_[s][l].last);
    }
  }

  std::vector<WindowData> data(keys.size());
  const std::size_t num_sats = static_cast<std::size_t>(config.num_satellites());
  parallel_for(keys.size(), threads, [&](std::size_t q) {
    const auto& [pair, first, last] = keys[q];
    const std::size_t ia = state_index(config, pair.a.plane, pair.a.sat);
    const std::size_t ib = state_index(config, pair.b.plane, pair.b.sat);
    WindowData& w = data[q];
    for (auto& v : w.min_distance_km) v.assign(num_sats, std::numeric_limits<double>::infinity());
    for (std::size_t s = first; s <= last; ++s) {
      const auto& st = series.states[s];
      const double tau = std::max(0.0, std::min(series.step_s, series.duration_s - series.times[s]));
      w.desired_max_km = std::max(
          w.desired_max_km, max_distance_linear(st[ib].position_km - st[ia].position_km,
                                                st[ib].velocity_km_s - st[ia].velocity_km_s, tau));
      const std::size_t rx[2] = {ia, ib};
      for (int r = 0; r < 2; ++r) {
        const SatelliteState& v = st[rx[r]];
        auto& out = w.min_distance_km[r];
        for (std::size_t j = 0; j < num_sats; ++j) {
          if (j == rx[r]) continue;
          const double d = min_distance_linear(st[j].position_km - v.position_km,
                                               st[j].velocity_km_s - v.velocity_km_s, tau);
          out[j] = std::min(out[j], d);
        }
      }
    }
  });
  for (std::size_t q = 0; q < keys.size(); ++q) cache_.emplace(keys[q], std::move(data[q]));
}

AccessProblem AccessWorkspace::problem(std::size_t snapshot) const {
  const auto& m = series_->matchings.at(snapshot);
  const std::size_t n = m.inter_links.size();
  const LinkBudgetParams isl = link_budget_.params(LinkClass::Isl);
  const double f = isl.carrier_frequency_hz;
  const double g_rx = db_to_linear(isl.rx_gain_dbi);
  const double g_int = db_to_linear(options_.interference_rx_gain_dbi);

  AccessProblem p;
  p.num_links = n;
  p.eirp_density_w_per_hz = db_to_linear(isl.eirp_density_dbw_per_mhz) / 1e6;
  p.noise_density_w_per_hz = PhysicalConstants::boltzmann * isl.noise_temperature_k;
  p.desired_gain.resize(n);
  p.coupling_gain.assign(n * 2 * n, 0.0);
  if (options_.include_intra_interference) p.background_gain.assign(n * 2, 0.0);

  std::vector<std::array<std::size_t, 2>> ends(n);
  std::vector<const WindowData*> wd(n);
  for (std::size_t l = 0; l < n; ++l) {
    const InterLink& link = m.inter_links[l];
    ends[l] = {state_index(config_, link.a.plane, link.a.sat),
               state_index(config_, link.b.plane, link.b.sat)};
    const ContactWindow& w = windows_[snapshot][l];
    wd[l] = &cache_.at(Key{link.pair(), w.first, w.last});
    p.desired_gain[l] = g_rx * free_space_gain(wd[l]->desired_max_km, f);
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (int r = 0; r < 2; ++r) {
      const auto& dmin = wd[i]->min_distance_km[r];
      const std::size_t victim = ends[i][r];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        double g = 0.0;
        for (std::size_t tx : ends[j])
          if (tx != victim) g += free_space_gain(dmin[tx], f);
        p.coupling(i, r, j) = g_int * g;
      }
      if (options_.include_intra_interference) {
        // Every other satellite carries intra-plane traffic on the full band.
        double g = 0.0;
        for (std::size_t tx = 0; tx < dmin.size(); ++tx)
          if (tx != victim) g += free_space_gain(dmin[tx], f);
        p.background_gain[i * 2 + r] = g_int * g;
      }
    }
  }
  return p;
}

}  // namespace leosim
