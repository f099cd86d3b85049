// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "leosim/access.hpp"
#include "leosim/linkbudget.hpp"
#include "oracles/oracles.hpp"

using namespace leosim;

namespace {

const LinkBudgetParams kIsl = LinkBudgetConfig{}.params(LinkClass::Isl);

using oracle::empty_access_problem;
using oracle::random_access_problem;

// Restriction of a problem to a subset of its links.
AccessProblem restrict(const AccessProblem& full, const std::vector<std::size_t>& idx) {
  auto p = empty_access_problem(idx.size());
  p.eirp_density_w_per_hz = full.eirp_density_w_per_hz;
  p.noise_density_w_per_hz = full.noise_density_w_per_hz;
  if (!full.background_gain.empty()) p.background_gain.assign(idx.size() * 2, 0.0);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    p.desired_gain[a] = full.desired_gain[idx[a]];
    for (int r = 0; r < 2; ++r) {
      if (!full.background_gain.empty()) p.background_gain[a * 2 + r] = full.background(idx[a], r);
      for (std::size_t b = 0; b < idx.size(); ++b) p.coupling(a, r, b) = full.coupling(idx[a], r, idx[b]);
    }
  }
  return p;
}

}  // namespace

TEST(Walsh, Orthogonal) {
  for (int k : {1, 2, 4, 8, 16}) {
    const auto w = walsh_codes(k);
    ASSERT_EQ(static_cast<int>(w.size()), k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        int dot = 0;
        for (int c = 0; c < k; ++c) dot += w[i][c] * w[j][c];
        EXPECT_EQ(dot, i == j ? k : 0);
      }
  }
  EXPECT_THROW(walsh_codes(3), std::invalid_argument);
}

TEST(Scheme, Bandwidths) {
  const auto o = AccessScheme::ofdma(4, 400e6);
  const auto c = AccessScheme::cdma(4, 400e6);
  EXPECT_DOUBLE_EQ(o.occupied_bandwidth_hz(), 100e6);
  EXPECT_DOUBLE_EQ(c.occupied_bandwidth_hz(), 400e6);
  EXPECT_DOUBLE_EQ(o.rate_bandwidth_hz(), 100e6);
  EXPECT_DOUBLE_EQ(c.rate_bandwidth_hz(), 100e6);
  EXPECT_EQ(c.spreading_factor(), 4);
  EXPECT_EQ(o.spreading_factor(), 1);
  EXPECT_THROW(AccessScheme::cdma(3, 400e6), std::invalid_argument);
  EXPECT_THROW(AccessScheme::ofdma(0, 400e6), std::invalid_argument);
}

TEST(Allocate, SingleResource) {
  std::mt19937_64 rng(1);
  const auto p = random_access_problem(5, rng);
  const auto a = allocate(p, AccessScheme::ofdma(1, 400e6));
  for (int k : a.assignment) EXPECT_EQ(k, 0);
}

TEST(Allocate, EnoughResourcesSeparatesAll) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_access_problem(4, rng);
    const auto a = allocate(p, AccessScheme::ofdma(4 + trial % 3, 400e6));
    std::set<int> used(a.assignment.begin(), a.assignment.end());
    EXPECT_EQ(used.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i)
      EXPECT_EQ(worst_case_interference_dbw(p, a, i), -std::numeric_limits<double>::infinity());
  }
}

TEST(Allocate, ThreeLinksTwoResourcesSeparatesWeakest) {
  // Link 2 is strong; links 0 and 1 are weak and couple hard into each other.
  auto p = empty_access_problem(3);
  p.desired_gain = {1e-15, 1.2e-15, 1e-13};
  for (int r = 0; r < 2; ++r) {
    p.coupling(0, r, 1) = p.coupling(1, r, 0) = 1e-15;
    p.coupling(0, r, 2) = p.coupling(2, r, 0) = 1e-17;
    p.coupling(1, r, 2) = p.coupling(2, r, 1) = 1e-17;
  }
  const auto s = AccessScheme::ofdma(2, 400e6);
  const auto a = allocate(p, s);
  EXPECT_NE(a.assignment[0], a.assignment[1]);
  EXPECT_DOUBLE_EQ(min_worst_case_sinr(p, a), oracle::best_min_sinr(p, s));
}

TEST(Allocate, MatchesExhaustiveOnRandomInstances) {
  std::mt19937_64 rng(99);
  int matched = 0, total = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const int K = 1 + static_cast<int>(rng() % 4);
    const auto p = random_access_problem(n, rng);
    for (const auto& s : {AccessScheme::ofdma(K, 400e6), AccessScheme::cdma(K == 3 ? 2 : K, 400e6)}) {
      const double got = min_worst_case_sinr(p, allocate(p, s));
      const double best = oracle::best_min_sinr(p, s);
      ++total;
      if (got >= best * (1.0 - 1e-12)) ++matched;
    }
  }
  EXPECT_EQ(matched, total);
}

TEST(Allocate, MatchesExhaustiveOnConstellationSubproblems) {
  ConstellationConfig c;
  c.num_planes = 7;
  c.sats_per_plane = 20;
  const auto series = simulate_snapshots(c, kIsl, 600.0, 10.0, 2, true);
  const AccessWorkspace ws(c, LinkBudgetConfig{}, series, {0.0, true}, 2);
  std::mt19937_64 rng(5);
  int checked = 0;
  for (std::size_t s = 0; s < ws.num_snapshots(); s += 7) {
    const auto full = ws.problem(s);
    if (full.num_links < 3) continue;
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<std::size_t> idx;
      while (idx.size() < 3) {
        const std::size_t x = rng() % full.num_links;
        if (std::find(idx.begin(), idx.end(), x) == idx.end()) idx.push_back(x);
      }
      const auto p = restrict(full, idx);
      for (int K : {1, 2, 3}) {
        const auto sch = AccessScheme::ofdma(K, 400e6);
        EXPECT_GE(min_worst_case_sinr(p, allocate(p, sch)), oracle::best_min_sinr(p, sch) * (1.0 - 1e-12));
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Sinr, SingleInterfererBudget) {
  const double d_sig = 2000.0, d_int = 3000.0;
  auto p = empty_access_problem(2);
  p.desired_gain = {db_to_linear(kIsl.rx_gain_dbi) * free_space_gain(d_sig, kIsl.carrier_frequency_hz),
                    db_to_linear(kIsl.rx_gain_dbi) * free_space_gain(d_sig, kIsl.carrier_frequency_hz)};
  for (int r = 0; r < 2; ++r) {
    p.coupling(0, r, 1) = free_space_gain(d_int, kIsl.carrier_frequency_hz);
    p.coupling(1, r, 0) = free_space_gain(d_int, kIsl.carrier_frequency_hz);
  }
  for (int K : {1, 2, 4}) {
    const auto s = AccessScheme::ofdma(K, 400e6);
    const ResourceAllocation shared{s, {0, 0}};
    const double expect = derived_eirp(kIsl, s.occupied_bandwidth_hz()) - fspl_db(d_int, kIsl.carrier_frequency_hz);
    EXPECT_NEAR(worst_case_interference_dbw(p, shared, 0), expect, 1e-9);
    // Same budget through the scalar link-rate path.
    LinkGeometry g;
    g.distance_km = d_sig;
    g.visible = true;
    const auto lr = link_rate(g, kIsl, expect, s.occupied_bandwidth_hz());
    EXPECT_NEAR(linear_to_db(worst_case_sinr(p, shared, 0)), lr.sinr_db, 1e-9);
  }
  const ResourceAllocation cdma{AccessScheme::cdma(4, 400e6), {0, 0}};
  const ResourceAllocation ofdma1{AccessScheme::ofdma(1, 400e6), {0, 0}};
  EXPECT_NEAR(worst_case_interference_dbw(p, ofdma1, 0) - worst_case_interference_dbw(p, cdma, 0), 6.0206, 1e-4);
}

TEST(Rate, AloneEqualsLinkRate) {
  const double d = 2500.0;
  auto p = empty_access_problem(1);
  p.desired_gain = {db_to_linear(kIsl.rx_gain_dbi) * free_space_gain(d, kIsl.carrier_frequency_hz)};
  LinkGeometry g;
  g.distance_km = d;
  g.visible = true;
  const double expect = link_rate(g, kIsl).rate_bps;
  EXPECT_NEAR(effective_rate(p, allocate(p, AccessScheme::ofdma(1, 400e6)), 0), expect, 1e-6 * expect);
  EXPECT_NEAR(effective_rate(p, allocate(p, AccessScheme::cdma(1, 400e6)), 0), expect, 1e-6 * expect);
}

TEST(Rate, BoundedByInterferenceFree) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_access_problem(6, rng);
    for (int K : {1, 2, 3, 4}) {
      const auto s = AccessScheme::ofdma(K, 400e6);
      const auto a = allocate(p, s);
      for (std::size_t i = 0; i < p.num_links; ++i) {
        const double clean = shannon_rate(s.rate_bandwidth_hz(),
                                          p.eirp_density_w_per_hz * p.desired_gain[i] / p.noise_density_w_per_hz);
        EXPECT_LE(effective_rate(p, a, i), clean * (1.0 + 1e-12));
        EXPECT_GT(effective_rate(p, a, i), 0.0);
      }
    }
  }
}

TEST(Rate, DecreasingOnceLinksAreSeparated) {
  std::mt19937_64 rng(12);
  const auto p = random_access_problem(3, rng);
  double prev = std::numeric_limits<double>::infinity();
  for (int K = 3; K <= 8; ++K) {
    const auto a = allocate(p, AccessScheme::ofdma(K, 400e6));
    double sum = 0.0;
    for (std::size_t i = 0; i < 3; ++i) sum += effective_rate(p, a, i);
    EXPECT_LT(sum, prev);
    prev = sum;
  }
}

TEST(Workspace, RequiresStates) {
  ConstellationConfig c;
  c.num_planes = 3;
  c.sats_per_plane = 8;
  const auto series = simulate_snapshots(c, kIsl, 100.0, 10.0);
  EXPECT_THROW(AccessWorkspace(c, LinkBudgetConfig{}, series), std::invalid_argument);
}

TEST(Workspace, WorstDistanceBoundsSnapshotDistance) {
  ConstellationConfig c;
  c.num_planes = 5;
  c.sats_per_plane = 12;
  const auto series = simulate_snapshots(c, kIsl, 900.0, 10.0, 1, true);
  const AccessWorkspace ws(c, LinkBudgetConfig{}, series);
  const double g_rx = db_to_linear(kIsl.rx_gain_dbi);
  for (std::size_t s = 0; s < ws.num_snapshots(); ++s) {
    const auto p = ws.problem(s);
    ASSERT_EQ(p.num_links, series.matchings[s].inter_links.size());
    for (std::size_t l = 0; l < p.num_links; ++l) {
      const double snap = g_rx * free_space_gain(series.matchings[s].inter_links[l].geometry.distance_km,
                                                 kIsl.carrier_frequency_hz);
      EXPECT_LE(p.desired_gain[l], snap * (1.0 + 1e-12));
    }
  }
}
