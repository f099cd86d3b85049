// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "leosim/topology.hpp"
#include "oracles/oracles.hpp"

using namespace leosim;

namespace {

ConstellationConfig shape(int p, int n, bool seam = false) {
  ConstellationConfig c;
  c.num_planes = p;
  c.sats_per_plane = n;
  c.cross_seam_enabled = seam;
  return c;
}

LinkBudgetParams isl_params() { return LinkBudgetConfig{}.params(LinkClass::Isl); }

InterLink edge(SatId a, SatId b, double rate) { return InterLink{a, b, {}, rate}; }

double total(const std::vector<InterLink>& links) {
  double s = 0.0;
  for (const auto& l : links) s += l.rate_bps;
  return s;
}

}  // namespace

TEST(Ring, Sizes) {
  EXPECT_EQ(intra_plane_ring(shape(1, 3)).size(), 3u);
  const auto ring = intra_plane_ring(shape(7, 20));
  EXPECT_EQ(ring.size(), 140u);
  std::map<SatId, int> degree;
  for (const auto& l : ring) {
    EXPECT_EQ(l.a.plane, l.b.plane);
    ++degree[l.a];
    ++degree[l.b];
  }
  EXPECT_EQ(degree.size(), 140u);
  for (const auto& [id, d] : degree) EXPECT_EQ(d, 2);
  EXPECT_THROW(intra_plane_ring(shape(2, 2)), std::invalid_argument);
}

TEST(Seam, Adjacency) {
  const auto c = shape(7, 20);
  EXPECT_TRUE(is_cross_seam(c, 1, 7));
  EXPECT_TRUE(is_cross_seam(c, 7, 1));
  EXPECT_FALSE(is_cross_seam(c, 1, 2));
  EXPECT_FALSE(planes_adjacent(c, 1, 7));
  EXPECT_TRUE(planes_adjacent(shape(7, 20, true), 1, 7));
  EXPECT_FALSE(planes_adjacent(c, 2, 4));
  EXPECT_FALSE(is_cross_seam(shape(2, 5), 1, 2));
}

TEST(Greedy, PicksStrongerOfTwo) {
  const SatId a{1, 1}, b{2, 1}, cc{2, 2};
  const std::vector<InterLink> cand = {edge(a, cc, 2.0), edge(a, b, 3.0)};
  const auto sel = greedy_select(cand, 1);
  ASSERT_EQ(sel.size(), 1u);
  EXPECT_EQ(sel[0].b, b);
  EXPECT_DOUBLE_EQ(total(sel), oracle::max_weight_matching(cand));
}

TEST(Greedy, DegreeCountedPerOtherPlane) {
  // The middle satellite may hold one link toward each neighbouring plane.
  const SatId m{2, 1};
  const std::vector<InterLink> cand = {edge({1, 1}, m, 1.0), edge(m, {3, 1}, 1.0)};
  EXPECT_EQ(greedy_select(cand, 1).size(), 2u);
  EXPECT_EQ(greedy_select({edge({1, 1}, m, 1.0), edge({1, 2}, m, 0.5)}, 1).size(), 1u);
  EXPECT_EQ(greedy_select({edge({1, 1}, m, 1.0), edge({1, 2}, m, 0.5)}, 2).size(), 2u);
}

TEST(Greedy, TieBreakBySatId) {
  const std::vector<InterLink> cand = {edge({1, 2}, {2, 1}, 1.0), edge({1, 1}, {2, 1}, 1.0)};
  const auto sel = greedy_select(cand, 1);
  ASSERT_EQ(sel.size(), 1u);
  EXPECT_EQ(sel[0].a, (SatId{1, 1}));
}

TEST(Greedy, AgainstExhaustiveMatching) {
  std::mt19937_64 rng(2024);
  int equal = 0;
  double worst_ratio = 1.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto cand = oracle::random_matching_instance(rng);
    const double g = total(greedy_select(cand, 1));
    const double opt = oracle::max_weight_matching(cand);
    if (opt == 0.0) {
      EXPECT_EQ(g, 0.0);
      ++equal;
      continue;
    }
    if (g >= opt - 1e-12 * opt) ++equal;
    worst_ratio = std::min(worst_ratio, g / opt);
  }
  EXPECT_GE(equal, 900);
  EXPECT_GE(worst_ratio, 0.5);
}

TEST(Greedy, MaximalAndWithinDegree) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto cand = oracle::random_matching_instance(rng);
    const auto sel = greedy_select(cand, 1);
    std::map<std::pair<SatId, int>, int> deg;
    for (const auto& l : sel) {
      EXPECT_LE((++deg[{l.a, l.b.plane}]), 1);
      EXPECT_LE((++deg[{l.b, l.a.plane}]), 1);
    }
    for (std::size_t i = 1; i < sel.size(); ++i) EXPECT_GE(sel[i - 1].rate_bps, sel[i].rate_bps);
    // Every rejected candidate conflicts with a chosen one.
    for (const auto& c : cand) {
      const bool chosen = std::any_of(sel.begin(), sel.end(), [&](const InterLink& s) { return s.pair() == c.pair(); });
      if (chosen) continue;
      EXPECT_TRUE((deg[{c.a, c.b.plane}] >= 1 || deg[{c.b, c.a.plane}] >= 1));
    }
  }
}

TEST(Matching, ConstellationInvariants) {
  const auto c = shape(7, 20);
  const auto p = isl_params();
  const double T = orbital_period(c.min_altitude_km());
  for (double t = 0.0; t < T; t += T / 12.0) {
    const auto st = propagate(c, t);
    const auto m = greedy_match(c, st, p);
    EXPECT_EQ(m.intra_links.size(), 140u);
    std::map<std::pair<SatId, int>, int> deg;
    for (const auto& l : m.inter_links) {
      EXPECT_EQ(l.b.plane - l.a.plane, 1);  // no seam links without the option
      EXPECT_TRUE(l.geometry.visible);
      EXPECT_GT(l.rate_bps, 0.0);
      EXPECT_LE((++deg[{l.a, l.b.plane}]), 1);
      EXPECT_LE((++deg[{l.b, l.a.plane}]), 1);
    }
    EXPECT_LE(m.inter_links.size(), 6u * 20u);
  }
}

TEST(Matching, SeamLinksWhenEnabled) {
  const auto c = shape(7, 20, true);
  const auto m = greedy_match(c, propagate(c, 0.0), isl_params());
  const bool any_seam = std::any_of(m.inter_links.begin(), m.inter_links.end(),
                                    [](const InterLink& l) { return l.a.plane == 1 && l.b.plane == 7; });
  EXPECT_TRUE(any_seam);
}

TEST(Snapshots, Times) {
  const auto t = snapshot_times(20.0, 5.0);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t.back(), 15.0);
  EXPECT_EQ(snapshot_times(21.0, 5.0).size(), 5u);
}

TEST(Snapshots, ThreadIndependent) {
  const auto c = shape(4, 10);
  const auto a = simulate_snapshots(c, isl_params(), 600.0, 20.0, 1);
  const auto b = simulate_snapshots(c, isl_params(), 600.0, 20.0, 4);
  ASSERT_EQ(a.matchings.size(), b.matchings.size());
  for (std::size_t s = 0; s < a.matchings.size(); ++s) {
    ASSERT_EQ(a.matchings[s].inter_links.size(), b.matchings[s].inter_links.size());
    for (std::size_t l = 0; l < a.matchings[s].inter_links.size(); ++l) {
      EXPECT_EQ(a.matchings[s].inter_links[l].pair(), b.matchings[s].inter_links[l].pair());
      EXPECT_EQ(a.matchings[s].inter_links[l].rate_bps, b.matchings[s].inter_links[l].rate_bps);
    }
  }
}

TEST(Contacts, Properties) {
  const auto c = shape(5, 12);
  const double duration = 1800.0, step = 10.0;
  const auto contacts = contact_times(c, isl_params(), duration, step);
  ASSERT_FALSE(contacts.empty());
  std::map<SatPair, double> last_end;
  std::size_t intra = 0;
  for (const auto& r : contacts) {
    EXPECT_LT(r.start_s, r.end_s);
    EXPECT_GE(r.start_s, 0.0);
    EXPECT_LE(r.end_s, duration);
    if (r.intra) {
      ++intra;
      EXPECT_EQ(r.start_s, 0.0);
      EXPECT_EQ(r.end_s, duration);
      continue;
    }
    EXPECT_NEAR(std::fmod(r.start_s, step), 0.0, 1e-9);
    const auto it = last_end.find(r.pair);
    if (it != last_end.end()) EXPECT_LT(it->second, r.start_s);  // separated by a gap
    last_end[r.pair] = r.end_s;
  }
  EXPECT_EQ(intra, 60u);
  EXPECT_THROW(contact_times(c, isl_params(), 10.0, 10.0), std::invalid_argument);
}

TEST(Contacts, WindowsCoverRuns) {
  const auto c = shape(4, 10);
  const auto s = simulate_snapshots(c, isl_params(), 1200.0, 10.0);
  const auto w = contact_windows(s.matchings);
  ASSERT_EQ(w.size(), s.matchings.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    ASSERT_EQ(w[k].size(), s.matchings[k].inter_links.size());
    for (std::size_t l = 0; l < w[k].size(); ++l) {
      EXPECT_LE(w[k][l].first, k);
      EXPECT_GE(w[k][l].last, k);
      const SatPair p = s.matchings[k].inter_links[l].pair();
      for (std::size_t j = w[k][l].first; j <= w[k][l].last; ++j) {
        const auto& links = s.matchings[j].inter_links;
        EXPECT_TRUE(std::any_of(links.begin(), links.end(), [&](const InterLink& x) { return x.pair() == p; }));
      }
    }
  }
}
