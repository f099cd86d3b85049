// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "leosim/linkbudget.hpp"

using namespace leosim;

namespace {

LinkGeometry gsl(double d, double elev = 90.0) {
  LinkGeometry g;
  g.distance_km = d;
  g.elevation_deg = elev;
  g.visible = true;
  return g;
}

LinkGeometry isl(double d) {
  LinkGeometry g;
  g.distance_km = d;
  g.visible = true;
  return g;
}

}  // namespace

TEST(Fspl, Values) {
  EXPECT_NEAR(fspl_db(600.0, 20e9), 174.03, 0.01);
  EXPECT_NEAR(fspl_db(1075.1, 20e9), 179.09, 0.02);
  EXPECT_NEAR(fspl_db(1200.0, 20e9) - fspl_db(600.0, 20e9), 6.0206, 1e-4);
  EXPECT_NEAR(fspl_db(600.0, 40e9) - fspl_db(600.0, 20e9), 6.0206, 1e-4);
  EXPECT_NEAR(linear_to_db(free_space_gain(600.0, 20e9)), -fspl_db(600.0, 20e9), 1e-9);
}

TEST(Noise, Values) {
  EXPECT_NEAR(noise_power_dbw(354.81, 400e6), -117.08, 0.01);
  EXPECT_NEAR(noise_power_dbw(354.81, 1.0), -203.1, 0.05);
  EXPECT_NEAR(noise_power_dbw(354.81, 200e6) - noise_power_dbw(354.81, 400e6), -3.0103, 1e-4);
}

TEST(Shannon, Values) {
  EXPECT_DOUBLE_EQ(shannon_rate(1e6, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(shannon_rate(1e6, 1.0), 1e6);
  EXPECT_NEAR(shannon_rate(1e6, 3.0), 2e6, 1e-6);
}

TEST(LinkRate, GslDownlinkAtZenith) {
  const auto p = LinkBudgetConfig{}.params(LinkClass::GslDownlink);
  const auto r = link_rate(gsl(600.0), p);
  EXPECT_NEAR(r.sinr_db, 12.0, 0.05);
  EXPECT_NEAR(r.rate_bps / 1e9, 1.63, 0.01);
  EXPECT_FALSE(r.interference_dbw.has_value());
  EXPECT_DOUBLE_EQ(r.bandwidth_hz, 400e6);
}

TEST(LinkRate, IslAtAdjacentChord) {
  const auto p = LinkBudgetConfig{}.params(LinkClass::Isl);
  const auto r = link_rate(isl(2181.0), p);
  EXPECT_NEAR(r.sinr_db, -3.2, 0.05);
  EXPECT_NEAR(r.rate_bps / 1e9, 0.23, 0.005);
}

TEST(LinkRate, LossesOnlyOnGsl) {
  auto p = LinkBudgetConfig{}.params(LinkClass::GslDownlink);
  const double with_elev = link_rate(gsl(1000.0), p).sinr_db;
  const double without = link_rate(isl(1000.0), p).sinr_db;
  EXPECT_NEAR(without - with_elev, p.atmospheric_loss_db + p.scintillation_loss_db, 1e-9);
}

TEST(LinkRate, InterferenceEqualToNoiseHalvesSinr) {
  const auto p = LinkBudgetConfig{}.params(LinkClass::Isl);
  const auto clean = link_rate(isl(1500.0), p);
  const auto noisy = link_rate(isl(1500.0), p, clean.noise_power_dbw);
  EXPECT_NEAR(clean.sinr_db - noisy.sinr_db, 3.0103, 1e-4);
  ASSERT_TRUE(noisy.interference_dbw.has_value());
}

TEST(LinkRate, ShannonConsistency) {
  const auto p = LinkBudgetConfig{}.params(LinkClass::GslUplink);
  for (double d : {600.0, 800.0, 1100.0}) {
    const auto r = link_rate(gsl(d, 45.0), p);
    EXPECT_NEAR(r.rate_bps, r.bandwidth_hz * std::log2(1.0 + db_to_linear(r.sinr_db)),
                1e-6 * r.rate_bps);
    EXPECT_NEAR(r.spectral_efficiency, r.rate_bps / r.bandwidth_hz, 1e-12);
    EXPECT_NEAR(r.sinr_db, r.received_power_dbw - r.noise_power_dbw, 1e-9);
  }
}

TEST(LinkRate, DecreasingInDistance) {
  const auto p = LinkBudgetConfig{}.params(LinkClass::Isl);
  double prev = std::numeric_limits<double>::infinity();
  for (double d = 500.0; d < 6000.0; d += 250.0) {
    const double r = link_rate(isl(d), p).rate_bps;
    EXPECT_LT(r, prev);
    prev = r;
  }
}

TEST(LinkRate, NarrowerBandKeepsDensityEirp) {
  // EIRP density is fixed, so SNR is independent of the occupied band for a satellite.
  const auto p = LinkBudgetConfig{}.params(LinkClass::Isl);
  EXPECT_NEAR(link_rate(isl(1500.0), p, std::nullopt, 100e6).sinr_db,
              link_rate(isl(1500.0), p).sinr_db, 1e-9);
}

TEST(LinkRate, InvisibleRejected) {
  LinkGeometry g = isl(1000.0);
  g.visible = false;
  EXPECT_THROW(link_rate(g, LinkBudgetConfig{}.params(LinkClass::Isl)), std::invalid_argument);
}
