#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "levelseg/alpha_select.hpp"
#include "levelseg/image_io.hpp"
#include "levelseg/phantom.hpp"
#include "oracles.hpp"

using namespace levelseg;

namespace {

AlphaSweepReport synthetic(const std::vector<double>& c_out,
                           const std::vector<bool>& degenerate = {}) {
  AlphaSweepReport r;
  for (std::size_t k = 0; k < c_out.size(); ++k) {
    AlphaSweepEntry e;
    e.alpha = 0.1 * (k + 1);
    e.c_out = c_out[k];
    e.degenerate = !degenerate.empty() && degenerate[k];
    r.entries.push_back(e);
  }
  return r;
}

}  // namespace

TEST(SelectPlateau, LongestRunWins) {
  AlphaSweepReport r = synthetic({0.10, 0.30, 0.31, 0.32, 0.60, 0.61});
  select_plateau(r, 0.02);
  EXPECT_NEAR(r.plateau_lo, 0.2, 1e-15);
  EXPECT_NEAR(r.plateau_hi, 0.4, 1e-15);
  EXPECT_NEAR(r.chosen_alpha, 0.3, 1e-15);
  EXPECT_FALSE(r.chosen_interpolated);
  EXPECT_FALSE(r.entries[0].in_plateau);
  EXPECT_TRUE(r.entries[2].in_plateau);
}

TEST(SelectPlateau, TiesGoToSmallerAlpha) {
  AlphaSweepReport r = synthetic({0.10, 0.11, 0.50, 0.51, 0.90});
  select_plateau(r, 0.02);
  EXPECT_DOUBLE_EQ(r.plateau_lo, 0.1);
  EXPECT_DOUBLE_EQ(r.plateau_hi, 0.2);
  EXPECT_TRUE(r.chosen_interpolated);
  EXPECT_NEAR(r.chosen_alpha, 0.15, 1e-15);
}

TEST(SelectPlateau, DegenerateEntriesBreakRuns) {
  AlphaSweepReport r = synthetic({0.2, 0.2, 0.2, 0.2, 0.2}, {false, false, true, false, false});
  select_plateau(r, 0.02);
  EXPECT_DOUBLE_EQ(r.plateau_lo, 0.1);
  EXPECT_DOUBLE_EQ(r.plateau_hi, 0.2);
  EXPECT_FALSE(r.entries[2].in_plateau);
}

TEST(SelectPlateau, ChosenInsidePlateauProperty) {
  oracle::Gen gen(55);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> c(gen.integer(3, 12));
    for (auto& v : c) v = gen.uniform(0, 0.1);
    AlphaSweepReport r = synthetic(c);
    select_plateau(r, gen.uniform(0.001, 0.05));
    EXPECT_LE(r.plateau_lo, r.chosen_alpha);
    EXPECT_GE(r.plateau_hi, r.chosen_alpha);
    EXPECT_GE(r.plateau_lo, r.entries.front().alpha);
    EXPECT_LE(r.plateau_hi, r.entries.back().alpha);
    const bool swept = std::any_of(r.entries.begin(), r.entries.end(),
                                   [&](const auto& e) { return e.alpha == r.chosen_alpha; });
    EXPECT_EQ(swept, !r.chosen_interpolated);
    for (const auto& e : r.entries)
      EXPECT_EQ(e.in_plateau, e.alpha >= r.plateau_lo && e.alpha <= r.plateau_hi);
  }
}

TEST(SweepAlpha, RejectsBadAlphas) {
  const ScalarField u0(16, 16, 0.5);
  const ScalarField phi0 = oracle::circle_field(16, 16, 8, 8, 4);
  EXPECT_THROW(sweep_alpha(u0, phi0, {}, {0.3, 0.5}), Error);
  EXPECT_THROW(sweep_alpha(u0, phi0, {}, {0.3, 0.2, 0.5}), Error);
  EXPECT_THROW(sweep_alpha(u0, phi0, {}, {0.0, 0.2, 0.5}), Error);
  EXPECT_THROW(sweep_alpha(u0, phi0, {}, {0.3, 0.5, 1.2}), Error);
  SweepOptions bad;
  bad.plateau_tol = 0.0;
  EXPECT_THROW(sweep_alpha(u0, phi0, {}, {0.3, 0.5, 0.7}, bad), Error);
}

TEST(SweepAlpha, ConstantImageSpansWholeRange) {
  // A short run keeps every inside region alive; with no structure every
  // alpha leaves the same outside mean.
  const ScalarField u0(32, 32, 0.4);
  const ScalarField phi0 = signed_distance(default_init_shape(32, 32), 32, 32);
  EvolveParams p;
  p.max_iters = 10;
  const AlphaSweepReport r = sweep_alpha(u0, phi0, p, {0.3, 0.5, 0.7, 0.8});
  EXPECT_DOUBLE_EQ(r.plateau_lo, 0.3);
  EXPECT_DOUBLE_EQ(r.plateau_hi, 0.8);
  EXPECT_NEAR(r.chosen_alpha, 0.55, 1e-15);
  EXPECT_TRUE(r.chosen_interpolated);
}

TEST(SweepAlpha, AllDegenerateIsAnError) {
  const ScalarField u0(32, 32, 0.4);
  const ScalarField phi0 = signed_distance(default_init_shape(32, 32), 32, 32);
  EvolveParams p;
  p.max_iters = 3000;
  try {
    sweep_alpha(u0, phi0, p, {0.3, 0.5, 0.7});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("alpha=0.3000"), std::string::npos);
    EXPECT_NE(msg.find("alpha=0.7000"), std::string::npos);
  }
}

TEST(SweepAlpha, SeparatedPhantomThreeAlphas) {
  const Phantom ph = default_separated();
  const ScalarField u0 = normalize(ph.image);
  const ScalarField phi0 = signed_distance(default_init_shape(192, 160), 192, 160);
  SweepOptions opts;
  opts.threads = 0;
  const AlphaSweepReport r = sweep_alpha(u0, phi0, {}, {0.3, 0.7, 0.9}, opts);
  ASSERT_EQ(r.entries.size(), 3u);
  ASSERT_EQ(r.runs.size(), 3u);
  EXPECT_LE(oracle::overlap(r.runs[1].mask, ph.noise_mask), 0.05);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(r.entries[k].inside_area, r.runs[k].mask.count());
    EXPECT_DOUBLE_EQ(r.entries[k].c_out, r.runs[k].stats_final.c2);
  }

  // The chosen alpha's leakage is no worse than the best swept run + 2%.
  double best = 1.0;
  for (const auto& run : r.runs) best = std::min(best, oracle::overlap(run.mask, ph.noise_mask));
  EvolveParams p;
  p.alpha = r.chosen_alpha;
  const SegmentationResult chosen = evolve(ModelKind::kModified, u0, phi0, p);
  EXPECT_LE(oracle::overlap(chosen.mask, ph.noise_mask), best + 0.02);

  // Thread count does not change the report.
  opts.threads = 1;
  const AlphaSweepReport serial = sweep_alpha(u0, phi0, {}, {0.3, 0.7, 0.9}, opts);
  EXPECT_EQ(sweep_csv(serial), sweep_csv(r));
}

TEST(SweepReport, Serialization) {
  AlphaSweepReport r = synthetic({0.10, 0.11, 0.5});
  r.entries[0].inside_area = 12;
  r.entries[0].energy_final = 3.5;
  select_plateau(r, 0.02);
  const std::string csv = sweep_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "alpha,c_out,inside_area,energy_final,in_plateau");
  EXPECT_NE(csv.find("\n0.100000,0.1000000000,12,3.5000000000e+00,1\n"), std::string::npos);
  EXPECT_EQ(sweep_summary_json(r),
            "{\"chosen_alpha\":0.150000,\"plateau_lo\":0.100000,\"plateau_hi\":0.200000}");
}
