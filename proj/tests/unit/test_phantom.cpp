#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <set>

#include "json.hpp"
#include "levelseg/phantom.hpp"
#include "oracles.hpp"

using namespace levelseg;

namespace {

double median(std::vector<double> v) {
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  return v[v.size() / 2];
}

bool disjoint(const Phantom& p) {
  for (std::size_t i = 0; i < p.truth_mask.bits.size(); ++i)
    if (p.truth_mask.bits[i] && p.noise_mask.bits[i]) return false;
  return true;
}

std::size_t distinct_values(const ScalarField& f) {
  return std::set<double>(f.values().begin(), f.values().end()).size();
}

}  // namespace

TEST(MakeDisk, NoiselessHasTwoLevels) {
  const Phantom p = make_disk(128, 128, 64, 64, 30, 200, 50, 0, 42);
  EXPECT_EQ(distinct_values(p.image), 2u);
  const double area = std::numbers::pi * 900;
  EXPECT_NEAR(static_cast<double>(p.truth_mask.count()), area, 0.02 * area);
  EXPECT_EQ(p.noise_mask.count(), 0u);
  EXPECT_EQ(p.descriptor, "disk");
  for (std::size_t i = 0; i < p.image.size(); ++i)
    EXPECT_EQ(p.image[i], p.truth_mask.bits[i] ? 200.0 : 50.0);
}

TEST(MakeDisk, NoisyDiskMean) {
  const Phantom p = make_disk(128, 128, 64, 64, 30, 200, 50, 10, 42);
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < p.image.size(); ++i) {
    if (!p.truth_mask.bits[i]) continue;
    sum += p.image[i];
    ++n;
  }
  EXPECT_NEAR(sum / n, 200.0, 1.0);
  EXPECT_GE(p.image.min(), 50.0 - 50.0);
  EXPECT_LE(p.image.max(), 200.0 + 50.0);
}

TEST(MakeDisk, SameSeedSameImage) {
  const Phantom a = make_disk(64, 64, 32, 32, 10, 200, 50, 10, 9);
  const Phantom b = make_disk(64, 64, 32, 32, 10, 200, 50, 10, 9);
  const Phantom c = make_disk(64, 64, 32, 32, 10, 200, 50, 10, 10);
  EXPECT_EQ(a.image, b.image);
  EXPECT_NE(a.image, c.image);
}

TEST(MakeDisk, GeometryErrors) {
  EXPECT_THROW(make_disk(64, 64, 10, 32, 10, 200, 50, 0, 1), Error);
  EXPECT_THROW(make_disk(64, 64, 32, 32, 40, 200, 50, 0, 1), Error);
  EXPECT_THROW(make_disk(64, 64, 32, 32, 10, 50, 50, 0, 1), Error);
  EXPECT_THROW(make_disk(64, 64, 32, 32, 0, 200, 50, 0, 1), Error);
  EXPECT_THROW(make_disk(64, 64, 32, 32, 10, 200, 50, -1, 1), Error);
}

TEST(MakeSeparated, DefaultMaxIntensity) {
  const Phantom p = default_separated();
  EXPECT_GE(p.image.max(), 225.0);
  EXPECT_LE(p.image.max(), 245.0);
}

TEST(MakeSeparated, NoiselessMaxIsStormLevel) {
  const Phantom p = default_separated(fixture::kSeparatedSeed, 0.0);
  EXPECT_EQ(p.image.max(), 230.0);
  const double am = 0.6 * p.image.max();
  EXPECT_GT(am, fixture::kNoiseLevel);
  EXPECT_LT(am, fixture::kStormLevel);
}

TEST(MakeSeparated, MasksAndLevels) {
  const Phantom p = default_separated();
  EXPECT_TRUE(disjoint(p));
  EXPECT_GT(p.truth_mask.count(), 0u);
  EXPECT_GT(p.noise_mask.count(), 0u);
  EXPECT_EQ(p.descriptor, "separated");
  EXPECT_EQ(p.seed, fixture::kSeparatedSeed);
  const double lo = *std::min_element(p.levels.begin(), p.levels.end());
  const double hi = *std::max_element(p.levels.begin(), p.levels.end());
  EXPECT_GE(p.image.min(), lo - 5 * p.noise_sigma);
  EXPECT_LE(p.image.max(), hi + 5 * p.noise_sigma);
  // The near-radar blob sits in a corner.
  EXPECT_TRUE(p.noise_mask(0, 0));
}

TEST(MakeSeparated, TruthPixelsAtStormLevel) {
  const Phantom p = default_separated(1, 0.0);
  for (std::size_t i = 0; i < p.image.size(); ++i) {
    if (p.truth_mask.bits[i]) {
      EXPECT_EQ(p.image[i], fixture::kStormLevel);
    }
    if (p.noise_mask.bits[i]) {
      EXPECT_EQ(p.image[i], fixture::kNoiseLevel);
    }
  }
}

TEST(MakeSeparated, SharpVariantHasDeclaredLevels) {
  const Phantom p = make_separated(96, 80, {60, 50, 12, 230}, {0, 0, 30, 70}, 20, 0, 3, 0.0);
  EXPECT_EQ(distinct_values(p.image), p.levels.size());
}

TEST(MakeSeparated, GapEnforced) {
  EXPECT_THROW(make_separated(96, 80, {50, 40, 15, 230}, {20, 20, 15, 70}, 20, 5, 1), Error);
  EXPECT_THROW(make_separated(96, 80, {50, 40, 15, 230}, {25, 20, 8, 70}, 20, 5, 1), Error);
  EXPECT_NO_THROW(make_separated(96, 80, {60, 50, 12, 230}, {0, 0, 30, 70}, 20, 5, 1));
}

TEST(MakeEmbedded, NoiseInsideStorm) {
  const Phantom p = default_embedded();
  EXPECT_TRUE(disjoint(p));
  EXPECT_GT(p.noise_mask.count(), 0u);
  for (int y = 0; y < 160; ++y) {
    for (int x = 0; x < 160; ++x) {
      if (p.noise_mask(x, y)) {
        EXPECT_LE(std::hypot(x - 80.0, y - 80.0), 40.0);
      }
    }
  }
}

TEST(MakeEmbedded, NoiseDarkerThanSurroundingStorm) {
  const Phantom p = default_embedded();
  std::vector<double> noise, ring;
  for (int y = 0; y < 160; ++y) {
    for (int x = 0; x < 160; ++x) {
      const double d = std::hypot(x - 72.0, y - 84.0);
      if (p.noise_mask(x, y)) noise.push_back(p.image(x, y));
      if (d > 9.0 && d < 14.0 && p.truth_mask(x, y)) ring.push_back(p.image(x, y));
    }
  }
  EXPECT_LT(median(noise), median(ring));
}

TEST(MakeEmbedded, DeterministicAndLevels) {
  EXPECT_EQ(default_embedded().image, default_embedded().image);
  const Phantom sharp =
      make_embedded(100, 100, {50, 50, 30, 230}, {45, 50, 8, 70}, 20, 0, 1, 0.0);
  EXPECT_EQ(distinct_values(sharp.image), 3u);
  const Phantom noiseless = default_embedded(1, 0.0);
  for (std::size_t i = 0; i < noiseless.image.size(); ++i) {
    if (noiseless.truth_mask.bits[i]) {
      EXPECT_EQ(noiseless.image[i], fixture::kStormLevel);
    }
  }
}

TEST(MakeEmbedded, ContainmentEnforced) {
  EXPECT_THROW(make_embedded(100, 100, {50, 50, 20, 230}, {65, 50, 8, 70}, 20, 0, 1), Error);
}

TEST(NamedPhantoms, Lookup) {
  EXPECT_EQ(make_named_phantom("disk", 42).image, default_disk().image);
  EXPECT_EQ(default_seed("embedded"), fixture::kEmbeddedSeed);
  EXPECT_THROW(make_named_phantom("storm", 1), Error);
  EXPECT_THROW(default_seed("storm"), Error);
}

TEST(ExportPhantom, WritesPgmAndSidecar) {
  const auto dir = std::filesystem::temp_directory_path() / "levelseg_phantom_export";
  std::filesystem::create_directories(dir);
  const Phantom p = default_separated();
  const auto files = export_phantom(p, dir.string(), "sep");
  ASSERT_EQ(files.size(), 4u);
  const auto side = nlohmann::json::parse(oracle::slurp(files.back()));
  EXPECT_EQ(side["descriptor"], "separated");
  EXPECT_EQ(side["seed"], fixture::kSeparatedSeed);
  EXPECT_EQ(side["levels"].size(), 3u);
  EXPECT_EQ(side["truth_mask"], "sep_truth.pgm");
  EXPECT_EQ(side["noise_mask"], "sep_noise.pgm");
  const oracle::Pgm truth = oracle::parse_p5(oracle::slurp(dir / "sep_truth.pgm"));
  ASSERT_EQ(truth.width, 192);
  for (std::size_t i = 0; i < truth.pixels.size(); ++i)
    EXPECT_EQ(truth.pixels[i], p.truth_mask.bits[i] ? 255 : 0);
  const oracle::Pgm img = oracle::parse_p5(oracle::slurp(dir / "sep.pgm"));
  for (std::size_t i = 0; i < img.pixels.size(); ++i)
    EXPECT_EQ(img.pixels[i], std::lround(std::clamp(p.image[i], 0.0, 255.0)));
}
