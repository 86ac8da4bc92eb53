#include "levelseg/phantom.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "json.hpp"
#include "levelseg/image_io.hpp"

namespace levelseg {

namespace {

class NoiseSource {
 public:
  NoiseSource(std::uint64_t seed, double sigma) : rng_(seed), sigma_(sigma) {}

  double next() {
    if (sigma_ <= 0.0) return 0.0;
    while (true) {
      const double z = normal_(rng_);
      if (std::abs(z) <= 5.0) return sigma_ * z;
    }
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  double sigma_;
};

// 1 inside the blob, linear decay to 0 over `edge` px outside it.
double falloff(const Blob& b, double x, double y, double edge) {
  const double d = std::hypot(x - b.cx, y - b.cy);
  if (d <= b.radius) return 1.0;
  if (edge <= 0.0 || d >= b.radius + edge) return 0.0;
  return 1.0 - (d - b.radius) / edge;
}

bool inside(const Blob& b, double x, double y) {
  return std::hypot(x - b.cx, y - b.cy) <= b.radius;
}

void add_noise(Phantom& p, double sigma) {
  NoiseSource noise(p.seed, sigma);
  for (std::size_t i = 0; i < p.image.size(); ++i) p.image[i] += noise.next();
}

void check_dims(int width, int height) {
  if (width < 3 || height < 3) throw Error("phantom must be at least 3x3");
}

}  // namespace

Phantom make_disk(int width, int height, double cx, double cy, double radius,
                  double inside_level, double outside_level, double noise_sigma,
                  std::uint64_t seed) {
  check_dims(width, height);
  if (!(radius > 0.0) || cx - radius < 2.0 || cy - radius < 2.0 ||
      cx + radius > width - 3.0 || cy + radius > height - 3.0) {
    throw Error("make_disk: disk must fit inside the image with a 2 px margin");
  }
  if (inside_level == outside_level) {
    throw Error("make_disk: inside and outside levels must differ");
  }
  if (noise_sigma < 0.0) throw Error("make_disk: noise sigma must be >= 0");

  Phantom p;
  p.image = ScalarField(width, height, outside_level);
  p.truth_mask = Mask(width, height);
  p.noise_mask = Mask(width, height);
  p.seed = seed;
  p.descriptor = "disk";
  p.levels = {outside_level, inside_level};
  p.noise_sigma = noise_sigma;
  const Blob disk{cx, cy, radius, inside_level};
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (inside(disk, x, y)) {
        p.image(x, y) = inside_level;
        p.truth_mask.bits[p.image.index(x, y)] = 1;
      }
    }
  }
  add_noise(p, noise_sigma);
  return p;
}

Phantom make_separated(int width, int height, const Blob& storm,
                       const Blob& noise, double background_level,
                       double noise_sigma, std::uint64_t seed,
                       double edge_width) {
  check_dims(width, height);
  if (!(storm.radius > 0.0) || !(noise.radius > 0.0)) {
    throw Error("make_separated: blob radii must be positive");
  }
  const double gap = std::hypot(storm.cx - noise.cx, storm.cy - noise.cy) -
                     storm.radius - noise.radius;
  if (gap < kMinBlobGap) {
    throw Error("make_separated: storm and noise blobs must be at least " +
                std::to_string(kMinBlobGap) + " px apart (gap " +
                std::to_string(gap) + ")");
  }
  if (edge_width < 0.0 || noise_sigma < 0.0) {
    throw Error("make_separated: edge width and sigma must be >= 0");
  }

  Phantom p;
  p.image = ScalarField(width, height, background_level);
  p.truth_mask = Mask(width, height);
  p.noise_mask = Mask(width, height);
  p.seed = seed;
  p.descriptor = "separated";
  p.levels = {background_level, noise.level, storm.level};
  p.noise_sigma = noise_sigma;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = p.image.index(x, y);
      const double fs = falloff(storm, x, y, edge_width);
      const double fn = falloff(noise, x, y, edge_width);
      p.image[i] = background_level + (storm.level - background_level) * fs +
                   (noise.level - background_level) * fn;
      p.truth_mask.bits[i] = inside(storm, x, y);
      p.noise_mask.bits[i] = inside(noise, x, y);
    }
  }
  add_noise(p, noise_sigma);
  return p;
}

Phantom make_embedded(int width, int height, const Blob& storm,
                      const Blob& noise, double background_level,
                      double noise_sigma, std::uint64_t seed,
                      double edge_width) {
  check_dims(width, height);
  if (!(storm.radius > 0.0) || !(noise.radius > 0.0)) {
    throw Error("make_embedded: blob radii must be positive");
  }
  if (std::hypot(storm.cx - noise.cx, storm.cy - noise.cy) + noise.radius >=
      storm.radius) {
    throw Error("make_embedded: noise blob must lie strictly inside the storm");
  }
  if (edge_width < 0.0 || noise_sigma < 0.0) {
    throw Error("make_embedded: edge width and sigma must be >= 0");
  }

  Phantom p;
  p.image = ScalarField(width, height, background_level);
  p.truth_mask = Mask(width, height);
  p.noise_mask = Mask(width, height);
  p.seed = seed;
  p.descriptor = "embedded";
  p.levels = {background_level, noise.level, storm.level};
  p.noise_sigma = noise_sigma;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = p.image.index(x, y);
      if (inside(noise, x, y)) {
        p.image[i] = noise.level;
        p.noise_mask.bits[i] = 1;
        continue;
      }
      const double fs = falloff(storm, x, y, edge_width);
      p.image[i] = background_level + (storm.level - background_level) * fs;
      p.truth_mask.bits[i] = inside(storm, x, y);
    }
  }
  add_noise(p, noise_sigma);
  return p;
}

Phantom default_separated(std::uint64_t seed, double noise_sigma) {
  using namespace fixture;
  return make_separated(192, 160, Blob{120.0, 100.0, 20.0, kStormLevel},
                        Blob{0.0, 0.0, 80.0, kNoiseLevel}, kBackgroundLevel,
                        noise_sigma, seed);
}

Phantom default_embedded(std::uint64_t seed, double noise_sigma) {
  using namespace fixture;
  return make_embedded(160, 160, Blob{80.0, 80.0, 40.0, kStormLevel},
                       Blob{72.0, 84.0, 8.0, kNoiseLevel}, kBackgroundLevel,
                       noise_sigma, seed);
}

Phantom default_disk(std::uint64_t seed, double noise_sigma) {
  return make_disk(128, 128, 64.0, 64.0, 30.0, 200.0, 50.0, noise_sigma, seed);
}

std::uint64_t default_seed(const std::string& name) {
  if (name == "disk") return fixture::kDiskSeed;
  if (name == "separated") return fixture::kSeparatedSeed;
  if (name == "embedded") return fixture::kEmbeddedSeed;
  throw Error("unknown phantom '" + name + "' (disk|separated|embedded)");
}

Phantom make_named_phantom(const std::string& name, std::uint64_t seed) {
  if (name == "disk") return default_disk(seed);
  if (name == "separated") return default_separated(seed);
  if (name == "embedded") return default_embedded(seed);
  throw Error("unknown phantom '" + name + "' (disk|separated|embedded)");
}

std::vector<std::string> export_phantom(const Phantom& phantom,
                                        const std::string& directory,
                                        const std::string& stem) {
  namespace fs = std::filesystem;
  const fs::path dir(directory);
  const std::string image_name = stem + ".pgm";
  const std::string truth_name = stem + "_truth.pgm";
  const std::string noise_name = stem + "_noise.pgm";
  const std::string sidecar_name = stem + ".json";

  write_raw_pgm((dir / image_name).string(), phantom.image);
  write_mask_pgm((dir / truth_name).string(), phantom.truth_mask);
  write_mask_pgm((dir / noise_name).string(), phantom.noise_mask);

  nlohmann::ordered_json j;
  j["descriptor"] = phantom.descriptor;
  j["seed"] = phantom.seed;
  j["levels"] = phantom.levels;
  j["noise_sigma"] = phantom.noise_sigma;
  j["width"] = phantom.image.width();
  j["height"] = phantom.image.height();
  j["image"] = image_name;
  j["truth_mask"] = truth_name;
  j["noise_mask"] = noise_name;
  std::ofstream out(dir / sidecar_name);
  if (!out) throw Error("export_phantom: cannot write " + sidecar_name);
  out << j.dump(2) << '\n';

  return {(dir / image_name).string(), (dir / truth_name).string(),
          (dir / noise_name).string(), (dir / sidecar_name).string()};
}

}  // namespace levelseg
