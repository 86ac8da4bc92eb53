#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levelseg/scalar_field.hpp"

namespace levelseg {

/// Synthetic test image with ground truth. `image` holds raw (unnormalized)
/// intensities on the 8-bit scale.
struct Phantom {
  ScalarField image;
  Mask truth_mask;  // storm pixels
  Mask noise_mask;  // radar-noise pixels, disjoint from truth_mask
  std::uint64_t seed = 0;
  std::string descriptor;
  std::vector<double> levels;  // declared noiseless intensity levels
  double noise_sigma = 0.0;
};

/// Disk-shaped intensity blob. Blobs may be centred outside the image (a
/// corner-anchored cone is a disk centred on the corner).
struct Blob {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.0;
  double level = 0.0;
};

/// Width of the outward linear falloff on storm and near-radar blobs.
inline constexpr double kDefaultEdgeWidth = 3.0;
/// Minimum clearance between storm and noise blobs in the separated scene.
inline constexpr double kMinBlobGap = 10.0;

/// Fixture values for the standard scenes. The noise level sits below the
/// midpoint between the background and 0.6 of the storm level so that the
/// modified model at alpha = 0.6 separates it from the storm.
namespace fixture {
inline constexpr double kStormLevel = 230.0;
inline constexpr double kNoiseLevel = 70.0;
inline constexpr double kBackgroundLevel = 20.0;
inline constexpr double kNoiseSigma = 5.0;
inline constexpr std::uint64_t kSeparatedSeed = 7;
inline constexpr std::uint64_t kEmbeddedSeed = 11;
inline constexpr std::uint64_t kDiskSeed = 42;
}  // namespace fixture

/// Disk of `inside_level` on `outside_level` plus seeded Gaussian noise
/// (truncated at 5 sigma). Sharp edge; truth_mask is the disk.
Phantom make_disk(int width, int height, double cx, double cy, double radius,
                  double inside_level, double outside_level, double noise_sigma,
                  std::uint64_t seed);

/// Storm blob plus a lower-intensity blob away from it, each with an outward
/// falloff of `edge_width` px (0 for sharp edges). Requires a gap of at least
/// kMinBlobGap between the blobs.
Phantom make_separated(int width, int height, const Blob& storm,
                       const Blob& noise, double background_level,
                       double noise_sigma, std::uint64_t seed,
                       double edge_width = kDefaultEdgeWidth);

/// Storm blob (with outward falloff) containing a sharp-edged lower-intensity
/// blob that lies strictly inside it.
Phantom make_embedded(int width, int height, const Blob& storm,
                      const Blob& noise, double background_level,
                      double noise_sigma, std::uint64_t seed,
                      double edge_width = kDefaultEdgeWidth);

/// 192x160 scene: storm of radius 20 centred at (120, 100), near-radar cone
/// of radius 80 anchored at the top-left corner, background 20, sigma 5.
Phantom default_separated(std::uint64_t seed = fixture::kSeparatedSeed,
                          double noise_sigma = fixture::kNoiseSigma);

/// 160x160 scene: storm of radius 40 at the centre with a radius-8 noise blob
/// embedded at (72, 84).
Phantom default_embedded(std::uint64_t seed = fixture::kEmbeddedSeed,
                         double noise_sigma = fixture::kNoiseSigma);

/// 128x128 disk of radius 30 at the centre, inside 200, outside 50.
Phantom default_disk(std::uint64_t seed = fixture::kDiskSeed,
                     double noise_sigma = 10.0);

/// Builds a default scene by name: "disk", "separated" or "embedded".
Phantom make_named_phantom(const std::string& name, std::uint64_t seed);
std::uint64_t default_seed(const std::string& name);

/// Writes `<stem>.pgm`, `<stem>_truth.pgm`, `<stem>_noise.pgm` and the
/// sidecar `<stem>.json`. Returns the written paths, sidecar last.
std::vector<std::string> export_phantom(const Phantom& phantom,
                                        const std::string& directory,
                                        const std::string& stem);

}  // namespace levelseg
