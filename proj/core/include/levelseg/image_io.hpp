#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levelseg/levelset.hpp"
#include "levelseg/scalar_field.hpp"

namespace levelseg {

/// Grayscale image as stored on disk.
struct GrayImage {
  int width = 0;
  int height = 0;
  int max_value = 255;  // 255 or up to 65535 for 16-bit PGM
  std::vector<std::uint16_t> pixels;
};

struct LoadedImage {
  ScalarField field;      // normalized to [0, 1]
  ScalarField raw;        // original sample values
  bool constant = false;  // every pixel equal; field is all zeros
};

/// Reads P2/P5 PGM (8- or 16-bit) or 8-bit grayscale PNG. Color or alpha PNGs
/// are rejected.
GrayImage read_gray(const std::string& path);

/// read_gray followed by min/max normalization.
LoadedImage read_image(const std::string& path);

/// Maps [min, max] to [0, 1]. A constant field maps to zeros and sets
/// `*constant` when given.
ScalarField normalize(const ScalarField& raw, bool* constant = nullptr);

/// 8-bit binary PGM of a field in [0, 1] (values clamped, scaled by 255).
void write_pgm(const std::string& path, const ScalarField& normalized);

/// 8-bit binary PGM of raw values, clamped to [0, 255] and rounded.
void write_raw_pgm(const std::string& path, const ScalarField& raw);

/// Mask as 8-bit PGM with 255 for members and 0 elsewhere.
void write_mask_pgm(const std::string& path, const Mask& mask);

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel
};

inline constexpr std::uint8_t kOverlayColor[3] = {255, 32, 32};

/// Grayscale rendering of `image` (normalized internally) with the contour
/// drawn on top in kOverlayColor.
RgbImage render_overlay(const ScalarField& image, const Contour& contour);
void write_png(const std::string& path, const RgbImage& image);

/// CRC-32 of a file's bytes.
std::uint32_t file_crc32(const std::string& path);

}  // namespace levelseg
