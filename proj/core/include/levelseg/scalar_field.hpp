#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace levelseg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row-major grid of real values on a uniform grid with step `spacing`.
///
/// Holds both images and level-set functions. Construction enforces the
/// shape invariants (at least 3x3, data size matches); finiteness is checked
/// by the operations that depend on it via `require_finite`.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(int width, int height, double fill = 0.0, double spacing = 1.0);
  ScalarField(int width, int height, std::vector<double> data,
              double spacing = 1.0);

  int width() const { return width_; }
  int height() const { return height_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(int x, int y) { return data_[index(x, y)]; }
  double operator()(int x, int y) const { return data_[index(x, y)]; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  /// Value with indices clamped into the grid (mirror ghost cells).
  double clamped(int x, int y) const;

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  double min() const;
  double max() const;
  double mean() const;
  bool all_finite() const;
  bool same_shape(const ScalarField& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  /// Throws `Error` naming `what` if any value is NaN or infinite.
  void require_finite(const char* what) const;

  ScalarField operator-() const;
  friend bool operator==(const ScalarField&, const ScalarField&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  double spacing_ = 1.0;
  std::vector<double> data_;
};

/// Per-pixel (dx, dy) pairs, same layout as the source field.
struct VectorField {
  int width = 0;
  int height = 0;
  std::vector<double> dx;
  std::vector<double> dy;
};

/// Binary per-pixel mask; 1 marks membership.
struct Mask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  Mask() = default;
  Mask(int w, int h, bool fill = false)
      : width(w), height(h),
        bits(static_cast<std::size_t>(w) * static_cast<std::size_t>(h),
             fill ? 1 : 0) {}

  bool operator()(int x, int y) const {
    return bits[static_cast<std::size_t>(y) * width + x] != 0;
  }
  std::size_t count() const;
  friend bool operator==(const Mask&, const Mask&) = default;
};

/// Number of pixels where two same-shaped masks disagree.
std::size_t mask_difference(const Mask& a, const Mask& b);

/// Throws unless both fields have the same width and height.
void require_same_shape(const ScalarField& a, const ScalarField& b,
                        const char* what);

}  // namespace levelseg
