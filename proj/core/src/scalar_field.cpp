#include "levelseg/scalar_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace levelseg {

namespace {

void check_shape(int width, int height) {
  if (width < 3 || height < 3) {
    throw Error("field must be at least 3x3, got " + std::to_string(width) +
                "x" + std::to_string(height));
  }
}

}  // namespace

ScalarField::ScalarField(int width, int height, double fill, double spacing)
    : width_(width), height_(height), spacing_(spacing) {
  check_shape(width, height);
  if (!(spacing > 0.0)) throw Error("grid spacing must be positive");
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

ScalarField::ScalarField(int width, int height, std::vector<double> data,
                         double spacing)
    : width_(width), height_(height), spacing_(spacing),
      data_(std::move(data)) {
  check_shape(width, height);
  if (!(spacing > 0.0)) throw Error("grid spacing must be positive");
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw Error("field data length does not match width x height");
  }
}

double ScalarField::clamped(int x, int y) const {
  x = std::clamp(x, 0, width_ - 1);
  y = std::clamp(y, 0, height_ - 1);
  return data_[index(x, y)];
}

double ScalarField::min() const {
  return *std::min_element(data_.begin(), data_.end());
}

double ScalarField::max() const {
  return *std::max_element(data_.begin(), data_.end());
}

double ScalarField::mean() const {
  return std::accumulate(data_.begin(), data_.end(), 0.0) /
         static_cast<double>(data_.size());
}

bool ScalarField::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

void ScalarField::require_finite(const char* what) const {
  if (!all_finite()) {
    throw Error(std::string(what) + ": field contains non-finite values");
  }
}

ScalarField ScalarField::operator-() const {
  ScalarField out = *this;
  for (double& v : out.data_) v = -v;
  return out;
}

std::size_t Mask::count() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), 1));
}

std::size_t mask_difference(const Mask& a, const Mask& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error("mask_difference: shape mismatch");
  }
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.bits.size(); ++i) n += (a.bits[i] != b.bits[i]);
  return n;
}

void require_same_shape(const ScalarField& a, const ScalarField& b,
                        const char* what) {
  if (!a.same_shape(b)) {
    throw Error(std::string(what) + ": dimension mismatch (" +
                std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                " vs " + std::to_string(b.width()) + "x" +
                std::to_string(b.height()) + ")");
  }
}

}  // namespace levelseg
