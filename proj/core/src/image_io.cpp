#include "levelseg/image_io.hpp"

#include <png.h>
#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>

namespace levelseg {

namespace {

std::vector<unsigned char> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class PgmParser {
 public:
  PgmParser(const std::vector<unsigned char>& bytes, const std::string& path)
      : bytes_(bytes), path_(path) {}

  GrayImage parse() {
    if (bytes_.size() < 2 || bytes_[0] != 'P' ||
        (bytes_[1] != '2' && bytes_[1] != '5')) {
      fail("not a P2/P5 PGM");
    }
    const bool ascii = bytes_[1] == '2';
    pos_ = 2;
    GrayImage img;
    img.width = next_int();
    img.height = next_int();
    img.max_value = next_int();
    if (img.width <= 0 || img.height <= 0) fail("bad dimensions");
    if (img.max_value <= 0 || img.max_value > 65535) fail("bad maxval");
    const std::size_t n =
        static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
    img.pixels.resize(n);
    if (ascii) {
      for (auto& p : img.pixels) p = checked(next_int(), img.max_value);
      return img;
    }
    ++pos_;  // single whitespace after maxval
    const std::size_t bpp = img.max_value > 255 ? 2 : 1;
    if (bytes_.size() < pos_ + n * bpp) fail("truncated pixel data");
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned char* b = &bytes_[pos_ + i * bpp];
      const int v = bpp == 2 ? (b[0] << 8) | b[1] : b[0];
      img.pixels[i] = checked(v, img.max_value);
    }
    return img;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("'" + path_ + "': " + what);
  }

  std::uint16_t checked(int v, int max_value) const {
    if (v < 0 || v > max_value) fail("sample exceeds maxval");
    return static_cast<std::uint16_t>(v);
  }

  void skip_space() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  int next_int() {
    skip_space();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      fail("malformed header or data");
    }
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 1000000000L) fail("number out of range");
      ++pos_;
    }
    return static_cast<int>(v);
  }

  const std::vector<unsigned char>& bytes_;
  std::string path_;
  std::size_t pos_ = 0;
};

GrayImage read_png(const std::string& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw Error("'" + path + "': " + image.message);
  }
  const auto fmt = image.format;
  if (fmt & PNG_FORMAT_FLAG_COLOR) {
    png_image_free(&image);
    throw Error("'" + path + "': color PNG not supported; convert to grayscale");
  }
  if (fmt & PNG_FORMAT_FLAG_ALPHA) {
    png_image_free(&image);
    throw Error("'" + path + "': PNG with alpha channel not supported");
  }
  if (fmt & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw Error("'" + path + "': only 8-bit grayscale PNG is supported");
  }
  image.format = PNG_FORMAT_GRAY;
  std::vector<png_byte> buf(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error("'" + path + "': " + msg);
  }
  GrayImage img;
  img.width = static_cast<int>(image.width);
  img.height = static_cast<int>(image.height);
  img.max_value = 255;
  img.pixels.assign(buf.begin(), buf.end());
  return img;
}

void write_gray8(const std::string& path, int width, int height,
                 const std::vector<std::uint8_t>& px) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(px.data()),
            static_cast<std::streamsize>(px.size()));
  if (!out) throw Error("write failed for '" + path + "'");
}

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
}

}  // namespace

GrayImage read_gray(const std::string& path) {
  const auto bytes = read_bytes(path);
  static constexpr unsigned char kPngMagic[8] = {0x89, 'P',  'N',  'G',
                                                  0x0D, 0x0A, 0x1A, 0x0A};
  GrayImage img;
  if (bytes.size() >= 8 && std::equal(kPngMagic, kPngMagic + 8, bytes.begin())) {
    img = read_png(path);
  } else if (bytes.size() >= 2 && bytes[0] == 'P') {
    if (bytes[1] == '3' || bytes[1] == '6') {
      throw Error("'" + path + "': color PPM not supported; convert to grayscale");
    }
    img = PgmParser(bytes, path).parse();
  } else {
    throw Error("'" + path + "': unrecognized image format (PGM or PNG)");
  }
  if (img.width < 3 || img.height < 3) {
    throw Error("'" + path + "': image must be at least 3x3");
  }
  return img;
}

ScalarField normalize(const ScalarField& raw, bool* constant) {
  raw.require_finite("normalize");
  const double lo = raw.min();
  const double hi = raw.max();
  ScalarField out(raw.width(), raw.height(), 0.0, raw.spacing());
  const bool flat = !(hi > lo);
  if (constant) *constant = flat;
  if (flat) return out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = (raw[i] - lo) / (hi - lo);
  }
  return out;
}

LoadedImage read_image(const std::string& path) {
  const GrayImage img = read_gray(path);
  std::vector<double> data(img.pixels.begin(), img.pixels.end());
  LoadedImage loaded;
  loaded.raw = ScalarField(img.width, img.height, std::move(data));
  loaded.field = normalize(loaded.raw, &loaded.constant);
  return loaded;
}

void write_pgm(const std::string& path, const ScalarField& normalized) {
  std::vector<std::uint8_t> px(normalized.size());
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = to_byte(normalized[i] * 255.0);
  write_gray8(path, normalized.width(), normalized.height(), px);
}

void write_raw_pgm(const std::string& path, const ScalarField& raw) {
  std::vector<std::uint8_t> px(raw.size());
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = to_byte(raw[i]);
  write_gray8(path, raw.width(), raw.height(), px);
}

void write_mask_pgm(const std::string& path, const Mask& mask) {
  std::vector<std::uint8_t> px(mask.bits.size());
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = mask.bits[i] ? 255 : 0;
  write_gray8(path, mask.width, mask.height, px);
}

RgbImage render_overlay(const ScalarField& image, const Contour& contour) {
  const ScalarField u = normalize(image);
  RgbImage out;
  out.width = u.width();
  out.height = u.height();
  out.rgb.resize(u.size() * 3);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const std::uint8_t g = to_byte(u[i] * 255.0);
    out.rgb[3 * i] = out.rgb[3 * i + 1] = out.rgb[3 * i + 2] = g;
  }
  auto plot = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= out.width || y >= out.height) return;
    const std::size_t i = static_cast<std::size_t>(y) * out.width + x;
    std::copy(kOverlayColor, kOverlayColor + 3, &out.rgb[3 * i]);
  };
  auto line = [&](Point a, Point b) {
    int x0 = static_cast<int>(std::lround(a.x));
    int y0 = static_cast<int>(std::lround(a.y));
    const int x1 = static_cast<int>(std::lround(b.x));
    const int y1 = static_cast<int>(std::lround(b.y));
    const int dx = std::abs(x1 - x0);
    const int dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1;
    const int sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
      plot(x0, y0);
      if (x0 == x1 && y0 == y1) break;
      const int e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x0 += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y0 += sy;
      }
    }
  };
  for (const auto& loop : contour.loops) {
    const auto& v = loop.vertices;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) line(v[k], v[k + 1]);
    if (loop.closed && v.size() > 2) line(v.back(), v.front());
    if (v.size() == 1) line(v[0], v[0]);
  }
  return out;
}

void write_png(const std::string& path, const RgbImage& image) {
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);
  png.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&png, path.c_str(), 0, image.rgb.data(), 0,
                               nullptr)) {
    std::string msg = png.message;
    png_image_free(&png);
    throw Error("cannot write PNG '" + path + "': " + msg);
  }
}

std::uint32_t file_crc32(const std::string& path) {
  const auto bytes = read_bytes(path);
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, bytes.data(), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

}  // namespace levelseg
