#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gw {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Interleaved RGB raster, row-major, top-left origin.
class Frame {
 public:
  Frame() = default;
  Frame(int width, int height, long index = 0);
  Frame(int width, int height, long index, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  long index() const noexcept { return index_; }
  void set_index(long index) noexcept { index_ = index; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  Rgb at(int x, int y) const noexcept {
    const std::size_t i = offset(x, y);
    return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
  }
  Rgb at(std::size_t pixel) const noexcept {
    return {pixels_[3 * pixel], pixels_[3 * pixel + 1], pixels_[3 * pixel + 2]};
  }
  void set(int x, int y, Rgb c) noexcept {
    const std::size_t i = offset(x, y);
    pixels_[i] = c.r;
    pixels_[i + 1] = c.g;
    pixels_[i + 2] = c.b;
  }
  void set(std::size_t pixel, Rgb c) noexcept {
    pixels_[3 * pixel] = c.r;
    pixels_[3 * pixel + 1] = c.g;
    pixels_[3 * pixel + 2] = c.b;
  }

  std::span<const std::uint8_t> bytes() const noexcept { return pixels_; }
  std::span<std::uint8_t> bytes() noexcept { return pixels_; }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::size_t offset(int x, int y) const noexcept {
    return 3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                static_cast<std::size_t>(x));
  }

  int width_ = 0;
  int height_ = 0;
  long index_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// One bit per pixel; 1 = set (foreground / in-band). Stored as bytes.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, bool fill = false);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return bits_.size(); }

  bool get(int x, int y) const noexcept {
    return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  bool get(std::size_t pixel) const noexcept { return bits_[pixel] != 0; }
  void set(int x, int y, bool v) noexcept {
    bits_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0;
  }
  void set(std::size_t pixel, bool v) noexcept { bits_[pixel] = v ? 1 : 0; }

  std::size_t count() const noexcept;

  std::span<const std::uint8_t> data() const noexcept { return bits_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

// 8-bit luma raster.
class GrayFrame {
 public:
  GrayFrame() = default;
  GrayFrame(int width, int height, std::uint8_t fill = 0);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::uint8_t get(int x, int y) const noexcept {
    return values_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::uint8_t get(std::size_t pixel) const noexcept { return values_[pixel]; }
  void set(int x, int y, std::uint8_t v) noexcept {
    values_[static_cast<std::size_t>(y) * width_ + x] = v;
  }
  void set(std::size_t pixel, std::uint8_t v) noexcept { values_[pixel] = v; }

  std::span<const std::uint8_t> values() const noexcept { return values_; }

  friend bool operator==(const GrayFrame&, const GrayFrame&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> values_;
};

}  // namespace gw
