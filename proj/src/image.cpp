#include "gw/image.hpp"

#include <algorithm>

#include "gw/error.hpp"

namespace gw {

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw ShapeError("raster dimensions must be >= 1, got " + std::to_string(width) + "x" +
                     std::to_string(height));
  }
}

}  // namespace

Frame::Frame(int width, int height, long index)
    : width_(width), height_(height), index_(index) {
  check_dims(width, height);
  pixels_.assign(pixel_count() * 3, 0);
}

Frame::Frame(int width, int height, long index, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), index_(index), pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (pixels_.size() != pixel_count() * 3) {
    throw ShapeError("frame buffer holds " + std::to_string(pixels_.size()) + " bytes, expected " +
                     std::to_string(pixel_count() * 3));
  }
}

BinaryMask::BinaryMask(int width, int height, bool fill) : width_(width), height_(height) {
  check_dims(width, height);
  bits_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

GrayFrame::GrayFrame(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
  check_dims(width, height);
  values_.assign(static_cast<std::size_t>(width) * height, fill);
}

}  // namespace gw
