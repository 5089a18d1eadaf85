#pragma once

#include <cstdint>
#include <vector>

#include "gw/boxes.hpp"
#include "gw/image.hpp"

namespace gw {

struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Square structuring element of odd side length >= 3.
class StructuringElement {
 public:
  explicit StructuringElement(int size = 5);
  int size() const noexcept { return size_; }
  int radius() const noexcept { return size_ / 2; }

 private:
  int size_;
};

struct Contour {
  std::vector<Point> points;  // outer boundary, clockwise on screen
  BoundingBox bbox;
  std::int64_t area = 0;      // pixel count of the component
};

// 1 where value > threshold.
BinaryMask binarize(const GrayFrame& gframe, std::uint8_t threshold);

// Outside the raster counts as background while dilating and as foreground
// while eroding, so the result always contains the input.
BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se);
BinaryMask erode(const BinaryMask& mask, const StructuringElement& se);
BinaryMask close(const BinaryMask& mask, const StructuringElement& se);

// One contour per 8-connected component, ordered by (bbox.y, bbox.x). Tracing
// starts at the component's top-most, then left-most pixel.
std::vector<Contour> trace_contours(const BinaryMask& mask);

std::vector<Contour> filter_small(std::vector<Contour> contours, double min_area);

}  // namespace gw
