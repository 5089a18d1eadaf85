#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace gw {

// Axis-aligned box covering the grid cells [x, x+w) x [y, y+h).
struct BoundingBox {
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;

  int right() const noexcept { return x + w; }
  int bottom() const noexcept { return y + h; }
  std::int64_t area() const noexcept { return static_cast<std::int64_t>(w) * h; }
  bool fits(int width, int height) const noexcept {
    return x >= 0 && y >= 0 && w >= 1 && h >= 1 && right() <= width && bottom() <= height;
  }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

inline std::int64_t intersection_area(const BoundingBox& a, const BoundingBox& b) noexcept {
  const std::int64_t iw = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const std::int64_t ih = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  return (iw > 0 && ih > 0) ? iw * ih : 0;
}

// Smallest box covering both.
inline BoundingBox box_union(const BoundingBox& a, const BoundingBox& b) noexcept {
  const int x0 = std::min(a.x, b.x);
  const int y0 = std::min(a.y, b.y);
  return {x0, y0, std::max(a.right(), b.right()) - x0, std::max(a.bottom(), b.bottom()) - y0};
}

struct Detection {
  long frame_index = 0;
  BoundingBox box;
  std::string color_label;
  double score = 0.0;  // region area / frame area

  friend bool operator==(const Detection&, const Detection&) = default;
};

struct Annotation {
  long frame_index = 0;
  std::vector<BoundingBox> boxes;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

// Externally supplied person boxes for one frame.
struct PersonBoxes {
  long frame_index = 0;
  std::vector<BoundingBox> boxes;

  friend bool operator==(const PersonBoxes&, const PersonBoxes&) = default;
};

}  // namespace gw
