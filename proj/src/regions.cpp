#include "gw/regions.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "gw/disjoint_set.hpp"
#include "gw/error.hpp"

namespace gw {

StructuringElement::StructuringElement(int size) : size_(size) {
  if (size < 3 || size % 2 == 0) {
    throw ConfigError("structuring element size must be odd and >= 3, got " + std::to_string(size));
  }
}

BinaryMask binarize(const GrayFrame& gframe, std::uint8_t threshold) {
  BinaryMask out(gframe.width(), gframe.height());
  for (std::size_t i = 0; i < gframe.size(); ++i) out.set(i, gframe.get(i) > threshold);
  return out;
}

namespace {

// Separable square-window pass. `any` selects dilation (OR over in-bounds
// neighbours) versus erosion (AND over in-bounds neighbours).
BinaryMask window_pass(const BinaryMask& in, int radius, bool any) {
  const int w = in.width();
  const int h = in.height();
  BinaryMask rows(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int x0 = std::max(0, x - radius);
      const int x1 = std::min(w - 1, x + radius);
      bool acc = !any;
      for (int xx = x0; xx <= x1; ++xx) {
        if (in.get(xx, y) == any) {
          acc = any;
          break;
        }
      }
      rows.set(x, y, acc);
    }
  }
  BinaryMask out(w, h);
  for (int y = 0; y < h; ++y) {
    const int y0 = std::max(0, y - radius);
    const int y1 = std::min(h - 1, y + radius);
    for (int x = 0; x < w; ++x) {
      bool acc = !any;
      for (int yy = y0; yy <= y1; ++yy) {
        if (rows.get(x, yy) == any) {
          acc = any;
          break;
        }
      }
      out.set(x, y, acc);
    }
  }
  return out;
}

}  // namespace

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se) {
  return window_pass(mask, se.radius(), true);
}

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se) {
  return window_pass(mask, se.radius(), false);
}

BinaryMask close(const BinaryMask& mask, const StructuringElement& se) {
  return erode(dilate(mask, se), se);
}

namespace {

// Neighbour offsets, clockwise on screen (y grows downwards) starting east.
constexpr std::array<int, 8> kDx{1, 1, 0, -1, -1, -1, 0, 1};
constexpr std::array<int, 8> kDy{0, 1, 1, 1, 0, -1, -1, -1};
constexpr int kWest = 4;

int direction_to(Point from, Point to) {
  for (int d = 0; d < 8; ++d) {
    if (from.x + kDx[d] == to.x && from.y + kDy[d] == to.y) return d;
  }
  return -1;
}

// Border following of the outer boundary. `start` must be the top-most,
// left-most pixel of its component, so its west neighbour is background.
std::vector<Point> trace_outer(const BinaryMask& mask, Point start) {
  const auto set = [&](int x, int y) {
    return x >= 0 && y >= 0 && x < mask.width() && y < mask.height() && mask.get(x, y);
  };

  // Predecessor of `start` along the clockwise trace: first set neighbour
  // found sweeping counter-clockwise from west.
  Point last{-1, -1};
  for (int k = 0; k < 8; ++k) {
    const int d = (kWest - k + 8) % 8;
    if (set(start.x + kDx[d], start.y + kDy[d])) {
      last = {start.x + kDx[d], start.y + kDy[d]};
      break;
    }
  }
  if (last.x < 0) return {start};

  std::vector<Point> points;
  Point prev = last;
  Point cur = start;
  for (;;) {
    // Sweep clockwise around `cur`, beginning just after `prev`.
    const int from = direction_to(cur, prev);
    Point next = prev;
    for (int k = 1; k <= 8; ++k) {
      const int d = (from + k) % 8;
      if (set(cur.x + kDx[d], cur.y + kDy[d])) {
        next = {cur.x + kDx[d], cur.y + kDy[d]};
        break;
      }
    }
    points.push_back(cur);
    if (next == start && cur == last) break;
    prev = cur;
    cur = next;
  }
  return points;
}

}  // namespace

std::vector<Contour> trace_contours(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  // Two-pass labelling with union-find over provisional labels.
  std::vector<std::size_t> labels(mask.size(), kNone);
  DisjointSet sets;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.get(x, y)) continue;
      std::size_t label = kNone;
      // Already-visited 8-neighbours: W, NW, N, NE.
      constexpr std::array<std::array<int, 2>, 4> kPrior{{{-1, 0}, {-1, -1}, {0, -1}, {1, -1}}};
      for (const auto& [dx, dy] : kPrior) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= w) continue;
        const std::size_t nl = labels[static_cast<std::size_t>(ny) * w + nx];
        if (nl == kNone) continue;
        if (label == kNone) {
          label = nl;
        } else {
          sets.unite(label, nl);
        }
      }
      if (label == kNone) label = sets.add();
      labels[static_cast<std::size_t>(y) * w + x] = label;
    }
  }

  struct Component {
    Point start;
    std::int64_t area = 0;
    int x0, y0, x1, y1;
  };
  std::vector<std::size_t> root_to_component(sets.size(), kNone);
  std::vector<Component> comps;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t label = labels[static_cast<std::size_t>(y) * w + x];
      if (label == kNone) continue;
      const std::size_t root = sets.find(label);
      if (root_to_component[root] == kNone) {
        root_to_component[root] = comps.size();
        comps.push_back({{x, y}, 0, x, y, x, y});
      }
      Component& c = comps[root_to_component[root]];
      ++c.area;
      c.x0 = std::min(c.x0, x);
      c.x1 = std::max(c.x1, x);
      c.y1 = std::max(c.y1, y);
    }
  }

  std::vector<Contour> contours;
  contours.reserve(comps.size());
  for (const Component& c : comps) {
    Contour contour;
    contour.points = trace_outer(mask, c.start);
    contour.bbox = {c.x0, c.y0, c.x1 - c.x0 + 1, c.y1 - c.y0 + 1};
    contour.area = c.area;
    contours.push_back(std::move(contour));
  }
  std::stable_sort(contours.begin(), contours.end(), [](const Contour& a, const Contour& b) {
    if (a.bbox.y != b.bbox.y) return a.bbox.y < b.bbox.y;
    return a.bbox.x < b.bbox.x;
  });
  return contours;
}

std::vector<Contour> filter_small(std::vector<Contour> contours, double min_area) {
  if (!(min_area >= 0.0)) throw ConfigError("min_area must be >= 0");
  std::erase_if(contours, [min_area](const Contour& c) { return static_cast<double>(c.area) < min_area; });
  return contours;
}

}  // namespace gw
