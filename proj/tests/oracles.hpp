#pragma once

// Independent reference implementations the library is checked against.
// Deliberately naive: brute-force windows, flood fill, pixel counting.

#include <algorithm>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "gw/boxes.hpp"
#include "gw/image.hpp"

namespace gw::testing {

// Straight-line reference for one pixel, written from the update rules
// rather than from the library code: plain arrays, explicit steps.
struct ReferencePixel {
  static constexpr int kMax = 8;
  int n = 1;
  double w[kMax] = {1.0};
  double mr[kMax] = {0.0}, mg[kMax] = {0.0}, mb[kMax] = {0.0};
  double var[kMax] = {225.0};
};

inline bool reference_step(ReferencePixel& p, double r, double g, double b, double eta, double k, double cf,
                           int max_comp, double var_init, double var_min, double var_max, double w_init) {
  // Background prefix.
  int nb = p.n;
  double acc = 0.0;
  for (int i = 0; i < p.n; ++i) {
    acc = acc + p.w[i];
    if (acc > 1.0 - cf) {
      nb = i + 1;
      break;
    }
  }
  // Matching.
  bool fg = true;
  int hit = -1;
  double hit_d = 1e300;
  for (int i = 0; i < p.n; ++i) {
    const double dr = r - p.mr[i], dg = g - p.mg[i], db = b - p.mb[i];
    const double d2 = dr * dr + dg * dg + db * db;
    if (d2 <= k * k * p.var[i] * 3.0) {
      if (i < nb) fg = false;
      if (d2 / p.var[i] < hit_d) {
        hit_d = d2 / p.var[i];
        hit = i;
      }
    }
  }
  if (hit >= 0) {
    for (int i = 0; i < p.n; ++i) {
      if (i == hit) {
        p.w[i] = p.w[i] + eta * (1.0 - p.w[i]);
      } else {
        p.w[i] = (1.0 - eta) * p.w[i];
      }
    }
    const double rho = eta / p.w[hit];
    const double dr = r - p.mr[hit], dg = g - p.mg[hit], db = b - p.mb[hit];
    const double d2 = dr * dr + dg * dg + db * db;
    p.mr[hit] = p.mr[hit] + rho * dr;
    p.mg[hit] = p.mg[hit] + rho * dg;
    p.mb[hit] = p.mb[hit] + rho * db;
    double v = p.var[hit] + rho * (d2 / 3.0 - p.var[hit]);
    if (v < var_min) v = var_min;
    if (v > var_max) v = var_max;
    p.var[hit] = v;
  } else {
    for (int i = 0; i < p.n; ++i) p.w[i] = (1.0 - eta) * p.w[i];
    int slot = p.n < max_comp ? p.n++ : p.n - 1;
    p.w[slot] = w_init;
    p.mr[slot] = r;
    p.mg[slot] = g;
    p.mb[slot] = b;
    p.var[slot] = var_init;
  }
  double total = 0.0;
  for (int i = 0; i < p.n; ++i) total = total + p.w[i];
  for (int i = 0; i < p.n; ++i) p.w[i] = p.w[i] / total;
  // Stable insertion sort, descending weight.
  for (int i = 1; i < p.n; ++i) {
    int j = i;
    while (j > 0 && p.w[j - 1] < p.w[j]) {
      std::swap(p.w[j - 1], p.w[j]);
      std::swap(p.mr[j - 1], p.mr[j]);
      std::swap(p.mg[j - 1], p.mg[j]);
      std::swap(p.mb[j - 1], p.mb[j]);
      std::swap(p.var[j - 1], p.var[j]);
      --j;
    }
  }
  return fg;
}

// Steady level, a jump, a return, a third and fourth level to force
// replacement, plus small jitter to exercise the variance update.
inline constexpr int kPixelScript[20][3] = {
    {100, 100, 100}, {102, 99, 101}, {100, 100, 100}, {98, 101, 100}, {200, 40, 40},
    {201, 42, 38},   {100, 100, 100}, {101, 100, 99}, {20, 220, 60},  {100, 100, 100},
    {22, 218, 61},   {240, 240, 10},  {100, 100, 100}, {99, 102, 100}, {100, 100, 100},
    {0, 0, 0},       {5, 3, 2},       {100, 100, 100}, {201, 41, 40},  {100, 101, 100}};

// Brute-force square-window closing: dilation treats outside pixels as
// background, erosion ignores them.
inline BinaryMask reference_close(const BinaryMask& m, int r) {
  const int w = m.width(), h = m.height();
  BinaryMask d(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      bool any = false;
      for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
          const int xx = x + dx, yy = y + dy;
          if (xx >= 0 && yy >= 0 && xx < w && yy < h && m.get(xx, yy)) any = true;
        }
      d.set(x, y, any);
    }
  BinaryMask e(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      bool all = true;
      for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
          const int xx = x + dx, yy = y + dy;
          if (xx >= 0 && yy >= 0 && xx < w && yy < h && !d.get(xx, yy)) all = false;
        }
      e.set(x, y, all);
    }
  return e;
}

// Breadth-first 8-connected flood fill: component sizes in discovery order.
inline std::vector<std::int64_t> flood_fill_areas(const BinaryMask& m) {
  std::vector<bool> seen(m.size(), false);
  std::vector<std::int64_t> areas;
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) {
      if (!m.get(x, y) || seen[y * m.width() + x]) continue;
      std::int64_t n = 0;
      std::queue<std::pair<int, int>> q;
      q.push({x, y});
      seen[y * m.width() + x] = true;
      while (!q.empty()) {
        auto [cx, cy] = q.front();
        q.pop();
        ++n;
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= m.width() || ny >= m.height()) continue;
            if (!m.get(nx, ny) || seen[ny * m.width() + nx]) continue;
            seen[ny * m.width() + nx] = true;
            q.push({nx, ny});
          }
      }
      areas.push_back(n);
    }
  return areas;
}

inline double raster_iou(const BoundingBox& a, const BoundingBox& b) {
  const int x0 = std::min(a.x, b.x), x1 = std::max(a.right(), b.right());
  const int y0 = std::min(a.y, b.y), y1 = std::max(a.bottom(), b.bottom());
  std::int64_t inter = 0, uni = 0;
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) {
      const bool ia = x >= a.x && x < a.right() && y >= a.y && y < a.bottom();
      const bool ib = x >= b.x && x < b.right() && y >= b.y && y < b.bottom();
      inter += ia && ib;
      uni += ia || ib;
    }
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace gw::testing
