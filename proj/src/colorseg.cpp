#include "gw/colorseg.hpp"

#include <algorithm>
#include <cmath>

#include "gw/error.hpp"

namespace gw {

Hsv rgb_to_hsv(Rgb pixel) noexcept {
  const int r = pixel.r, g = pixel.g, b = pixel.b;
  const int mx = std::max({r, g, b});
  const int mn = std::min({r, g, b});
  const int chroma = mx - mn;
  Hsv out;
  out.v = mx / 255.0;
  out.s = mx == 0 ? 0.0 : static_cast<double>(chroma) / mx;
  if (chroma == 0) return out;
  double h;
  if (mx == r) {
    h = 60.0 * (g - b) / chroma;
  } else if (mx == g) {
    h = 60.0 * (b - r) / chroma + 120.0;
  } else {
    h = 60.0 * (r - g) / chroma + 240.0;
  }
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  out.h = h;
  return out;
}

Rgb hsv_to_rgb(const Hsv& hsv) noexcept {
  const double c = hsv.v * hsv.s;
  double hp = std::fmod(hsv.h, 360.0);
  if (hp < 0.0) hp += 360.0;
  hp /= 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r1 = 0, g1 = 0, b1 = 0;
  switch (static_cast<int>(hp)) {
    case 0: r1 = c; g1 = x; break;
    case 1: r1 = x; g1 = c; break;
    case 2: g1 = c; b1 = x; break;
    case 3: g1 = x; b1 = c; break;
    case 4: r1 = x; b1 = c; break;
    default: r1 = c; b1 = x; break;
  }
  const double m = hsv.v - c;
  auto to8 = [m](double ch) {
    return static_cast<std::uint8_t>(std::clamp(std::lround((ch + m) * 255.0), 0L, 255L));
  };
  return {to8(r1), to8(g1), to8(b1)};
}

bool ColorBand::contains(const Hsv& hsv) const noexcept {
  if (hsv.s < sat_min || hsv.v < val_min) return false;
  return std::any_of(hue_ranges.begin(), hue_ranges.end(),
                     [&](const HueRange& r) { return r.contains(hsv.h); });
}

void ColorBand::validate() const {
  if (label.empty()) throw ConfigError("color band needs a label");
  if (hue_ranges.empty() || hue_ranges.size() > 2) {
    throw ConfigError("band " + label + ": expected one or two hue ranges");
  }
  for (const auto& r : hue_ranges) {
    if (!(r.lo >= 0.0 && r.lo < 360.0 && r.hi > r.lo && r.hi <= 360.0)) {
      throw ConfigError("band " + label + ": hue range must satisfy 0 <= lo < hi <= 360");
    }
  }
  if (!(sat_min >= 0.0 && sat_min <= 1.0)) throw ConfigError("band " + label + ": sat_min outside [0,1]");
  if (!(val_min >= 0.0 && val_min <= 1.0)) throw ConfigError("band " + label + ": val_min outside [0,1]");
}

Rgb ColorBand::display_color() const noexcept {
  const double h = hue_ranges.empty() ? 0.0 : 0.5 * (hue_ranges.front().lo + hue_ranges.front().hi);
  return hsv_to_rgb({h, 1.0, 1.0});
}

std::vector<ColorBand> default_color_bands() {
  return {
      {"Red", {{0.0, 10.0}, {350.0, 360.0}}, 0.30, 0.20},
      {"Yellow", {{40.0, 70.0}}, 0.30, 0.20},
      {"Green", {{70.0, 170.0}}, 0.30, 0.20},
      {"Blue", {{170.0, 260.0}}, 0.30, 0.20},
  };
}

BinaryMask color_mask(const Frame& fframe, const ColorBand& band) {
  BinaryMask mask(fframe.width(), fframe.height());
  for (std::size_t i = 0; i < fframe.pixel_count(); ++i) {
    const Rgb px = fframe.at(i);
    if (px.r == 0 && px.g == 0 && px.b == 0) continue;
    if (band.contains(rgb_to_hsv(px))) mask.set(i, true);
  }
  return mask;
}

std::uint8_t luma(Rgb pixel) noexcept {
  // Exact in integers: round(0.299R + 0.587G + 0.114B), halves rounded up.
  return static_cast<std::uint8_t>((299 * pixel.r + 587 * pixel.g + 114 * pixel.b + 500) / 1000);
}

GrayFrame masked_to_gray(const Frame& fframe, const BinaryMask& mask) {
  if (fframe.width() != mask.width() || fframe.height() != mask.height()) {
    throw ShapeError("mask dimensions do not match frame");
  }
  GrayFrame out(fframe.width(), fframe.height());
  for (std::size_t i = 0; i < fframe.pixel_count(); ++i) {
    if (mask.get(i)) out.set(i, luma(fframe.at(i)));
  }
  return out;
}

}  // namespace gw
