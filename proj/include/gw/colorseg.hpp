#pragma once

#include <string>
#include <vector>

#include "gw/image.hpp"

namespace gw {

struct Hsv {
  double h = 0.0;  // degrees, [0, 360)
  double s = 0.0;  // [0, 1]
  double v = 0.0;  // [0, 1]
};

// Hexcone conversion; hue is reported as 0 for achromatic pixels.
Hsv rgb_to_hsv(Rgb pixel) noexcept;
Rgb hsv_to_rgb(const Hsv& hsv) noexcept;

// Half-open hue interval [lo, hi) in degrees.
struct HueRange {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double h) const noexcept { return h >= lo && h < hi; }
  friend bool operator==(const HueRange&, const HueRange&) = default;
};

struct ColorBand {
  std::string label;
  std::vector<HueRange> hue_ranges;  // one or two (wrap-around)
  double sat_min = 0.30;
  double val_min = 0.20;

  bool contains(const Hsv& hsv) const noexcept;
  // Throws ConfigError.
  void validate() const;
  // Fully saturated color at the centre of the first hue range, for drawing.
  Rgb display_color() const noexcept;

  friend bool operator==(const ColorBand&, const ColorBand&) = default;
};

// Red, Yellow, Green, Blue.
std::vector<ColorBand> default_color_bands();

BinaryMask color_mask(const Frame& fframe, const ColorBand& band);

// Rec. 601 luma with round-half-up where the mask is set, 0 elsewhere.
GrayFrame masked_to_gray(const Frame& fframe, const BinaryMask& mask);

std::uint8_t luma(Rgb pixel) noexcept;

}  // namespace gw
