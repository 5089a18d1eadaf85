#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "gw/image.hpp"

namespace gw {

// Adaptive per-pixel Gaussian mixture background model with isotropic
// covariance, updated online with exponential forgetting over a window of
// `history_length` frames.
struct BackgroundParams {
  int history_length = 500;         // T; learning rate is 1/T
  double match_threshold = 3.0;     // k, in standard deviations
  double background_fraction = 0.1; // c_f: weight mass allowed to be foreground
  int max_components = 5;
  double init_variance = 225.0;
  double min_variance = 4.0;
  double max_variance = 5000.0;
  // Weight of a freshly spawned component; <= 0 means "use the learning rate".
  double init_weight = 0.0;

  double learning_rate() const noexcept { return 1.0 / history_length; }
  double spawn_weight() const noexcept { return init_weight > 0.0 ? init_weight : learning_rate(); }
  // Throws ConfigError when a parameter is out of range.
  void validate() const;

  friend bool operator==(const BackgroundParams&, const BackgroundParams&) = default;
};

struct GaussianComponent {
  double weight = 0.0;
  std::array<double, 3> mean{};
  double variance = 0.0;
};

// Components ordered by descending weight.
struct PixelModel {
  std::vector<GaussianComponent> components;
};

class BackgroundModel {
 public:
  BackgroundModel(int width, int height, BackgroundParams params = {});

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  const BackgroundParams& params() const noexcept { return params_; }
  long frames_seen() const noexcept { return frames_seen_; }

  // Classifies every pixel against the current model, then folds the frame
  // into the model. Returned mask: 1 = foreground.
  BinaryMask update(const Frame& frame);

  // Mixture density sum_m w_m N(x; mu_m, var_m I) at pixel (x, y).
  double likelihood(Rgb value, int x, int y) const;

  const PixelModel& pixel(int x, int y) const;

 private:
  bool update_pixel(PixelModel& model, const std::array<double, 3>& value) const;

  int width_;
  int height_;
  BackgroundParams params_;
  std::vector<PixelModel> pixels_;
  long frames_seen_ = 0;
};

// Output pixel keeps the input where the mask is set, black elsewhere.
Frame apply_mask(const Frame& frame, const BinaryMask& mask);

}  // namespace gw
