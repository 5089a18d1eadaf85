#include "gw/bgsub.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gw/error.hpp"

namespace gw {

void BackgroundParams::validate() const {
  if (history_length < 1) throw ConfigError("history_length must be >= 1");
  if (!(match_threshold > 0.0)) throw ConfigError("match_threshold must be > 0");
  if (!(background_fraction > 0.0 && background_fraction < 1.0)) {
    throw ConfigError("background_fraction must lie in (0,1)");
  }
  if (max_components < 1) throw ConfigError("max_components must be >= 1");
  if (!(min_variance > 0.0) || !(max_variance >= min_variance)) {
    throw ConfigError("variance bounds must satisfy 0 < min_variance <= max_variance");
  }
  if (!(init_variance >= min_variance && init_variance <= max_variance)) {
    throw ConfigError("init_variance must lie within [min_variance, max_variance]");
  }
  if (!(init_weight <= 1.0)) throw ConfigError("init_weight must be <= 1");
}

BackgroundModel::BackgroundModel(int width, int height, BackgroundParams params)
    : width_(width), height_(height), params_(params) {
  if (width < 1 || height < 1) {
    throw ConfigError("background model dimensions must be >= 1, got " + std::to_string(width) +
                      "x" + std::to_string(height));
  }
  params_.validate();
  PixelModel seed;
  seed.components.push_back({1.0, {0.0, 0.0, 0.0}, params_.init_variance});
  pixels_.assign(static_cast<std::size_t>(width) * height, seed);
}

const PixelModel& BackgroundModel::pixel(int x, int y) const {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) throw ShapeError("pixel outside model grid");
  return pixels_[static_cast<std::size_t>(y) * width_ + x];
}

namespace {

double squared_distance(const std::array<double, 3>& a, const std::array<double, 3>& b) noexcept {
  const double d0 = a[0] - b[0];
  const double d1 = a[1] - b[1];
  const double d2 = a[2] - b[2];
  return d0 * d0 + d1 * d1 + d2 * d2;
}

}  // namespace

// Returns true when the value is foreground.
bool BackgroundModel::update_pixel(PixelModel& model, const std::array<double, 3>& value) const {
  auto& comps = model.components;
  const double eta = params_.learning_rate();
  const double k2 = params_.match_threshold * params_.match_threshold;

  // Background set: shortest weight-ordered prefix whose mass exceeds 1 - c_f.
  std::size_t background_count = comps.size();
  double mass = 0.0;
  for (std::size_t m = 0; m < comps.size(); ++m) {
    mass += comps[m].weight;
    if (mass > 1.0 - params_.background_fraction) {
      background_count = m + 1;
      break;
    }
  }

  bool foreground = true;
  std::size_t best = comps.size();
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < comps.size(); ++m) {
    const double d2 = squared_distance(value, comps[m].mean);
    if (d2 <= k2 * comps[m].variance * 3.0) {
      if (m < background_count) foreground = false;
      const double score = d2 / comps[m].variance;
      if (score < best_score) {
        best_score = score;
        best = m;
      }
    }
  }

  for (auto& c : comps) c.weight *= (1.0 - eta);

  if (best < comps.size()) {
    GaussianComponent& c = comps[best];
    c.weight += eta;
    const double rho = eta / c.weight;
    const std::array<double, 3> delta{value[0] - c.mean[0], value[1] - c.mean[1], value[2] - c.mean[2]};
    const double d2 = delta[0] * delta[0] + delta[1] * delta[1] + delta[2] * delta[2];
    for (int ch = 0; ch < 3; ++ch) c.mean[ch] += rho * delta[ch];
    c.variance += rho * (d2 / 3.0 - c.variance);
    c.variance = std::clamp(c.variance, params_.min_variance, params_.max_variance);
  } else {
    const GaussianComponent fresh{params_.spawn_weight(), value, params_.init_variance};
    if (comps.size() < static_cast<std::size_t>(params_.max_components)) {
      comps.push_back(fresh);
    } else {
      comps.back() = fresh;
    }
  }

  double total = 0.0;
  for (const auto& c : comps) total += c.weight;
  for (auto& c : comps) c.weight /= total;

  std::stable_sort(comps.begin(), comps.end(),
                   [](const GaussianComponent& a, const GaussianComponent& b) { return a.weight > b.weight; });
  return foreground;
}

BinaryMask BackgroundModel::update(const Frame& frame) {
  if (frame.width() != width_ || frame.height() != height_) {
    throw ShapeError("frame " + std::to_string(frame.width()) + "x" + std::to_string(frame.height()) +
                     " does not match model " + std::to_string(width_) + "x" + std::to_string(height_));
  }
  BinaryMask mask(width_, height_);
  for (std::size_t i = 0; i < pixels_.size(); ++i) {
    const Rgb px = frame.at(i);
    const std::array<double, 3> value{double(px.r), double(px.g), double(px.b)};
    mask.set(i, update_pixel(pixels_[i], value));
  }
  ++frames_seen_;
  return mask;
}

double BackgroundModel::likelihood(Rgb value, int x, int y) const {
  const PixelModel& model = pixel(x, y);
  const std::array<double, 3> v{double(value.r), double(value.g), double(value.b)};
  double density = 0.0;
  for (const auto& c : model.components) {
    const double norm = std::pow(2.0 * std::numbers::pi * c.variance, -1.5);
    density += c.weight * norm * std::exp(-squared_distance(v, c.mean) / (2.0 * c.variance));
  }
  return density;
}

Frame apply_mask(const Frame& frame, const BinaryMask& mask) {
  if (frame.width() != mask.width() || frame.height() != mask.height()) {
    throw ShapeError("mask dimensions do not match frame");
  }
  Frame out(frame.width(), frame.height(), frame.index());
  for (std::size_t i = 0; i < frame.pixel_count(); ++i) {
    if (mask.get(i)) out.set(i, frame.at(i));
  }
  return out;
}

}  // namespace gw
