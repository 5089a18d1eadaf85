#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gw/bgsub.hpp"
#include "gw/boxes.hpp"
#include "gw/colorseg.hpp"
#include "gw/config.hpp"
#include "gw/frameio.hpp"
#include "gw/regions.hpp"

namespace gw {

// Reference resolution the size-dependent defaults are tuned for.
inline constexpr int kReferenceWidth = 944;
inline constexpr int kReferenceHeight = 576;

struct PipelineConfig {
  BackgroundParams background;
  int binarize_threshold = 40;
  std::vector<ColorBand> bands = default_color_bands();
  int se_size = 5;
  std::optional<double> min_area;       // unset: 400 px^2 scaled by frame area
  std::optional<double> gap_threshold;  // unset: 20 px scaled by sqrt(frame area)
  double containment_min = 0.5;
  std::optional<long> warmup_frames;    // unset: history_length

  void validate() const;

  double resolved_min_area(int width, int height) const;
  double resolved_gap_threshold(int width, int height) const;
  long resolved_warmup() const { return warmup_frames.value_or(background.history_length); }

  // Keys mirror the field names; bands use band.<label>.{hue,sat_min,val_min}
  // and replace the default table when present. Throws ConfigError.
  static PipelineConfig from_config(const KeyValueConfig& kv);
  KeyValueConfig to_config() const;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

// Stateful per-sequence detector. Frames must arrive in index order.
class GarmentDetector {
 public:
  explicit GarmentDetector(PipelineConfig config);

  const PipelineConfig& config() const noexcept { return config_; }

  // Runs every stage and returns this frame's detections (empty while
  // warming up). The background model is created on the first frame.
  std::vector<Detection> process(const Frame& frame, const PersonBoxes* persons = nullptr);

 private:
  PipelineConfig config_;
  StructuringElement se_;
  std::optional<BackgroundModel> model_;
  double min_area_ = 0.0;
  double gap_threshold_ = 0.0;
};

std::vector<Detection> process_sequence(FrameSource& frames, const std::vector<PersonBoxes>& persons,
                                        const PipelineConfig& config);

}  // namespace gw
