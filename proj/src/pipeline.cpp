#include "gw/pipeline.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "gw/cluster.hpp"
#include "gw/error.hpp"
#include "gw/regions.hpp"

namespace gw {

namespace {

double area_ratio(int width, int height) {
  return (static_cast<double>(width) * height) /
         (static_cast<double>(kReferenceWidth) * kReferenceHeight);
}

std::vector<HueRange> parse_hue_ranges(const std::string& key, const std::string& value) {
  std::vector<HueRange> ranges;
  std::stringstream ss(value);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dash = part.find('-', 1);
    if (dash == std::string::npos) throw ConfigError(key + ": expected 'lo-hi[,lo-hi]', got '" + value + "'");
    ranges.push_back({parse_double(key, part.substr(0, dash)), parse_double(key, part.substr(dash + 1))});
  }
  return ranges;
}

}  // namespace

void PipelineConfig::validate() const {
  background.validate();
  if (binarize_threshold < 0 || binarize_threshold > 255) throw ConfigError("binarize_threshold outside [0,255]");
  if (bands.empty()) throw ConfigError("at least one color band is required");
  std::set<std::string> labels;
  for (const auto& b : bands) {
    b.validate();
    if (!labels.insert(b.label).second) throw ConfigError("duplicate band label " + b.label);
  }
  (void)StructuringElement{se_size};
  if (min_area && !(*min_area >= 0.0)) throw ConfigError("min_area must be >= 0");
  if (gap_threshold && !(*gap_threshold >= 0.0)) throw ConfigError("gap_threshold must be >= 0");
  if (!(containment_min >= 0.0 && containment_min <= 1.0)) throw ConfigError("containment_min outside [0,1]");
  if (warmup_frames && *warmup_frames < 0) throw ConfigError("warmup_frames must be >= 0");
}

double PipelineConfig::resolved_min_area(int width, int height) const {
  return min_area.value_or(400.0 * area_ratio(width, height));
}

double PipelineConfig::resolved_gap_threshold(int width, int height) const {
  return gap_threshold.value_or(20.0 * std::sqrt(area_ratio(width, height)));
}

PipelineConfig PipelineConfig::from_config(const KeyValueConfig& kv) {
  PipelineConfig cfg;
  std::vector<ColorBand> bands;
  auto band_named = [&bands](const std::string& label) -> ColorBand& {
    for (auto& b : bands) {
      if (b.label == label) return b;
    }
    bands.push_back({label, {}, 0.30, 0.20});
    return bands.back();
  };

  for (const auto& [key, value] : kv.entries()) {
    auto& bg = cfg.background;
    if (key == "history_length") {
      bg.history_length = static_cast<int>(parse_long(key, value));
    } else if (key == "match_threshold") {
      bg.match_threshold = parse_double(key, value);
    } else if (key == "background_fraction") {
      bg.background_fraction = parse_double(key, value);
    } else if (key == "max_components") {
      bg.max_components = static_cast<int>(parse_long(key, value));
    } else if (key == "init_variance") {
      bg.init_variance = parse_double(key, value);
    } else if (key == "min_variance") {
      bg.min_variance = parse_double(key, value);
    } else if (key == "max_variance") {
      bg.max_variance = parse_double(key, value);
    } else if (key == "init_weight") {
      bg.init_weight = parse_double(key, value);
    } else if (key == "binarize_threshold") {
      cfg.binarize_threshold = static_cast<int>(parse_long(key, value));
    } else if (key == "se_size") {
      cfg.se_size = static_cast<int>(parse_long(key, value));
    } else if (key == "min_area") {
      cfg.min_area = parse_double(key, value);
    } else if (key == "gap_threshold") {
      cfg.gap_threshold = parse_double(key, value);
    } else if (key == "containment_min") {
      cfg.containment_min = parse_double(key, value);
    } else if (key == "warmup_frames") {
      cfg.warmup_frames = parse_long(key, value);
    } else if (key.rfind("band.", 0) == 0) {
      const auto dot = key.rfind('.');
      if (dot <= 5) throw ConfigError("malformed band key '" + key + "'");
      ColorBand& band = band_named(key.substr(5, dot - 5));
      const std::string field = key.substr(dot + 1);
      if (field == "hue") {
        band.hue_ranges = parse_hue_ranges(key, value);
      } else if (field == "sat_min") {
        band.sat_min = parse_double(key, value);
      } else if (field == "val_min") {
        band.val_min = parse_double(key, value);
      } else {
        throw ConfigError("unknown band field '" + key + "'");
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (!bands.empty()) cfg.bands = std::move(bands);
  cfg.validate();
  return cfg;
}

KeyValueConfig PipelineConfig::to_config() const {
  KeyValueConfig kv;
  kv.set("history_length", std::to_string(background.history_length));
  kv.set("match_threshold", format_double(background.match_threshold));
  kv.set("background_fraction", format_double(background.background_fraction));
  kv.set("max_components", std::to_string(background.max_components));
  kv.set("init_variance", format_double(background.init_variance));
  kv.set("min_variance", format_double(background.min_variance));
  kv.set("max_variance", format_double(background.max_variance));
  kv.set("init_weight", format_double(background.init_weight));
  kv.set("binarize_threshold", std::to_string(binarize_threshold));
  kv.set("se_size", std::to_string(se_size));
  if (min_area) kv.set("min_area", format_double(*min_area));
  if (gap_threshold) kv.set("gap_threshold", format_double(*gap_threshold));
  kv.set("containment_min", format_double(containment_min));
  if (warmup_frames) kv.set("warmup_frames", std::to_string(*warmup_frames));
  for (const auto& b : bands) {
    std::string hue;
    for (const auto& r : b.hue_ranges) {
      if (!hue.empty()) hue += ",";
      hue += format_double(r.lo) + "-" + format_double(r.hi);
    }
    kv.set("band." + b.label + ".hue", hue);
    kv.set("band." + b.label + ".sat_min", format_double(b.sat_min));
    kv.set("band." + b.label + ".val_min", format_double(b.val_min));
  }
  return kv;
}

GarmentDetector::GarmentDetector(PipelineConfig config)
    : config_(std::move(config)), se_(config_.se_size) {
  config_.validate();
}

std::vector<Detection> GarmentDetector::process(const Frame& frame, const PersonBoxes* persons) {
  if (!model_) {
    model_.emplace(frame.width(), frame.height(), config_.background);
    min_area_ = config_.resolved_min_area(frame.width(), frame.height());
    gap_threshold_ = config_.resolved_gap_threshold(frame.width(), frame.height());
  }
  if (persons) {
    for (const auto& b : persons->boxes) {
      if (!b.fits(frame.width(), frame.height())) {
        throw ValidationError("person box outside frame " + std::to_string(frame.index()));
      }
    }
  }

  const BinaryMask foreground = model_->update(frame);
  if (frame.index() < config_.resolved_warmup()) return {};

  const Frame fframe = apply_mask(frame, foreground);
  const auto frame_area = static_cast<std::int64_t>(frame.pixel_count());
  std::vector<Detection> detections;
  for (const ColorBand& band : config_.bands) {
    const BinaryMask in_band = color_mask(fframe, band);
    const GrayFrame gframe = masked_to_gray(fframe, in_band);
    const BinaryMask solid =
        close(binarize(gframe, static_cast<std::uint8_t>(config_.binarize_threshold)), se_);
    const auto contours = filter_small(trace_contours(solid), min_area_);
    auto clusters = cluster_contours(contours, band.label, gap_threshold_);
    if (persons) clusters = exclude_persons(std::move(clusters), *persons, config_.containment_min);
    auto band_dets = to_detections(clusters, frame.index(), frame_area);
    detections.insert(detections.end(), band_dets.begin(), band_dets.end());
  }
  return detections;
}

std::vector<Detection> process_sequence(FrameSource& frames, const std::vector<PersonBoxes>& persons,
                                        const PipelineConfig& config) {
  std::map<long, const PersonBoxes*> by_frame;
  for (const auto& p : persons) by_frame[p.frame_index] = &p;

  GarmentDetector detector(config);
  std::vector<Detection> all;
  while (auto frame = frames.next()) {
    const auto it = by_frame.find(frame->index());
    auto dets = detector.process(*frame, it == by_frame.end() ? nullptr : it->second);
    all.insert(all.end(), dets.begin(), dets.end());
  }
  return all;
}

}  // namespace gw
