#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gw/boxes.hpp"
#include "gw/config.hpp"
#include "gw/image.hpp"

namespace gw {

// Rectangle moving at a constant integer velocity while visible. Positions
// are measured from the appear frame.
struct SceneObject {
  std::string name;
  Rgb color{255, 0, 0};
  std::optional<Rgb> stripe_color;  // set: alternating 4-px vertical bands
  int w = 1;
  int h = 1;
  int start_x = 0;
  int start_y = 0;
  int vx = 0;
  int vy = 0;
  long appear = 0;
  std::optional<long> disappear;  // exclusive; unset = until the end

  bool visible(long frame, long nframes) const noexcept {
    return frame >= appear && frame < disappear.value_or(nframes);
  }
  BoundingBox box_at(long frame) const noexcept {
    const long t = frame - appear;
    return {static_cast<int>(start_x + vx * t), static_cast<int>(start_y + vy * t), w, h};
  }
};

struct SceneSpec {
  int width = 320;
  int height = 240;
  long nframes = 100;
  int fps = 25;
  Rgb background{128, 128, 128};
  bool textured_background = false;  // per-pixel fixed random texture
  double noise_sigma = 0.0;
  std::vector<SceneObject> objects;  // painted in order
  std::vector<SceneObject> persons;  // labelled only, never painted
  std::uint64_t seed = 0;

  // Throws SpecError naming the object and frame that leaves the raster.
  void validate() const;

  // Reads a key/value scene description; errors surface as SpecError.
  static SceneSpec from_config(const KeyValueConfig& kv);
};

// Delays every object and person by `warmup_frames` and lengthens the scene
// to match, leaving a background-only prefix.
SceneSpec warmup_prefix(SceneSpec spec, long warmup_frames);

// Renders frames in order; noise depends on the frames already drawn, so
// output is reproducible only when consumed sequentially from frame 0.
class SceneRenderer {
 public:
  explicit SceneRenderer(SceneSpec spec);

  const SceneSpec& spec() const noexcept { return spec_; }
  std::optional<Frame> next();

 private:
  double gaussian();

  SceneSpec spec_;
  Frame base_;
  std::mt19937_64 rng_;
  long pos_ = 0;
};

std::vector<Annotation> scene_ground_truth(const SceneSpec& spec);
std::vector<PersonBoxes> scene_persons(const SceneSpec& spec);
std::vector<Frame> render_scene(const SceneSpec& spec);

struct SynthOutputs {
  std::filesystem::path frames_dir;
  std::filesystem::path ground_truth;
  std::optional<std::filesystem::path> persons;
  std::optional<std::filesystem::path> raw_stream;  // GWVS1 copy of the frames
};

void generate(const SceneSpec& spec, const SynthOutputs& outputs);

}  // namespace gw
