#include "gw/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "gw/error.hpp"
#include "gw/frameio.hpp"

namespace gw {

namespace fs = std::filesystem;

namespace {

void check_track(const SceneObject& o, const SceneSpec& spec, const char* kind) {
  if (o.w < 1 || o.h < 1) throw SpecError(std::string(kind) + " '" + o.name + "': size must be >= 1x1");
  if (o.appear < 0) throw SpecError(std::string(kind) + " '" + o.name + "': negative appear frame");
  const long end = std::min(o.disappear.value_or(spec.nframes), spec.nframes);
  for (long f = o.appear; f < end; ++f) {
    if (!o.box_at(f).fits(spec.width, spec.height)) {
      throw SpecError(std::string(kind) + " '" + o.name + "' leaves the " + std::to_string(spec.width) +
                      "x" + std::to_string(spec.height) + " frame at frame " + std::to_string(f));
    }
  }
}

}  // namespace

void SceneSpec::validate() const {
  if (width < 1 || height < 1) throw SpecError("scene dimensions must be >= 1");
  if (nframes < 0) throw SpecError("nframes must be >= 0");
  if (!(noise_sigma >= 0.0)) throw SpecError("noise_sigma must be >= 0");
  for (const auto& o : objects) check_track(o, *this, "object");
  for (const auto& p : persons) check_track(p, *this, "person");
}

namespace {

// Groups "<prefix>.<name>.<field>" keys by name, in first-appearance order.
std::vector<std::pair<std::string, std::map<std::string, std::string>>> grouped(
    const KeyValueConfig& kv, const std::string& prefix) {
  std::vector<std::pair<std::string, std::map<std::string, std::string>>> out;
  for (const auto& [key, value] : kv.entries()) {
    if (key.rfind(prefix + ".", 0) != 0) continue;
    const std::string rest = key.substr(prefix.size() + 1);
    const auto dot = rest.rfind('.');
    if (dot == std::string::npos || dot == 0) throw ConfigError("malformed key '" + key + "'");
    const std::string name = rest.substr(0, dot);
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == name; });
    if (it == out.end()) {
      out.emplace_back(name, std::map<std::string, std::string>{});
      it = std::prev(out.end());
    }
    it->second[rest.substr(dot + 1)] = value;
  }
  return out;
}

SceneObject parse_track(const std::string& kind, const std::string& name,
                        const std::map<std::string, std::string>& fields, bool painted) {
  SceneObject o;
  o.name = name;
  const std::string base = kind + "." + name + ".";
  for (const auto& [field, value] : fields) {
    const std::string key = base + field;
    if (field == "size") {
      std::tie(o.w, o.h) = parse_pair(key, value, 'x');
    } else if (field == "start") {
      std::tie(o.start_x, o.start_y) = parse_pair(key, value, ',');
    } else if (field == "velocity") {
      std::tie(o.vx, o.vy) = parse_pair(key, value, ',');
    } else if (field == "appear") {
      o.appear = parse_long(key, value);
    } else if (field == "disappear") {
      o.disappear = parse_long(key, value);
    } else if (painted && field == "color") {
      o.color = parse_rgb(key, value);
    } else if (painted && field == "stripe_color") {
      o.stripe_color = parse_rgb(key, value);
    } else {
      throw ConfigError("unknown scene key '" + key + "'");
    }
  }
  if (!fields.contains("size")) throw ConfigError(base + "size is required");
  if (!fields.contains("start")) throw ConfigError(base + "start is required");
  return o;
}

}  // namespace

SceneSpec SceneSpec::from_config(const KeyValueConfig& kv) {
  try {
    SceneSpec spec;
    for (const auto& [key, value] : kv.entries()) {
      if (key == "width") {
        spec.width = static_cast<int>(parse_long(key, value));
      } else if (key == "height") {
        spec.height = static_cast<int>(parse_long(key, value));
      } else if (key == "nframes") {
        spec.nframes = parse_long(key, value);
      } else if (key == "fps") {
        spec.fps = static_cast<int>(parse_long(key, value));
      } else if (key == "seed") {
        spec.seed = static_cast<std::uint64_t>(parse_long(key, value));
      } else if (key == "noise_sigma") {
        spec.noise_sigma = parse_double(key, value);
      } else if (key == "background") {
        if (value == "texture") {
          spec.textured_background = true;
        } else {
          spec.background = parse_rgb(key, value);
        }
      } else if (key.rfind("object.", 0) != 0 && key.rfind("person.", 0) != 0) {
        throw ConfigError("unknown scene key '" + key + "'");
      }
    }
    for (const auto& [name, fields] : grouped(kv, "object")) {
      spec.objects.push_back(parse_track("object", name, fields, true));
    }
    for (const auto& [name, fields] : grouped(kv, "person")) {
      spec.persons.push_back(parse_track("person", name, fields, false));
    }
    spec.validate();
    return spec;
  } catch (const ConfigError& e) {
    throw SpecError(e.what());
  }
}

SceneSpec warmup_prefix(SceneSpec spec, long warmup_frames) {
  if (warmup_frames < 0) throw SpecError("warmup_frames must be >= 0");
  auto shift = [warmup_frames](SceneObject& o) {
    o.appear += warmup_frames;
    if (o.disappear) *o.disappear += warmup_frames;
  };
  std::for_each(spec.objects.begin(), spec.objects.end(), shift);
  std::for_each(spec.persons.begin(), spec.persons.end(), shift);
  spec.nframes += warmup_frames;
  return spec;
}

SceneRenderer::SceneRenderer(SceneSpec spec) : spec_(std::move(spec)), rng_(spec_.seed) {
  spec_.validate();
  base_ = Frame(spec_.width, spec_.height);
  if (spec_.textured_background) {
    std::mt19937_64 texture_rng(spec_.seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::size_t i = 0; i < base_.pixel_count(); ++i) {
      const std::uint64_t bits = texture_rng();
      base_.set(i, {static_cast<std::uint8_t>(bits), static_cast<std::uint8_t>(bits >> 8),
                    static_cast<std::uint8_t>(bits >> 16)});
    }
  } else {
    for (std::size_t i = 0; i < base_.pixel_count(); ++i) base_.set(i, spec_.background);
  }
}

// Box-Muller over raw engine output, so the byte stream does not depend on
// the standard library's distribution implementations.
double SceneRenderer::gaussian() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * kScale;
  const double u2 = static_cast<double>(rng_() >> 11) * kScale;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

std::optional<Frame> SceneRenderer::next() {
  if (pos_ >= spec_.nframes) return std::nullopt;
  Frame frame = base_;
  frame.set_index(pos_);
  for (const auto& o : spec_.objects) {
    if (!o.visible(pos_, spec_.nframes)) continue;
    const BoundingBox b = o.box_at(pos_);
    for (int y = b.y; y < b.bottom(); ++y) {
      for (int x = b.x; x < b.right(); ++x) {
        const bool alt = o.stripe_color && ((x - b.x) / 4) % 2 == 1;
        frame.set(x, y, alt ? *o.stripe_color : o.color);
      }
    }
  }
  if (spec_.noise_sigma > 0.0) {
    for (auto& byte : frame.bytes()) {
      const double v = std::round(byte + spec_.noise_sigma * gaussian());
      byte = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
    }
  }
  ++pos_;
  return frame;
}

std::vector<Annotation> scene_ground_truth(const SceneSpec& spec) {
  std::vector<Annotation> gt;
  gt.reserve(static_cast<std::size_t>(spec.nframes));
  for (long f = 0; f < spec.nframes; ++f) {
    Annotation a{f, {}};
    for (const auto& o : spec.objects) {
      if (o.visible(f, spec.nframes)) a.boxes.push_back(o.box_at(f));
    }
    gt.push_back(std::move(a));
  }
  return gt;
}

std::vector<PersonBoxes> scene_persons(const SceneSpec& spec) {
  std::vector<PersonBoxes> out;
  for (long f = 0; f < spec.nframes; ++f) {
    PersonBoxes p{f, {}};
    for (const auto& o : spec.persons) {
      if (o.visible(f, spec.nframes)) p.boxes.push_back(o.box_at(f));
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Frame> render_scene(const SceneSpec& spec) {
  SceneRenderer renderer(spec);
  std::vector<Frame> frames;
  while (auto f = renderer.next()) frames.push_back(std::move(*f));
  return frames;
}

void generate(const SceneSpec& spec, const SynthOutputs& outputs) {
  spec.validate();
  std::error_code ec;
  fs::create_directories(outputs.frames_dir, ec);
  if (!fs::is_directory(outputs.frames_dir)) {
    throw IoError("cannot create frame directory " + outputs.frames_dir.string());
  }

  std::ofstream raw_file;
  std::optional<RawStreamWriter> raw;
  if (outputs.raw_stream) {
    raw_file.open(*outputs.raw_stream, std::ios::binary);
    if (!raw_file) throw IoError("cannot write " + outputs.raw_stream->string());
    raw.emplace(raw_file, RawStreamHeader{spec.width, spec.height, spec.fps,
                                          static_cast<std::uint64_t>(spec.nframes)});
  }

  SceneRenderer renderer(spec);
  while (auto frame = renderer.next()) {
    write_ppm(outputs.frames_dir / frame_filename(frame->index()), *frame);
    if (raw) raw->write(*frame);
  }
  if (raw) raw->finish();

  write_annotations(outputs.ground_truth, scene_ground_truth(spec));
  if (outputs.persons) write_person_boxes(*outputs.persons, scene_persons(spec));
}

}  // namespace gw
