#include <sstream>

#include "doctest.h"
#include "gw/error.hpp"
#include "gw/eval.hpp"
#include "gw/pipeline.hpp"
#include "gw/synth.hpp"
#include "scenes.hpp"

using namespace gw;
using gw::testing::moving_box;

namespace {

SceneSpec small_scene(long warmup) {
  SceneSpec s;
  s.width = 160;
  s.height = 120;
  s.nframes = 40;
  s.objects.push_back(moving_box("red", {230, 20, 20}, 24, 24, 10, 10, 1, 0));
  s.objects.push_back(moving_box("blue", {40, 80, 220}, 24, 24, 120, 80, -1, 0));
  return warmup_prefix(s, warmup);
}

PipelineConfig small_config(long warmup) {
  PipelineConfig c;
  c.warmup_frames = warmup;
  return c;
}

std::vector<Detection> run(const SceneSpec& spec, const PipelineConfig& config) {
  VectorFrameSource source(render_scene(spec));
  return process_sequence(source, scene_persons(spec), config);
}

}  // namespace

TEST_CASE("nothing is reported while the model warms up") {
  const SceneSpec s = small_scene(20);
  GarmentDetector det(small_config(20));
  const auto frames = render_scene(s);
  for (long i = 0; i < 20; ++i) CHECK(det.process(frames[i]).empty());
  // A detector told to warm up longer than the object track stays silent.
  CHECK(run(s, small_config(60)).empty());
}

TEST_CASE("a single red rectangle on a learnt background yields one tight detection") {
  SceneSpec s;
  s.width = 160;
  s.height = 120;
  s.nframes = 5;
  s.objects.push_back(moving_box("red", {230, 20, 20}, 30, 20, 40, 50, 0, 0));
  s = warmup_prefix(s, 20);
  const auto frames = render_scene(s);
  GarmentDetector det(small_config(20));
  std::vector<Detection> last;
  for (const auto& f : frames) last = det.process(f);
  REQUIRE(last.size() == 1);
  CHECK(last[0].color_label == "Red");
  CHECK(last[0].frame_index == 24);
  CHECK(iou(last[0].box, {40, 50, 30, 20}) >= 0.8);
  CHECK(last[0].score > 0.0);
  CHECK(last[0].score <= 1.0);
}

TEST_CASE("a person box covering the garment suppresses it") {
  SceneSpec s = small_scene(20);
  SceneObject person = moving_box("p", {}, 34, 34, 5, 5, 1, 0);
  person.appear = 20;
  s.persons.push_back(person);
  const auto dets = run(s, small_config(20));
  REQUIRE_FALSE(dets.empty());
  for (const auto& d : dets) CHECK(d.color_label == "Blue");

  // Without the sidecar both garments come back.
  s.persons.clear();
  int red = 0;
  for (const auto& d : run(s, small_config(20))) red += d.color_label == "Red";
  CHECK(red == 40);
}

TEST_CASE("an empty stream produces no detections") {
  VectorFrameSource empty({});
  CHECK(process_sequence(empty, {}, PipelineConfig{}).empty());
}

TEST_CASE("each garment is found once per frame after warmup, inside the frame") {
  const SceneSpec s = small_scene(20);
  const auto dets = run(s, small_config(20));
  const auto gt = scene_ground_truth(s);
  CHECK(dets.size() == 80);
  for (const auto& d : dets) {
    CHECK(d.frame_index >= 20);
    CHECK(d.box.fits(160, 120));
  }
  const EvalReport r = evaluate(dets, gt, 0.5);
  CHECK(r.precision == 1.0);
  CHECK(r.recall == 1.0);
  CHECK(r.mean_iou >= 0.85);
}

TEST_CASE("repeated runs agree exactly") {
  SceneSpec s = small_scene(20);
  s.noise_sigma = 6.0;
  const auto a = run(s, small_config(20));
  const auto b = run(s, small_config(20));
  std::ostringstream ja, jb;
  write_detections(ja, a);
  write_detections(jb, b);
  CHECK(ja.str() == jb.str());
}

TEST_CASE("frame-size mismatch and bad person boxes are rejected") {
  GarmentDetector det(small_config(0));
  det.process(Frame(40, 30, 0));
  CHECK_THROWS_AS(det.process(Frame(41, 30, 1)), ShapeError);

  GarmentDetector det2(small_config(0));
  PersonBoxes p{0, {{35, 0, 10, 10}}};
  CHECK_THROWS_AS(det2.process(Frame(40, 30, 0), &p), ValidationError);
}

TEST_CASE("size-dependent defaults scale with the frame") {
  const PipelineConfig c;
  CHECK(c.resolved_min_area(944, 576) == doctest::Approx(400.0));
  CHECK(c.resolved_gap_threshold(944, 576) == doctest::Approx(20.0));
  CHECK(c.resolved_min_area(472, 288) == doctest::Approx(100.0));
  CHECK(c.resolved_gap_threshold(472, 288) == doctest::Approx(10.0));
  CHECK(c.resolved_warmup() == 500);
  PipelineConfig d;
  d.min_area = 12.0;
  d.gap_threshold = 3.0;
  CHECK(d.resolved_min_area(944, 576) == 12.0);
  CHECK(d.resolved_gap_threshold(10, 10) == 3.0);
}

TEST_CASE("configuration survives a key/value round trip") {
  PipelineConfig c;
  c.background.history_length = 120;
  c.background.match_threshold = 2.75;
  c.binarize_threshold = 33;
  c.se_size = 7;
  c.min_area = 55.5;
  c.containment_min = 0.8;
  c.warmup_frames = 42;
  c.bands = {ColorBand{"Magenta", {{280, 330}}, 0.4, 0.25}, ColorBand{"Red", {{0, 12}, {345, 360}}, 0.3, 0.2}};
  const KeyValueConfig kv = c.to_config();
  std::istringstream in(kv.to_text());
  CHECK(PipelineConfig::from_config(KeyValueConfig::parse(in)) == c);
  CHECK(PipelineConfig::from_config(PipelineConfig{}.to_config()) == PipelineConfig{});
}

TEST_CASE("numbers are written in their shortest round-trip form") {
  CHECK(format_double(5000.0) == "5000");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(350.0) == "350");
  CHECK(format_double(-2.5) == "-2.5");
  const double third = 1.0 / 3.0;
  CHECK(std::stod(format_double(third)) == third);
}

TEST_CASE("configuration errors name the problem") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return PipelineConfig::from_config(KeyValueConfig::parse(in));
  };
  CHECK_THROWS_AS(parse("history_lenght = 10\n"), ConfigError);
  CHECK_THROWS_AS(parse("se_size = 4\n"), ConfigError);
  CHECK_THROWS_AS(parse("containment_min = 1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse("band.Red.hue = 10-5\n"), ConfigError);
  CHECK_THROWS_AS(parse("history_length = ten\n"), ConfigError);
  const PipelineConfig only_green = parse("band.Green.hue = 70-170\n");
  REQUIRE(only_green.bands.size() == 1);
  CHECK(only_green.bands[0].label == "Green");
}
