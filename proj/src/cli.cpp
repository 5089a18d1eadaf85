#include "gw/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "gw/error.hpp"
#include "gw/eval.hpp"
#include "gw/frameio.hpp"
#include "gw/pipeline.hpp"
#include "gw/synth.hpp"
#include "json.hpp"

namespace gw {

namespace fs = std::filesystem;

namespace {

struct DetectArgs {
  std::string frames;
  std::string config;
  std::string out;
  std::string persons;
  std::string overlay;
};

struct EvalArgs {
  std::string det;
  std::string gt;
  double tau = 0.55;
  std::string taus = "0.05:0.95:0.05";
  std::string out;
};

struct SynthArgs {
  std::string scene;
  std::string out_frames;
  std::string out_gt;
  std::string out_persons;
  std::string out_stream;
};

PipelineConfig load_pipeline_config(const std::string& flag, std::string& resolved_path) {
  resolved_path = flag;
  if (resolved_path.empty()) {
    if (const char* env = std::getenv("GW_CONFIG"); env && *env) resolved_path = env;
  }
  if (resolved_path.empty()) throw ConfigError("no config given: pass --config or set GW_CONFIG");
  return PipelineConfig::from_config(KeyValueConfig::load(resolved_path));
}

void draw_box(Frame& frame, const BoundingBox& b, Rgb color) {
  constexpr int kThickness = 2;
  for (int y = b.y; y < b.bottom(); ++y) {
    for (int x = b.x; x < b.right(); ++x) {
      const bool edge = x - b.x < kThickness || b.right() - 1 - x < kThickness || y - b.y < kThickness ||
                        b.bottom() - 1 - y < kThickness;
      if (edge) frame.set(x, y, color);
    }
  }
}

int cmd_detect(const DetectArgs& args, std::ostream& out) {
  const auto started = std::chrono::steady_clock::now();
  std::string config_path;
  const PipelineConfig config = load_pipeline_config(args.config, config_path);

  auto source = open_frame_source(args.frames);
  std::map<long, PersonBoxes> persons;
  if (!args.persons.empty()) {
    for (auto& p : read_person_boxes(args.persons)) persons.emplace(p.frame_index, std::move(p));
  }
  if (!args.overlay.empty()) {
    std::error_code ec;
    fs::create_directories(args.overlay, ec);
    if (!fs::is_directory(args.overlay)) throw IoError("cannot create overlay directory " + args.overlay);
  }
  std::map<std::string, Rgb> band_colors;
  for (const auto& b : config.bands) band_colors[b.label] = b.display_color();

  GarmentDetector detector(config);
  std::vector<Detection> detections;
  long processed = 0;
  while (auto frame = source->next()) {
    const auto it = persons.find(frame->index());
    auto dets = detector.process(*frame, it == persons.end() ? nullptr : &it->second);
    if (!args.overlay.empty()) {
      Frame canvas = *frame;
      for (const auto& d : dets) draw_box(canvas, d.box, band_colors[d.color_label]);
      write_ppm(fs::path(args.overlay) / frame_filename(frame->index()), canvas);
    }
    detections.insert(detections.end(), dets.begin(), dets.end());
    ++processed;
  }
  write_detections(fs::path(args.out), detections);

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  nlohmann::ordered_json manifest;
  manifest["config"] = nlohmann::ordered_json::object();
  const KeyValueConfig effective = config.to_config();
  for (const auto& [k, v] : effective.entries()) manifest["config"][k] = v;
  manifest["inputs"] = {{"frames", args.frames}, {"config", config_path}, {"persons", args.persons}};
  manifest["outputs"] = {{"detections", args.out}, {"overlay", args.overlay}};
  manifest["frames_processed"] = processed;
  manifest["wall_seconds"] = seconds;
  const fs::path manifest_path = args.out + ".manifest.json";
  std::ofstream mf(manifest_path);
  if (!mf) throw IoError("cannot write " + manifest_path.string());
  mf << manifest.dump(2) << '\n';

  out << "processed " << processed << " frames, " << detections.size() << " detections -> " << args.out
      << '\n';
  return kExitOk;
}

int cmd_eval(const EvalArgs& args, std::ostream& out) {
  const auto dets = read_detections(args.det);
  const auto gts = read_annotations(args.gt);
  const EvalReport report = evaluate(dets, gts, args.tau);
  out << "# tau=" << format_double(report.threshold) << ", mean_iou averaged over matched pairs\n";
  write_counts_summary(out, report);
  return kExitOk;
}

std::vector<double> parse_taus(const std::string& spec) {
  const auto a = spec.find(':');
  const auto b = a == std::string::npos ? std::string::npos : spec.find(':', a + 1);
  if (b == std::string::npos) throw InputError("--taus expects start:stop:step, got '" + spec + "'");
  try {
    return tau_sweep(std::stod(spec.substr(0, a)), std::stod(spec.substr(a + 1, b - a - 1)),
                     std::stod(spec.substr(b + 1)));
  } catch (const std::logic_error&) {
    throw InputError("--taus expects numbers, got '" + spec + "'");
  }
}

int cmd_curve(const EvalArgs& args, std::ostream& out) {
  const auto taus = parse_taus(args.taus);
  const auto dets = read_detections(args.det);
  const auto gts = read_annotations(args.gt);
  const auto curve = pr_curve(dets, gts, taus);
  std::ofstream csv(args.out);
  if (!csv) throw IoError("cannot write " + args.out);
  write_curve_csv(csv, curve);
  if (!csv) throw IoError("write failed: " + args.out);
  out << "wrote " << curve.size() << " points -> " << args.out << '\n';
  return kExitOk;
}

int cmd_synth(const SynthArgs& args, std::ostream& out) {
  KeyValueConfig kv;
  try {
    kv = KeyValueConfig::load(args.scene);
  } catch (const ConfigError& e) {
    throw SpecError(e.what());
  }
  const SceneSpec spec = SceneSpec::from_config(kv);
  SynthOutputs outputs{args.out_frames, args.out_gt, std::nullopt, std::nullopt};
  if (!args.out_persons.empty()) outputs.persons = args.out_persons;
  if (!args.out_stream.empty()) outputs.raw_stream = args.out_stream;
  generate(spec, outputs);
  out << "generated " << spec.nframes << " frames -> " << args.out_frames << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Garment-of-interest detection for surveillance frame sequences", "garmentwatch"};
  app.require_subcommand(1);

  DetectArgs detect;
  auto* detect_cmd = app.add_subcommand("detect", "Run the detection pipeline over a frame sequence");
  detect_cmd->add_option("--frames", detect.frames, "PPM frame directory or GWVS1 stream")->required();
  detect_cmd->add_option("--config", detect.config, "Pipeline config file (falls back to $GW_CONFIG)");
  detect_cmd->add_option("--out", detect.out, "Detections JSONL output")->required();
  detect_cmd->add_option("--persons", detect.persons, "Person-box sidecar JSONL");
  detect_cmd->add_option("--overlay", detect.overlay, "Directory for annotated PPM frames");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score detections against ground truth");
  eval_cmd->add_option("--det", eval.det, "Detections JSONL")->required();
  eval_cmd->add_option("--gt", eval.gt, "Ground-truth JSONL")->required();
  eval_cmd->add_option("--tau", eval.tau, "IoU threshold")->capture_default_str();

  EvalArgs curve;
  auto* curve_cmd = app.add_subcommand("curve", "Precision/recall versus IoU threshold as CSV");
  curve_cmd->add_option("--det", curve.det, "Detections JSONL")->required();
  curve_cmd->add_option("--gt", curve.gt, "Ground-truth JSONL")->required();
  curve_cmd->add_option("--taus", curve.taus, "start:stop:step")->capture_default_str();
  curve_cmd->add_option("--out", curve.out, "CSV output")->required();

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Render a synthetic scene with ground truth");
  synth_cmd->add_option("--scene", synth.scene, "Scene description file")->required();
  synth_cmd->add_option("--out-frames", synth.out_frames, "Output PPM directory")->required();
  synth_cmd->add_option("--out-gt", synth.out_gt, "Ground-truth JSONL output")->required();
  synth_cmd->add_option("--out-persons", synth.out_persons, "Person sidecar JSONL output");
  synth_cmd->add_option("--out-stream", synth.out_stream, "Also write a GWVS1 stream");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (detect_cmd->parsed()) return cmd_detect(detect, out);
    if (eval_cmd->parsed()) return cmd_eval(eval, out);
    if (curve_cmd->parsed()) return cmd_curve(curve, out);
    if (synth_cmd->parsed()) return cmd_synth(synth, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitConfig;
}

}  // namespace gw
