#include "gw/frameio.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>
#include <string_view>

#include "gw/error.hpp"
#include "json.hpp"

namespace gw {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::optional<Frame> VectorFrameSource::next() {
  if (pos_ >= frames_.size()) return std::nullopt;
  return std::move(frames_[pos_++]);
}

std::string frame_filename(long index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06ld.ppm", index);
  return buf;
}

// ---------------------------------------------------------------------------
// PPM

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string ppm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

int ppm_int(std::istream& in, const char* what) {
  const std::string tok = ppm_token(in);
  const auto digit = [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; };
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), digit)) {
    throw FormatError(std::string("PPM: bad ") + what + " '" + tok + "'");
  }
  try {
    return std::stoi(tok);
  } catch (const std::out_of_range&) {
    throw FormatError(std::string("PPM: ") + what + " out of range");
  }
}

}  // namespace

Frame parse_ppm(std::istream& in, long index) {
  const std::string magic = ppm_token(in);
  if (magic != "P6") throw FormatError("PPM: expected magic P6, got '" + magic + "'");
  const int width = ppm_int(in, "width");
  const int height = ppm_int(in, "height");
  const int maxval = ppm_int(in, "maxval");
  if (maxval != 255) throw FormatError("PPM: maxval must be 255, got " + std::to_string(maxval));
  if (width < 1 || height < 1) throw FormatError("PPM: empty raster");
  // ppm_token consumed exactly one whitespace byte after maxval.
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) * height * 3);
  in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  if (static_cast<std::size_t>(in.gcount()) != pixels.size()) {
    throw FormatError("PPM: truncated pixel data, expected " + std::to_string(pixels.size()) +
                      " bytes, got " + std::to_string(in.gcount()));
  }
  return Frame(width, height, index, std::move(pixels));
}

Frame read_ppm(const fs::path& path, long index) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return parse_ppm(in, index);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_ppm(std::ostream& out, const Frame& frame) {
  out << "P6\n" << frame.width() << ' ' << frame.height() << "\n255\n";
  const auto bytes = frame.bytes();
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void write_ppm(const fs::path& path, const Frame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_ppm(out, frame);
  if (!out) throw IoError("write failed: " + path.string());
}

PpmSequenceReader::PpmSequenceReader(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) throw IoError("not a directory: " + dir_.string());

  static const std::regex pattern(R"(frame_(\d{6})\.ppm)");
  std::vector<long> indices;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    const std::string name = entry.path().filename().string();
    std::smatch m;
    if (std::regex_match(name, m, pattern)) indices.push_back(std::stol(m[1].str()));
  }
  std::sort(indices.begin(), indices.end());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] != static_cast<long>(i)) {
      throw SequenceError("frame sequence gap in " + dir_.string() + ": missing " +
                              frame_filename(static_cast<long>(i)),
                          static_cast<long>(i));
    }
  }
  count_ = indices.size();
}

std::optional<Frame> PpmSequenceReader::next() {
  if (pos_ >= count_) return std::nullopt;
  const long index = static_cast<long>(pos_);
  Frame frame = read_ppm(dir_ / frame_filename(index), index);
  if (pos_ == 0) {
    width_ = frame.width();
    height_ = frame.height();
  } else if (frame.width() != width_ || frame.height() != height_) {
    throw FormatError(frame_filename(index) + ": dimensions " + std::to_string(frame.width()) +
                      "x" + std::to_string(frame.height()) + " differ from stream dimensions " +
                      std::to_string(width_) + "x" + std::to_string(height_));
  }
  ++pos_;
  return frame;
}

// ---------------------------------------------------------------------------
// GWVS1

RawStreamReader::RawStreamReader(std::istream& in) : in_(&in) { read_header(); }

RawStreamReader::RawStreamReader(const fs::path& path) {
  auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*file) throw IoError("cannot open " + path.string());
  owned_ = std::move(file);
  in_ = owned_.get();
  read_header();
}

void RawStreamReader::read_header() {
  std::string line;
  if (!std::getline(*in_, line)) throw FormatError("GWVS1: missing header");
  std::istringstream hs(line);
  std::string magic;
  long long w = 0, h = 0, fps = 0, n = -1;
  hs >> magic;
  if (magic != "GWVS1") throw FormatError("GWVS1: bad magic '" + magic + "'");
  if (!(hs >> w >> h >> fps >> n) || w < 1 || h < 1 || fps < 0 || n < 0) {
    throw FormatError("GWVS1: malformed header '" + line + "'");
  }
  std::string rest;
  if (hs >> rest) throw FormatError("GWVS1: trailing header fields '" + rest + "'");
  header_ = {static_cast<int>(w), static_cast<int>(h), static_cast<int>(fps),
             static_cast<std::uint64_t>(n)};
}

std::optional<Frame> RawStreamReader::next() {
  if (pos_ >= header_.nframes) return std::nullopt;
  const std::uint64_t fb = header_.frame_bytes();
  std::vector<std::uint8_t> pixels(fb);
  in_->read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(fb));
  const auto got = static_cast<std::uint64_t>(in_->gcount());
  if (got != fb) {
    const std::uint64_t expected = fb * header_.nframes;
    const std::uint64_t received = fb * pos_ + got;
    throw StreamError("GWVS1: truncated payload, expected " + std::to_string(expected) +
                          " bytes, got " + std::to_string(received),
                      expected, received);
  }
  const long index = static_cast<long>(pos_++);
  return Frame(header_.width, header_.height, index, std::move(pixels));
}

RawStreamWriter::RawStreamWriter(std::ostream& out, RawStreamHeader header)
    : out_(out), header_(header) {
  out_ << "GWVS1 " << header_.width << ' ' << header_.height << ' ' << header_.fps << ' '
       << header_.nframes << '\n';
}

void RawStreamWriter::write(const Frame& frame) {
  if (frame.width() != header_.width || frame.height() != header_.height) {
    throw ShapeError("GWVS1: frame dimensions differ from header");
  }
  if (written_ >= header_.nframes) throw StreamError("GWVS1: too many frames", header_.nframes, written_ + 1);
  const auto bytes = frame.bytes();
  out_.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out_) throw IoError("GWVS1: write failed");
  ++written_;
}

void RawStreamWriter::finish() const {
  if (written_ != header_.nframes) {
    throw StreamError("GWVS1: wrote " + std::to_string(written_) + " of " +
                          std::to_string(header_.nframes) + " frames",
                      header_.nframes * header_.frame_bytes(), written_ * header_.frame_bytes());
  }
}

std::unique_ptr<FrameSource> open_frame_source(const fs::path& path) {
  std::error_code ec;
  if (fs::is_directory(path, ec)) return std::make_unique<PpmSequenceReader>(path);
  if (fs::is_regular_file(path, ec)) return std::make_unique<RawStreamReader>(path);
  throw IoError("no such frame directory or stream: " + path.string());
}

// ---------------------------------------------------------------------------
// JSON Lines

namespace {

int box_field(const nlohmann::json& box, const char* key, std::size_t line) {
  const auto it = box.find(key);
  if (it == box.end() || !it->is_number_integer()) {
    throw ParseError("line " + std::to_string(line) + ": box field '" + key +
                         "' missing or not an integer",
                     line);
  }
  const auto v = it->get<long long>();
  if (v < INT32_MIN || v > INT32_MAX) {
    throw ValidationError("line " + std::to_string(line) + ": box field '" + key + "' out of range");
  }
  return static_cast<int>(v);
}

BoundingBox parse_box(const nlohmann::json& box, std::size_t line, const std::optional<FrameDims>& dims) {
  if (!box.is_object()) throw ParseError("line " + std::to_string(line) + ": box is not an object", line);
  BoundingBox b{box_field(box, "x", line), box_field(box, "y", line), box_field(box, "w", line),
                box_field(box, "h", line)};
  if (b.w <= 0 || b.h <= 0) {
    throw ValidationError("line " + std::to_string(line) + ": box extent must be positive, got w=" +
                          std::to_string(b.w) + " h=" + std::to_string(b.h));
  }
  if (b.x < 0 || b.y < 0) {
    throw ValidationError("line " + std::to_string(line) + ": box origin must be non-negative");
  }
  if (dims && !b.fits(dims->width, dims->height)) {
    throw ValidationError("line " + std::to_string(line) + ": box exceeds " +
                          std::to_string(dims->width) + "x" + std::to_string(dims->height) + " frame");
  }
  return b;
}

// Calls fn(frame_index, boxes_array_json, line_no) for each non-blank line.
template <typename Fn>
void for_each_record(std::istream& in, const char* list_key, Fn&& fn) {
  std::string text;
  std::size_t line = 0;
  long last_frame = -1;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("line " + std::to_string(line) + ": " + e.what(), line);
    }
    if (!j.is_object()) throw ParseError("line " + std::to_string(line) + ": not a JSON object", line);
    const auto fit = j.find("frame");
    if (fit == j.end() || !fit->is_number_integer()) {
      throw ParseError("line " + std::to_string(line) + ": missing integer 'frame'", line);
    }
    const long frame = fit->get<long>();
    if (frame < 0) throw ValidationError("line " + std::to_string(line) + ": negative frame index");
    if (frame <= last_frame) {
      throw ValidationError("line " + std::to_string(line) + ": frame index " + std::to_string(frame) +
                            " not strictly increasing");
    }
    last_frame = frame;
    const auto bit = j.find(list_key);
    if (bit == j.end() || !bit->is_array()) {
      throw ParseError("line " + std::to_string(line) + ": missing array '" + list_key + "'", line);
    }
    fn(frame, *bit, line);
  }
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

ordered_json box_json(const BoundingBox& b) {
  ordered_json j;
  j["x"] = b.x;
  j["y"] = b.y;
  j["w"] = b.w;
  j["h"] = b.h;
  return j;
}

void write_box_records(std::ostream& out, long frame, const char* key, std::span<const BoundingBox> boxes) {
  ordered_json line;
  line["frame"] = frame;
  line[key] = ordered_json::array();
  for (const auto& b : boxes) line[key].push_back(box_json(b));
  out << line.dump() << '\n';
}

}  // namespace

std::vector<Annotation> parse_annotations(std::istream& in, std::optional<FrameDims> dims) {
  std::vector<Annotation> result;
  for_each_record(in, "boxes", [&](long frame, const nlohmann::json& boxes, std::size_t line) {
    Annotation a{frame, {}};
    for (const auto& b : boxes) a.boxes.push_back(parse_box(b, line, dims));
    result.push_back(std::move(a));
  });
  return result;
}

std::vector<Annotation> read_annotations(const fs::path& path, std::optional<FrameDims> dims) {
  auto in = open_in(path);
  return parse_annotations(in, dims);
}

void write_annotations(std::ostream& out, std::span<const Annotation> annotations) {
  for (const auto& a : annotations) write_box_records(out, a.frame_index, "boxes", a.boxes);
}

void write_annotations(const fs::path& path, std::span<const Annotation> annotations) {
  auto out = open_out(path);
  write_annotations(out, annotations);
  if (!out) throw IoError("write failed: " + path.string());
}

void write_detections(std::ostream& out, std::span<const Detection> detections) {
  std::size_t i = 0;
  while (i < detections.size()) {
    const long frame = detections[i].frame_index;
    if (i > 0 && frame < detections[i - 1].frame_index) {
      throw ValidationError("detections not sorted by frame index");
    }
    ordered_json line;
    line["frame"] = frame;
    line["boxes"] = ordered_json::array();
    for (; i < detections.size() && detections[i].frame_index == frame; ++i) {
      const Detection& d = detections[i];
      ordered_json b = box_json(d.box);
      b["color"] = d.color_label;
      b["score"] = d.score;
      line["boxes"].push_back(std::move(b));
    }
    out << line.dump() << '\n';
  }
}

void write_detections(const fs::path& path, std::span<const Detection> detections) {
  auto out = open_out(path);
  write_detections(out, detections);
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<Detection> parse_detections(std::istream& in) {
  std::vector<Detection> result;
  for_each_record(in, "boxes", [&](long frame, const nlohmann::json& boxes, std::size_t line) {
    for (const auto& b : boxes) {
      Detection d;
      d.frame_index = frame;
      d.box = parse_box(b, line, std::nullopt);
      if (const auto c = b.find("color"); c != b.end()) {
        if (!c->is_string()) throw ParseError("line " + std::to_string(line) + ": 'color' not a string", line);
        d.color_label = c->get<std::string>();
      }
      if (const auto s = b.find("score"); s != b.end()) {
        if (!s->is_number()) throw ParseError("line " + std::to_string(line) + ": 'score' not a number", line);
        d.score = s->get<double>();
        if (!(d.score >= 0.0 && d.score <= 1.0)) {
          throw ValidationError("line " + std::to_string(line) + ": score outside [0,1]");
        }
      }
      result.push_back(std::move(d));
    }
  });
  return result;
}

std::vector<Detection> read_detections(const fs::path& path) {
  auto in = open_in(path);
  return parse_detections(in);
}

std::vector<PersonBoxes> parse_person_boxes(std::istream& in, std::optional<FrameDims> dims) {
  std::vector<PersonBoxes> result;
  for_each_record(in, "persons", [&](long frame, const nlohmann::json& boxes, std::size_t line) {
    PersonBoxes p{frame, {}};
    for (const auto& b : boxes) p.boxes.push_back(parse_box(b, line, dims));
    result.push_back(std::move(p));
  });
  return result;
}

std::vector<PersonBoxes> read_person_boxes(const fs::path& path, std::optional<FrameDims> dims) {
  auto in = open_in(path);
  return parse_person_boxes(in, dims);
}

void write_person_boxes(std::ostream& out, std::span<const PersonBoxes> persons) {
  for (const auto& p : persons) write_box_records(out, p.frame_index, "persons", p.boxes);
}

void write_person_boxes(const fs::path& path, std::span<const PersonBoxes> persons) {
  auto out = open_out(path);
  write_person_boxes(out, persons);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace gw
