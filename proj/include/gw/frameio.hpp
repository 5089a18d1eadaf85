#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gw/boxes.hpp"
#include "gw/image.hpp"

namespace gw {

// Sequential frame iterator. Yields frames in ascending index order with
// constant dimensions; returns nullopt once exhausted.
class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual std::optional<Frame> next() = 0;
};

// In-memory source, mostly for tests and tooling.
class VectorFrameSource : public FrameSource {
 public:
  explicit VectorFrameSource(std::vector<Frame> frames) : frames_(std::move(frames)) {}
  std::optional<Frame> next() override;

 private:
  std::vector<Frame> frames_;
  std::size_t pos_ = 0;
};

// "frame_NNNNNN.ppm" for a 0-based index.
std::string frame_filename(long index);

Frame parse_ppm(std::istream& in, long index = 0);
Frame read_ppm(const std::filesystem::path& path, long index = 0);
void write_ppm(std::ostream& out, const Frame& frame);
void write_ppm(const std::filesystem::path& path, const Frame& frame);

// Directory of frame_NNNNNN.ppm files, contiguous from 000000. The gap check
// runs when the reader is constructed.
class PpmSequenceReader : public FrameSource {
 public:
  explicit PpmSequenceReader(std::filesystem::path dir);
  std::optional<Frame> next() override;
  std::size_t size() const noexcept { return count_; }

 private:
  std::filesystem::path dir_;
  std::size_t count_ = 0;
  std::size_t pos_ = 0;
  int width_ = 0;
  int height_ = 0;
};

struct RawStreamHeader {
  int width = 0;
  int height = 0;
  int fps = 0;
  std::uint64_t nframes = 0;

  std::uint64_t frame_bytes() const noexcept {
    return static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height) * 3;
  }
};

// GWVS1 container: "GWVS1 <w> <h> <fps> <nframes>\n" followed by raw RGB frames.
class RawStreamReader : public FrameSource {
 public:
  explicit RawStreamReader(std::istream& in);
  explicit RawStreamReader(const std::filesystem::path& path);

  const RawStreamHeader& header() const noexcept { return header_; }
  std::optional<Frame> next() override;

 private:
  void read_header();

  std::unique_ptr<std::istream> owned_;
  std::istream* in_;
  RawStreamHeader header_;
  std::uint64_t pos_ = 0;
};

class RawStreamWriter {
 public:
  RawStreamWriter(std::ostream& out, RawStreamHeader header);
  void write(const Frame& frame);
  // Throws if fewer frames were written than the header promised.
  void finish() const;

 private:
  std::ostream& out_;
  RawStreamHeader header_;
  std::uint64_t written_ = 0;
};

// Directory -> PPM sequence, regular file -> GWVS1 stream.
std::unique_ptr<FrameSource> open_frame_source(const std::filesystem::path& path);

struct FrameDims {
  int width = 0;
  int height = 0;
};

// JSON Lines records. Frame indices must be strictly increasing. When dims is
// given, every box must lie inside the frame.
std::vector<Annotation> parse_annotations(std::istream& in,
                                          std::optional<FrameDims> dims = std::nullopt);
std::vector<Annotation> read_annotations(const std::filesystem::path& path,
                                         std::optional<FrameDims> dims = std::nullopt);
void write_annotations(std::ostream& out, std::span<const Annotation> annotations);
void write_annotations(const std::filesystem::path& path, std::span<const Annotation> annotations);

// One line per frame that has detections; boxes carry "color" and "score".
void write_detections(std::ostream& out, std::span<const Detection> detections);
void write_detections(const std::filesystem::path& path, std::span<const Detection> detections);
std::vector<Detection> parse_detections(std::istream& in);
std::vector<Detection> read_detections(const std::filesystem::path& path);

std::vector<PersonBoxes> parse_person_boxes(std::istream& in,
                                            std::optional<FrameDims> dims = std::nullopt);
std::vector<PersonBoxes> read_person_boxes(const std::filesystem::path& path,
                                           std::optional<FrameDims> dims = std::nullopt);
void write_person_boxes(std::ostream& out, std::span<const PersonBoxes> persons);
void write_person_boxes(const std::filesystem::path& path, std::span<const PersonBoxes> persons);

}  // namespace gw
