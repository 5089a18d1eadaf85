#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "gw/boxes.hpp"

namespace gw {

struct EvalCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  EvalCounts& operator+=(const EvalCounts& o) noexcept {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const EvalCounts&, const EvalCounts&) = default;
};

// tp/(tp+fp) and tp/(tp+fn). A zero denominator yields 1.0 when the other
// side is empty as well (nothing to find, nothing claimed) and 0.0 otherwise.
double precision(const EvalCounts& c) noexcept;
double recall(const EvalCounts& c) noexcept;

double iou(const BoundingBox& a, const BoundingBox& b) noexcept;

struct FrameMatch {
  EvalCounts counts;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (det, gt) true positives
  std::vector<double> matched_iou;                         // parallel to pairs
};

// Greedy one-to-one matching: highest IoU first, ties by (det, gt) index.
// Pairs below tau never match.
FrameMatch match_frame(std::span<const BoundingBox> dets, std::span<const BoundingBox> gts, double tau);

struct CurvePoint {
  double tau = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

struct EvalReport {
  EvalCounts counts;
  double precision = 0.0;
  double recall = 0.0;
  double mean_iou = 0.0;  // over matched pairs only; 0 without matches
  double threshold = 0.0;
  std::vector<CurvePoint> curve;
};

// Frames present on only one side count against an empty list on the other.
EvalReport evaluate(const std::vector<Detection>& detections, const std::vector<Annotation>& annotations,
                    double tau);

std::vector<CurvePoint> pr_curve(const std::vector<Detection>& detections,
                                 const std::vector<Annotation>& annotations, std::span<const double> taus);

// Inclusive arithmetic sweep, e.g. (0.05, 0.95, 0.05) -> 19 values, each
// rounded to 1e-9 so accumulated error cannot shift a threshold.
std::vector<double> tau_sweep(double start, double stop, double step);

// "tau,precision,recall" header plus one row per point.
void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve);
// "tp,fp,fn,precision,recall,mean_iou" header plus one row.
void write_counts_summary(std::ostream& out, const EvalReport& report);

}  // namespace gw
