#include "gw/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>

#include "gw/error.hpp"

namespace gw {

double precision(const EvalCounts& c) noexcept {
  if (c.tp + c.fp == 0) return c.fn == 0 ? 1.0 : 0.0;
  return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
}

double recall(const EvalCounts& c) noexcept {
  if (c.tp + c.fn == 0) return c.fp == 0 ? 1.0 : 0.0;
  return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
}

double iou(const BoundingBox& a, const BoundingBox& b) noexcept {
  const std::int64_t inter = intersection_area(a, b);
  const std::int64_t uni = a.area() + b.area() - inter;
  if (uni <= 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

void check_tau(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw InputError("IoU threshold must lie in (0,1), got " + std::to_string(tau));
}

}  // namespace

FrameMatch match_frame(std::span<const BoundingBox> dets, std::span<const BoundingBox> gts, double tau) {
  check_tau(tau);
  struct Candidate {
    double iou;
    std::size_t det;
    std::size_t gt;
  };
  std::vector<Candidate> candidates;
  for (std::size_t d = 0; d < dets.size(); ++d) {
    for (std::size_t g = 0; g < gts.size(); ++g) {
      const double v = iou(dets[d], gts[g]);
      if (v >= tau) candidates.push_back({v, d, g});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    if (a.det != b.det) return a.det < b.det;
    return a.gt < b.gt;
  });

  FrameMatch result;
  std::vector<bool> det_used(dets.size(), false);
  std::vector<bool> gt_used(gts.size(), false);
  for (const Candidate& c : candidates) {
    if (det_used[c.det] || gt_used[c.gt]) continue;
    det_used[c.det] = true;
    gt_used[c.gt] = true;
    result.pairs.emplace_back(c.det, c.gt);
    result.matched_iou.push_back(c.iou);
  }
  result.counts.tp = static_cast<std::int64_t>(result.pairs.size());
  result.counts.fp = static_cast<std::int64_t>(dets.size()) - result.counts.tp;
  result.counts.fn = static_cast<std::int64_t>(gts.size()) - result.counts.tp;
  return result;
}

namespace {

struct FramePair {
  std::vector<BoundingBox> dets;
  std::vector<BoundingBox> gts;
};

std::map<long, FramePair> reconcile(const std::vector<Detection>& detections,
                                    const std::vector<Annotation>& annotations) {
  std::map<long, FramePair> frames;
  for (const auto& d : detections) frames[d.frame_index].dets.push_back(d.box);
  long last = -1;
  for (const auto& a : annotations) {
    if (a.frame_index <= last) {
      throw InputError("annotation frame " + std::to_string(a.frame_index) + " repeated or out of order");
    }
    last = a.frame_index;
    auto& gts = frames[a.frame_index].gts;
    gts.insert(gts.end(), a.boxes.begin(), a.boxes.end());
  }
  return frames;
}

EvalReport evaluate_frames(const std::map<long, FramePair>& frames, double tau) {
  EvalReport report;
  report.threshold = tau;
  double iou_sum = 0.0;
  std::size_t matched = 0;
  for (const auto& [index, pair] : frames) {
    const FrameMatch m = match_frame(pair.dets, pair.gts, tau);
    report.counts += m.counts;
    for (double v : m.matched_iou) iou_sum += v;
    matched += m.matched_iou.size();
  }
  report.precision = precision(report.counts);
  report.recall = recall(report.counts);
  report.mean_iou = matched == 0 ? 0.0 : iou_sum / static_cast<double>(matched);
  report.curve.push_back({tau, report.precision, report.recall});
  return report;
}

}  // namespace

EvalReport evaluate(const std::vector<Detection>& detections, const std::vector<Annotation>& annotations,
                    double tau) {
  check_tau(tau);
  return evaluate_frames(reconcile(detections, annotations), tau);
}

std::vector<CurvePoint> pr_curve(const std::vector<Detection>& detections,
                                 const std::vector<Annotation>& annotations, std::span<const double> taus) {
  for (std::size_t i = 0; i < taus.size(); ++i) {
    check_tau(taus[i]);
    if (i > 0 && taus[i] < taus[i - 1]) throw InputError("IoU thresholds must be sorted ascending");
  }
  const auto frames = reconcile(detections, annotations);
  std::vector<CurvePoint> curve;
  curve.reserve(taus.size());
  for (double tau : taus) curve.push_back(evaluate_frames(frames, tau).curve.front());
  return curve;
}

std::vector<double> tau_sweep(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) throw InputError("tau sweep needs step > 0 and stop >= start");
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> taus;
  taus.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) taus.push_back(std::round((start + i * step) * 1e9) / 1e9);
  return taus;
}

namespace {

std::string fmt_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve) {
  out << "tau,precision,recall\n";
  for (const auto& p : curve) {
    out << fmt_real(p.tau) << ',' << fmt_real(p.precision) << ',' << fmt_real(p.recall) << '\n';
  }
}

void write_counts_summary(std::ostream& out, const EvalReport& report) {
  out << "tp,fp,fn,precision,recall,mean_iou\n"
      << report.counts.tp << ',' << report.counts.fp << ',' << report.counts.fn << ','
      << fmt_real(report.precision) << ',' << fmt_real(report.recall) << ',' << fmt_real(report.mean_iou)
      << '\n';
}

}  // namespace gw
