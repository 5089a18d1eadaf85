#include <functional>
#include <sstream>

#include "doctest.h"
#include "gw/error.hpp"
#include "gw/eval.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace gw;
using gw::testing::Rng;
using namespace gw::testing;

namespace {


// Largest number of disjoint (det, gt) pairs with IoU >= tau.
int optimal_tp(const std::vector<BoundingBox>& dets, const std::vector<BoundingBox>& gts, double tau) {
  std::vector<bool> used(gts.size(), false);
  std::function<int(std::size_t)> best = [&](std::size_t d) -> int {
    if (d == dets.size()) return 0;
    int result = best(d + 1);
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (used[g] || raster_iou(dets[d], gts[g]) < tau) continue;
      used[g] = true;
      result = std::max(result, 1 + best(d + 1));
      used[g] = false;
    }
    return result;
  };
  return best(0);
}

}  // namespace

TEST_CASE("iou basics") {
  CHECK(iou({1, 2, 3, 4}, {1, 2, 3, 4}) == 1.0);
  CHECK(iou({0, 0, 5, 5}, {10, 10, 5, 5}) == 0.0);
  CHECK(iou({0, 0, 5, 5}, {5, 0, 5, 5}) == 0.0);
  CHECK(iou({0, 0, 10, 10}, {5, 0, 10, 10}) == 1.0 / 3.0);
  CHECK(raster_iou({0, 0, 10, 10}, {5, 0, 10, 10}) == 1.0 / 3.0);
}

TEST_CASE("iou equals the rasterised pixel count exactly") {
  Rng rng(51);
  for (int i = 0; i < 1000; ++i) {
    const BoundingBox a = gw::testing::random_box(rng, 30, 20);
    const BoundingBox b = gw::testing::random_box(rng, 30, 20);
    const double v = iou(a, b);
    CHECK(v == raster_iou(a, b));
    CHECK(v == iou(b, a));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("precision and recall conventions") {
  CHECK(precision({82, 18, 18}) == doctest::Approx(0.82).epsilon(1e-12));
  CHECK(recall({82, 18, 18}) == doctest::Approx(0.82).epsilon(1e-12));
  CHECK(precision({0, 0, 0}) == 1.0);
  CHECK(recall({0, 0, 0}) == 1.0);
  CHECK(precision({0, 0, 3}) == 0.0);
  CHECK(recall({0, 0, 3}) == 0.0);
  CHECK(recall({0, 2, 0}) == 0.0);
}

TEST_CASE("match_frame simple cases") {
  const std::vector<BoundingBox> boxes{{0, 0, 10, 10}, {20, 20, 5, 5}, {40, 0, 8, 8}};
  const FrameMatch same = match_frame(boxes, boxes, 0.55);
  CHECK(same.counts == EvalCounts{3, 0, 0});
  for (double v : same.matched_iou) CHECK(v == 1.0);

  const std::vector<BoundingBox> one{{0, 0, 4, 4}};
  CHECK(match_frame(one, {}, 0.55).counts == EvalCounts{0, 1, 0});
  CHECK(match_frame({}, one, 0.55).counts == EvalCounts{0, 0, 1});
  CHECK_THROWS_AS(match_frame(one, one, 0.0), InputError);
  CHECK_THROWS_AS(match_frame(one, one, 1.0), InputError);
}

TEST_CASE("greedy matching diverges from the optimum on a pinned fixture") {
  const std::vector<BoundingBox> gts{{0, 0, 10, 10}, {3, 0, 10, 10}};
  const std::vector<BoundingBox> dets{{1, 0, 10, 10}, {0, 2, 10, 10}};
  const FrameMatch m = match_frame(dets, gts, 0.5);
  CHECK(m.counts == EvalCounts{1, 1, 1});
  REQUIRE(m.pairs.size() == 1);
  CHECK(m.pairs[0] == std::pair<std::size_t, std::size_t>{0, 0});
  CHECK(optimal_tp(dets, gts, 0.5) == 2);
}

TEST_CASE("greedy matching versus exhaustive search on random 5x5 instances") {
  Rng rng(52);
  const double taus[] = {0.3, 0.5, 0.55, 0.7};
  int divergent = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<BoundingBox> dets, gts;
    for (int i = 0; i < 5; ++i) {
      dets.push_back({rng.uniform(0, 20), rng.uniform(0, 20), rng.uniform(5, 15), rng.uniform(5, 15)});
      gts.push_back({rng.uniform(0, 20), rng.uniform(0, 20), rng.uniform(5, 15), rng.uniform(5, 15)});
    }
    const double tau = taus[rng.uniform(0, 3)];
    const FrameMatch m = match_frame(dets, gts, tau);
    const int best = optimal_tp(dets, gts, tau);
    CHECK(m.counts.tp <= best);
    CHECK(m.counts.tp + m.counts.fp == 5);
    CHECK(m.counts.tp + m.counts.fn == 5);
    for (std::size_t k = 0; k < m.pairs.size(); ++k) {
      CHECK(m.matched_iou[k] >= tau);
      CHECK(m.matched_iou[k] == iou(dets[m.pairs[k].first], gts[m.pairs[k].second]));
    }
    if (m.counts.tp != best) ++divergent;
  }
  // Frozen from the exhaustive oracle for this seed.
  CHECK(divergent == 5);
}

TEST_CASE("evaluate: perfect detections and the 82/18/18 split") {
  std::vector<Annotation> gts;
  std::vector<Detection> dets;
  for (long f = 0; f < 10; ++f) {
    Annotation a{f, {{int(f), 0, 10, 10}, {50, int(f), 7, 9}}};
    for (const auto& b : a.boxes) dets.push_back({f, b, "Red", 0.1});
    gts.push_back(a);
  }
  const EvalReport perfect = evaluate(dets, gts, 0.55);
  CHECK(perfect.precision == 1.0);
  CHECK(perfect.recall == 1.0);
  CHECK(perfect.mean_iou == 1.0);

  // 82 exact matches, 18 stray detections, 18 missed boxes.
  gts.clear();
  dets.clear();
  for (long f = 0; f < 100; ++f) {
    Annotation a{f, {}};
    if (f < 82) {
      a.boxes.push_back({10, 10, 20, 20});
      dets.push_back({f, {10, 10, 20, 20}, "Red", 0.1});
    } else {
      a.boxes.push_back({10, 10, 20, 20});
      dets.push_back({f, {200, 200, 20, 20}, "Red", 0.1});
    }
    gts.push_back(a);
  }
  const EvalReport r = evaluate(dets, gts, 0.55);
  CHECK(r.counts == EvalCounts{82, 18, 18});
  CHECK(std::fabs(r.precision - 0.82) <= 1e-9);
  CHECK(std::fabs(r.recall - 0.82) <= 1e-9);
  CHECK(r.mean_iou == 1.0);
  CHECK(r.threshold == 0.55);
}

TEST_CASE("evaluate: reconciliation and errors") {
  const std::vector<Detection> dets{{5, {0, 0, 4, 4}, "Red", 0.0}};
  const std::vector<Annotation> gts{{1, {{0, 0, 4, 4}}}};
  const EvalReport r = evaluate(dets, gts, 0.5);
  CHECK(r.counts == EvalCounts{0, 1, 1});
  CHECK(r.mean_iou == 0.0);
  CHECK(evaluate({}, gts, 0.5).recall == 0.0);
  const std::vector<Annotation> dup{{1, {}}, {1, {}}};
  CHECK_THROWS_AS(evaluate({}, dup, 0.5), InputError);
  const EvalReport empty = evaluate({}, {}, 0.5);
  CHECK(empty.precision == 1.0);
  CHECK(empty.recall == 1.0);
}

TEST_CASE("evaluate equals summed per-frame matches on random data") {
  Rng rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Detection> dets;
    std::vector<Annotation> gts;
    std::int64_t tp = 0, fp = 0, fn = 0;
    double iou_sum = 0.0;
    std::size_t matched = 0;
    for (long f = 0; f < 20; ++f) {
      std::vector<BoundingBox> fd, fg;
      for (int i = 0, n = rng.uniform(0, 4); i < n; ++i) fd.push_back(gw::testing::random_box(rng, 40, 20));
      for (int i = 0, n = rng.uniform(0, 4); i < n; ++i) fg.push_back(gw::testing::random_box(rng, 40, 20));
      for (const auto& b : fd) dets.push_back({f, b, "Blue", 0.0});
      if (!fg.empty() || rng.coin()) gts.push_back({f, fg});
      const FrameMatch m = match_frame(fd, fg, 0.4);
      tp += m.counts.tp;
      fp += m.counts.fp;
      fn += m.counts.fn;
      for (double v : m.matched_iou) iou_sum += v;
      matched += m.matched_iou.size();
    }
    const EvalReport r = evaluate(dets, gts, 0.4);
    CHECK(r.counts == EvalCounts{tp, fp, fn});
    if (tp + fp > 0) CHECK(r.precision == double(tp) / double(tp + fp));
    if (tp + fn > 0) CHECK(r.recall == double(tp) / double(tp + fn));
    CHECK(r.mean_iou == doctest::Approx(matched ? iou_sum / matched : 0.0).epsilon(1e-12));
  }
}

TEST_CASE("tau_sweep and pr_curve") {
  const auto taus = tau_sweep(0.05, 0.95, 0.05);
  REQUIRE(taus.size() == 19);
  CHECK(taus.front() == 0.05);
  CHECK(taus[2] == 0.15);
  CHECK(taus.back() == 0.95);

  std::vector<Annotation> gts{{0, {{0, 0, 10, 10}, {30, 30, 8, 8}}}};
  std::vector<Detection> dets{{0, {0, 0, 10, 10}, "Red", 0}, {0, {30, 30, 8, 8}, "Red", 0}};
  for (const auto& p : pr_curve(dets, gts, taus)) {
    CHECK(p.precision == 1.0);
    CHECK(p.recall == 1.0);
  }
  const std::vector<double> unsorted{0.5, 0.3};
  CHECK_THROWS_AS(pr_curve(dets, gts, unsorted), InputError);

  Rng rng(54);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Detection> d;
    std::vector<Annotation> g;
    for (long f = 0; f < 10; ++f) {
      Annotation a{f, {}};
      for (int i = 0, n = rng.uniform(0, 3); i < n; ++i) {
        const BoundingBox b = gw::testing::random_box(rng, 60, 20);
        a.boxes.push_back(b);
        // Jittered copy so IoUs spread over (0, 1].
        d.push_back({f, {b.x + rng.uniform(-4, 4), b.y + rng.uniform(-4, 4), b.w, b.h}, "Red", 0});
      }
      for (int i = 0, n = rng.uniform(0, 2); i < n; ++i) d.push_back({f, gw::testing::random_box(rng, 60, 20), "Red", 0});
      g.push_back(a);
    }
    const auto curve = pr_curve(d, g, taus);
    REQUIRE(curve.size() == 19);
    for (std::size_t i = 1; i < curve.size(); ++i) {
      CHECK(curve[i].precision <= curve[i - 1].precision);
      CHECK(curve[i].recall <= curve[i - 1].recall);
    }
  }
}

TEST_CASE("CSV and summary output") {
  std::ostringstream csv;
  const std::vector<CurvePoint> pts{{0.05, 1.0, 0.5}, {0.1, 0.82, 0.25}};
  write_curve_csv(csv, pts);
  CHECK(csv.str() == "tau,precision,recall\n0.05,1,0.5\n0.1,0.82,0.25\n");

  EvalReport r;
  r.counts = {82, 18, 18};
  r.precision = 0.82;
  r.recall = 0.82;
  r.mean_iou = 0.7081;
  std::ostringstream sum;
  write_counts_summary(sum, r);
  CHECK(sum.str() == "tp,fp,fn,precision,recall,mean_iou\n82,18,18,0.82,0.82,0.7081\n");
}
