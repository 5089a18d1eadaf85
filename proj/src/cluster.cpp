#include "gw/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gw/disjoint_set.hpp"
#include "gw/error.hpp"

namespace gw {

double box_gap(const BoundingBox& a, const BoundingBox& b) noexcept {
  const double dx = std::max({0, b.x - a.right(), a.x - b.right()});
  const double dy = std::max({0, b.y - a.bottom(), a.y - b.bottom()});
  return std::sqrt(dx * dx + dy * dy);
}

std::vector<RegionCluster> cluster_contours(const std::vector<Contour>& contours,
                                            const std::string& color_label, double gap_threshold) {
  if (!(gap_threshold >= 0.0)) throw ConfigError("gap_threshold must be >= 0");
  DisjointSet sets(contours.size());
  for (std::size_t i = 0; i < contours.size(); ++i) {
    for (std::size_t j = i + 1; j < contours.size(); ++j) {
      if (box_gap(contours[i].bbox, contours[j].bbox) <= gap_threshold) sets.unite(i, j);
    }
  }

  std::map<std::size_t, std::size_t> root_to_cluster;
  std::vector<RegionCluster> clusters;
  for (std::size_t i = 0; i < contours.size(); ++i) {
    const std::size_t root = sets.find(i);
    auto [it, inserted] = root_to_cluster.try_emplace(root, clusters.size());
    if (inserted) {
      clusters.push_back({{}, contours[i].bbox, color_label, 0});
    }
    RegionCluster& c = clusters[it->second];
    c.members.push_back(i);
    c.bbox = box_union(c.bbox, contours[i].bbox);
    c.total_area += contours[i].area;
  }
  std::stable_sort(clusters.begin(), clusters.end(), [](const RegionCluster& a, const RegionCluster& b) {
    if (a.bbox.y != b.bbox.y) return a.bbox.y < b.bbox.y;
    return a.bbox.x < b.bbox.x;
  });
  return clusters;
}

std::int64_t covered_area(const BoundingBox& box, const std::vector<BoundingBox>& cover) {
  // Clip to `box`, then sum the union over the grid induced by all edges.
  std::vector<BoundingBox> clipped;
  std::vector<int> xs{box.x, box.right()};
  std::vector<int> ys{box.y, box.bottom()};
  for (const auto& c : cover) {
    const int x0 = std::max(box.x, c.x);
    const int y0 = std::max(box.y, c.y);
    const int x1 = std::min(box.right(), c.right());
    const int y1 = std::min(box.bottom(), c.bottom());
    if (x1 <= x0 || y1 <= y0) continue;
    clipped.push_back({x0, y0, x1 - x0, y1 - y0});
    xs.insert(xs.end(), {x0, x1});
    ys.insert(ys.end(), {y0, y1});
  }
  if (clipped.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  std::int64_t area = 0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
      const bool hit = std::any_of(clipped.begin(), clipped.end(), [&](const BoundingBox& c) {
        return c.x <= xs[i] && xs[i + 1] <= c.right() && c.y <= ys[j] && ys[j + 1] <= c.bottom();
      });
      if (hit) area += static_cast<std::int64_t>(xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
    }
  }
  return area;
}

std::vector<RegionCluster> exclude_persons(std::vector<RegionCluster> clusters,
                                           const PersonBoxes& persons, double containment_min) {
  if (!(containment_min >= 0.0 && containment_min <= 1.0)) {
    throw ConfigError("containment_min must lie in [0,1]");
  }
  if (persons.boxes.empty()) return clusters;
  std::erase_if(clusters, [&](const RegionCluster& c) {
    const std::int64_t inside = covered_area(c.bbox, persons.boxes);
    return inside > 0 && static_cast<double>(inside) >= containment_min * static_cast<double>(c.bbox.area());
  });
  return clusters;
}

std::vector<Detection> to_detections(const std::vector<RegionCluster>& clusters, long frame_index,
                                     std::int64_t frame_area) {
  if (frame_area <= 0) throw ShapeError("frame_area must be > 0");
  std::vector<Detection> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) {
    const double score = std::clamp(static_cast<double>(c.total_area) / static_cast<double>(frame_area), 0.0, 1.0);
    out.push_back({frame_index, c.bbox, c.color_label, score});
  }
  return out;
}

}  // namespace gw
