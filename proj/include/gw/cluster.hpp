#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gw/boxes.hpp"
#include "gw/regions.hpp"

namespace gw {

struct RegionCluster {
  std::vector<std::size_t> members;  // indices into the clustered contour list
  BoundingBox bbox;                  // union of member boxes
  std::string color_label;
  std::int64_t total_area = 0;
};

// Euclidean gap between two boxes; 0 when they overlap or touch.
double box_gap(const BoundingBox& a, const BoundingBox& b) noexcept;

// Single-linkage grouping: contours whose boxes lie within gap_threshold of
// each other end up in the same cluster. Ordered by (bbox.y, bbox.x).
std::vector<RegionCluster> cluster_contours(const std::vector<Contour>& contours,
                                            const std::string& color_label,
                                            double gap_threshold);

// Area of `box` covered by the union of `cover` boxes.
std::int64_t covered_area(const BoundingBox& box, const std::vector<BoundingBox>& cover);

// Drops clusters whose box is covered by person boxes for at least
// containment_min of its area. Clusters with no overlap are always kept.
std::vector<RegionCluster> exclude_persons(std::vector<RegionCluster> clusters,
                                           const PersonBoxes& persons, double containment_min);

std::vector<Detection> to_detections(const std::vector<RegionCluster>& clusters, long frame_index,
                                     std::int64_t frame_area);

}  // namespace gw
