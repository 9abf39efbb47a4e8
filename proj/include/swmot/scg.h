/* Copyright 2026 The swmot Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SWMOT_SCG_H_
#define SWMOT_SCG_H_

#include <span>
#include <vector>

#include "swmot/geometry.h"
#include "swmot/motio.h"

namespace swmot {

// Spatial conflict graph settings. alpha weighs occlusion against appearance
// in the conflict score; beta weighs temporal consistency against detector
// confidence in the node score.
struct ScgConfig {
  double alpha = 0.5;
  double beta = 0.5;
  double edge_iou_threshold = 0.3;
  int exact_component_limit = 16;

  // Throws ConfigError when a field is out of range.
  void Validate() const;
  friend bool operator==(const ScgConfig&, const ScgConfig&) = default;
};

// Per-frame graph over detections. Node scores are non-negative, conflict
// scores non-positive; edges are undirected with u < v and unique.
struct ConflictGraph {
  struct Node {
    int detection_index = 0;
    double score = 0.0;
  };
  struct Edge {
    int u = 0;
    int v = 0;
    double conflict = 0.0;
  };
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

// Occlusion ratio of the occludee's core covered by the other core. The
// occludee is the box with the smaller bottom coordinate; on a tie, the box
// with the smaller area. Symmetric in its arguments and never above 1.
double OcclusionConfidence(const BBox& u, const BBox& v);

// Cosine similarity of two non-zero vectors of equal dimension.
double CosineSimilarity(std::span<const double> a, std::span<const double> b);

// -alpha * M - (1 - alpha) * A. A is the feature cosine or, when neither
// detection carries a feature, their IoU; it is clamped to [0, 1] so the
// result is never positive. Throws DataError when only one side has a
// feature.
double ConflictScore(const Detection& u, const Detection& v, double alpha);

// beta * (max IoU against the previous frame) + (1 - beta) * clamp(score).
double NodeScore(const Detection& v, std::span<const BBox> prev_frame_boxes,
                 double beta);

// Edge (u, v) iff the cores intersect or IoU exceeds edge_iou_threshold.
ConflictGraph BuildConflictGraph(std::span<const Detection> dets,
                                 std::span<const BBox> prev_frame_boxes,
                                 const ScgConfig& cfg);

struct SubgraphSolution {
  // Selected node indices, ascending.
  std::vector<int> nodes;
  double objective = 0.0;
  // True when some component exceeded exact_component_limit and was solved
  // greedily.
  bool approximate = false;
  int largest_component = 0;
};

// Sum of conflict scores on edges inside the subset plus squared node
// scores of its members. The subset must be sorted ascending.
double SubgraphObjective(const ConflictGraph& g, std::span<const int> nodes);

// Connected components as ascending node lists, ordered by smallest member.
std::vector<std::vector<int>> ConnectedComponents(const ConflictGraph& g);

// Maximizes SubgraphObjective independently on every connected component.
// Components up to exact_component_limit nodes are enumerated exhaustively;
// ties go to the larger subset, then the lexicographically smallest one.
SubgraphSolution OptimalSubgraph(const ConflictGraph& g, const ScgConfig& cfg);

// Convenience: detections of one frame that survive conflict resolution, in
// their original order.
std::vector<Detection> RefineDetections(std::span<const Detection> dets,
                                        std::span<const BBox> prev_frame_boxes,
                                        const ScgConfig& cfg);

}  // namespace swmot

#endif  // SWMOT_SCG_H_
