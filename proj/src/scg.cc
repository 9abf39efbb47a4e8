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

#include "swmot/scg.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "swmot/errors.h"

namespace swmot {
namespace {

constexpr int kMaxExactComponent = 20;

bool InUnitInterval(double v) { return v >= 0.0 && v <= 1.0; }

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<int> parent_;
};

// Dense local view of one component: squared node scores and a symmetric
// conflict matrix.
struct LocalComponent {
  std::vector<int> nodes;
  std::vector<double> node_sq;
  std::vector<double> conflict;  // k * k
  std::vector<std::uint32_t> adjacency;

  int size() const { return static_cast<int>(nodes.size()); }
  double c(int i, int j) const { return conflict[i * size() + j]; }
};

// Same-size subsets: the one holding the lowest differing member is
// lexicographically smaller as a sorted list.
bool LexSmaller(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t diff = a ^ b;
  if (diff == 0) return false;
  return (a & (diff & -diff)) != 0;
}

bool Better(double score, std::uint32_t mask, double best_score,
            std::uint32_t best_mask) {
  if (score != best_score) return score > best_score;
  const int pc = std::popcount(mask);
  const int best_pc = std::popcount(best_mask);
  if (pc != best_pc) return pc > best_pc;
  return LexSmaller(mask, best_mask);
}

std::uint32_t SolveExact(const LocalComponent& comp) {
  const int k = comp.size();
  const std::uint32_t total = std::uint32_t{1} << k;
  std::vector<double> score(total, 0.0);
  double best_score = 0.0;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    const int i = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    double s = score[rest] + comp.node_sq[i];
    for (std::uint32_t nb = rest & comp.adjacency[i]; nb != 0; nb &= nb - 1) {
      s += comp.c(i, std::countr_zero(nb));
    }
    score[mask] = s;
    if (Better(s, mask, best_score, best_mask)) {
      best_score = s;
      best_mask = mask;
    }
  }
  return best_mask;
}

std::vector<int> SolveGreedy(const LocalComponent& comp) {
  const int k = comp.size();
  std::vector<double> gain(comp.node_sq);
  std::vector<bool> taken(k, false);
  std::vector<int> chosen;
  while (true) {
    int pick = -1;
    for (int i = 0; i < k; ++i) {
      if (taken[i]) continue;
      if (pick < 0 || gain[i] > gain[pick]) pick = i;
    }
    if (pick < 0 || gain[pick] < 0.0) break;
    taken[pick] = true;
    chosen.push_back(pick);
    for (int i = 0; i < k; ++i) {
      if (!taken[i]) gain[i] += comp.c(pick, i);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

void ScgConfig::Validate() const {
  if (!InUnitInterval(alpha)) throw ConfigError("scg.alpha must be in [0,1]");
  if (!InUnitInterval(beta)) throw ConfigError("scg.beta must be in [0,1]");
  if (!InUnitInterval(edge_iou_threshold)) {
    throw ConfigError("scg.edge_iou_threshold must be in [0,1]");
  }
  if (exact_component_limit < 1 || exact_component_limit > kMaxExactComponent) {
    throw ConfigError("scg.exact_component_limit must be in [1," +
                      std::to_string(kMaxExactComponent) + "]");
  }
}

double OcclusionConfidence(const BBox& u, const BBox& v) {
  const BBox cu = Core(u);
  const BBox cv = Core(v);
  const BBox* occludee = nullptr;
  if (u.bottom() < v.bottom()) {
    occludee = &cu;
  } else if (v.bottom() < u.bottom()) {
    occludee = &cv;
  } else {
    occludee = cu.area() <= cv.area() ? &cu : &cv;
  }
  const double ratio = IntersectionArea(cu, cv) / occludee->area();
  return std::clamp(ratio, 0.0, 1.0);
}

double CosineSimilarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DataError("feature dimension mismatch");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (!(na > 0.0) || !(nb > 0.0)) throw DataError("zero-length feature");
  return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

double ConflictScore(const Detection& u, const Detection& v, double alpha) {
  if (u.feature.has_value() != v.feature.has_value()) {
    throw DataError("conflict score needs features on both detections or on "
                    "neither");
  }
  const double occlusion = OcclusionConfidence(u.box, v.box);
  const double appearance = u.feature ? CosineSimilarity(*u.feature, *v.feature)
                                      : Iou(u.box, v.box);
  const double a = std::clamp(appearance, 0.0, 1.0);
  return -alpha * occlusion - (1.0 - alpha) * a;
}

double NodeScore(const Detection& v, std::span<const BBox> prev_frame_boxes,
                 double beta) {
  double consistency = 0.0;
  for (const BBox& b : prev_frame_boxes) {
    consistency = std::max(consistency, Iou(b, v.box));
  }
  const double confidence = std::clamp(v.score, 0.0, 1.0);
  return beta * consistency + (1.0 - beta) * confidence;
}

ConflictGraph BuildConflictGraph(std::span<const Detection> dets,
                                 std::span<const BBox> prev_frame_boxes,
                                 const ScgConfig& cfg) {
  ConflictGraph g;
  const int n = static_cast<int>(dets.size());
  g.nodes.reserve(n);
  for (int i = 0; i < n; ++i) {
    g.nodes.push_back({i, NodeScore(dets[i], prev_frame_boxes, cfg.beta)});
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const BBox& a = dets[u].box;
      const BBox& b = dets[v].box;
      const bool cores_meet = IntersectionArea(Core(a), Core(b)) > 0.0;
      if (cores_meet || Iou(a, b) > cfg.edge_iou_threshold) {
        g.edges.push_back({u, v, ConflictScore(dets[u], dets[v], cfg.alpha)});
      }
    }
  }
  return g;
}

double SubgraphObjective(const ConflictGraph& g, std::span<const int> nodes) {
  double total = 0.0;
  for (int v : nodes) total += g.nodes[v].score * g.nodes[v].score;
  for (const auto& e : g.edges) {
    if (std::binary_search(nodes.begin(), nodes.end(), e.u) &&
        std::binary_search(nodes.begin(), nodes.end(), e.v)) {
      total += e.conflict;
    }
  }
  return total;
}

std::vector<std::vector<int>> ConnectedComponents(const ConflictGraph& g) {
  const int n = static_cast<int>(g.nodes.size());
  DisjointSets sets(n);
  for (const auto& e : g.edges) sets.Union(e.u, e.v);
  std::vector<int> slot(n, -1);
  std::vector<std::vector<int>> components;
  for (int v = 0; v < n; ++v) {
    const int root = sets.Find(v);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(components.size());
      components.emplace_back();
    }
    components[slot[root]].push_back(v);
  }
  return components;
}

SubgraphSolution OptimalSubgraph(const ConflictGraph& g,
                                 const ScgConfig& cfg) {
  const int n = static_cast<int>(g.nodes.size());
  const int limit = std::min(cfg.exact_component_limit, kMaxExactComponent);
  SubgraphSolution solution;

  const auto components = ConnectedComponents(g);
  std::vector<int> local_index(n, -1);
  std::vector<int> component_of(n, -1);
  for (int c = 0; c < static_cast<int>(components.size()); ++c) {
    for (int i = 0; i < static_cast<int>(components[c].size()); ++i) {
      local_index[components[c][i]] = i;
      component_of[components[c][i]] = c;
    }
  }
  std::vector<std::vector<const ConflictGraph::Edge*>> edges_of(
      components.size());
  for (const auto& e : g.edges) edges_of[component_of[e.u]].push_back(&e);

  for (int c = 0; c < static_cast<int>(components.size()); ++c) {
    const auto& members = components[c];
    const int k = static_cast<int>(members.size());
    solution.largest_component = std::max(solution.largest_component, k);
    if (k == 1) {
      // Isolated node: keeping it never lowers the objective.
      solution.nodes.push_back(members[0]);
      continue;
    }
    LocalComponent comp;
    comp.nodes = members;
    comp.node_sq.resize(k);
    for (int i = 0; i < k; ++i) {
      const double s = g.nodes[members[i]].score;
      comp.node_sq[i] = s * s;
    }
    comp.conflict.assign(static_cast<std::size_t>(k) * k, 0.0);
    comp.adjacency.assign(k, 0);
    for (const auto* e : edges_of[c]) {
      const int i = local_index[e->u];
      const int j = local_index[e->v];
      comp.conflict[i * k + j] += e->conflict;
      comp.conflict[j * k + i] += e->conflict;
      if (k <= 32) {
        comp.adjacency[i] |= std::uint32_t{1} << j;
        comp.adjacency[j] |= std::uint32_t{1} << i;
      }
    }
    if (k <= limit) {
      const std::uint32_t mask = SolveExact(comp);
      for (int i = 0; i < k; ++i) {
        if (mask & (std::uint32_t{1} << i)) solution.nodes.push_back(members[i]);
      }
    } else {
      solution.approximate = true;
      for (int i : SolveGreedy(comp)) solution.nodes.push_back(members[i]);
    }
  }
  std::sort(solution.nodes.begin(), solution.nodes.end());
  solution.objective = SubgraphObjective(g, solution.nodes);
  return solution;
}

std::vector<Detection> RefineDetections(std::span<const Detection> dets,
                                        std::span<const BBox> prev_frame_boxes,
                                        const ScgConfig& cfg) {
  const ConflictGraph g = BuildConflictGraph(dets, prev_frame_boxes, cfg);
  const SubgraphSolution solution = OptimalSubgraph(g, cfg);
  std::vector<Detection> kept;
  kept.reserve(solution.nodes.size());
  for (int v : solution.nodes) kept.push_back(dets[g.nodes[v].detection_index]);
  return kept;
}

}  // namespace swmot
