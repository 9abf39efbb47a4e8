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

#ifndef SWMOT_ASSOCIATION_H_
#define SWMOT_ASSOCIATION_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "swmot/geometry.h"
#include "swmot/hungarian.h"
#include "swmot/motio.h"

namespace swmot {

// Grid layout of a response map over a search region. Cell (col, row) sits
// at the center of its slice of the region; its box is template-sized.
struct HeatMapGeometry {
  int width = 31;
  int height = 31;
  BBox region;
  double template_w = 1.0;
  double template_h = 1.0;

  int cell_count() const { return width * height; }
  double CellX(int col) const;
  double CellY(int row) const;
  BBox CellBox(int col, int row) const;
  BBox CellBox(int index) const { return CellBox(index % width, index / width); }
};

// Search region of twice the template size centered on the target's box.
HeatMapGeometry SearchRegionFor(const BBox& target, int width = 31,
                                int height = 31);

// Row-major response grid with values in [0, 1].
struct HeatMap {
  HeatMapGeometry geometry;
  std::vector<double> values;

  double at(int col, int row) const { return values[row * geometry.width + col]; }
  // First cell (row-major) holding the maximum response.
  int ArgMax() const;
  // Throws DataError when the grid size or a value is invalid.
  void Validate() const;
};

// Cell value = IoU of the template-sized box at the cell with d.
HeatMap DetectionHeatmap(const HeatMapGeometry& geometry, const BBox& d);

struct TrackState {
  int id = 0;
  BBox box;
  double conf = 1.0;
  std::optional<Feature> feature;
  std::optional<Feature> hist_feature;
  int lost_frames = 0;
};

struct SwitcherInfo {
  bool present = false;
  std::optional<int> track_id;
  std::optional<Feature> feature;
  std::optional<Feature> hist_feature;
  std::optional<BBox> position;
};

struct HeatMapPeaks {
  int best = -1;
  // Strongest cell whose template box overlaps the best one's box with
  // IoU below 0.5.
  std::optional<int> second;
};

HeatMapPeaks FindPeaks(const HeatMap& map);

// Potential temporal switcher: when the second peak responds above 0.5, the
// previous-frame track whose center is nearest to it. Tracks with
// exclude_id (the target itself) are never chosen.
SwitcherInfo FindPotentialSwitcher(const HeatMap& map,
                                   std::span<const TrackState> prev_tracks,
                                   std::optional<int> exclude_id = std::nullopt);

struct MatchQuery {
  TrackState target;
  Detection detection;
  SwitcherInfo switcher;
  std::optional<HeatMap> switcher_map;
  std::optional<HeatMap> detection_map;
};

// Decision maker producing a matching probability in [0, 1].
class MatchScorer {
 public:
  virtual ~MatchScorer() = default;
  virtual double Score(const MatchQuery& q) const = 0;
  virtual std::string name() const = 0;
};

// Box overlap only; needs no features.
class IouScorer final : public MatchScorer {
 public:
  double Score(const MatchQuery& q) const override;
  std::string name() const override { return "iou"; }
};

// Logistic model over appearance cosines and box overlap:
//   w1 cos(X, D) + w2 cos(hist X, D) - w3 cos(S, D) - w4 cos(hist S, D)
//   + w5 IoU(X, D) + bias
// Switcher terms vanish when no switcher is present or it has no feature;
// missing history vectors fall back to the current ones. Throws DataError
// when the target or detection has no feature.
class ReferenceScorer final : public MatchScorer {
 public:
  struct Weights {
    double target = 2.0;
    double target_history = 1.0;
    double switcher = 1.0;
    double switcher_history = 0.5;
    double iou = 1.0;
    double bias = -1.5;
  };

  ReferenceScorer() = default;
  explicit ReferenceScorer(Weights w) : weights_(w) {}

  double Score(const MatchQuery& q) const override;
  std::string name() const override { return "reference"; }
  const Weights& weights() const { return weights_; }

 private:
  Weights weights_;
};

double Logistic(double x);

// IoU of target and detection when neither a switcher nor maps are present;
// otherwise the scorer's output clamped to [0, 1]. Scorer exceptions are
// rethrown as DataError carrying the target id and detection frame.
double MatchProbability(const MatchQuery& q, const MatchScorer& scorer);

// Provides the switcher heat map of a track for a frame.
class HeatMapSource {
 public:
  virtual ~HeatMapSource() = default;
  virtual std::optional<HeatMap> Lookup(int frame,
                                        const TrackState& track) const = 0;
};

// Binary sidecar, little-endian:
//   "SWHM" | u32 version (1) | u32 grid_w | u32 grid_h
//   then records of u32 frame | u32 id | grid_w * grid_h float32 (row-major)
// until end of file. The grid covers SearchRegionFor(track box at T-1).
class HeatMapSidecar final : public HeatMapSource {
 public:
  static constexpr std::uint32_t kVersion = 1;

  HeatMapSidecar(int width, int height) : width_(width), height_(height) {}

  static HeatMapSidecar Parse(std::string_view bytes);
  static HeatMapSidecar Load(const std::filesystem::path& path);
  std::string Serialize() const;

  // Throws DataError when values has the wrong size or leaves [0, 1].
  void Add(int frame, int id, std::vector<float> values);

  std::optional<HeatMap> Lookup(int frame,
                                const TrackState& track) const override;

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return records_.size(); }

 private:
  int width_;
  int height_;
  std::map<std::pair<int, int>, std::vector<float>> records_;
};

}  // namespace swmot

#endif  // SWMOT_ASSOCIATION_H_
