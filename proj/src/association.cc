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

#include "swmot/association.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "swmot/errors.h"
#include "swmot/scg.h"

namespace swmot {
namespace {

constexpr double kPeakOverlapLimit = 0.5;
constexpr double kSwitcherResponse = 0.5;
constexpr char kMagic[4] = {'S', 'W', 'H', 'M'};

void PutU32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t GetU32(std::string_view bytes, std::size_t& pos) {
  if (pos + 4 > bytes.size()) throw DataError("heat-map sidecar truncated");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[pos + i]))
         << (8 * i);
  }
  pos += 4;
  return v;
}

}  // namespace

double HeatMapGeometry::CellX(int col) const {
  return region.x + (col + 0.5) * region.w / width;
}

double HeatMapGeometry::CellY(int row) const {
  return region.y + (row + 0.5) * region.h / height;
}

BBox HeatMapGeometry::CellBox(int col, int row) const {
  return BoxCenteredAt(CellX(col), CellY(row), template_w, template_h);
}

HeatMapGeometry SearchRegionFor(const BBox& target, int width, int height) {
  HeatMapGeometry g;
  g.width = width;
  g.height = height;
  g.region = BoxCenteredAt(target.center_x(), target.center_y(), 2.0 * target.w,
                           2.0 * target.h);
  g.template_w = target.w;
  g.template_h = target.h;
  return g;
}

int HeatMap::ArgMax() const {
  if (values.empty()) return -1;
  return static_cast<int>(std::max_element(values.begin(), values.end()) -
                          values.begin());
}

void HeatMap::Validate() const {
  if (geometry.width <= 0 || geometry.height <= 0) {
    throw DataError("heat map grid must be non-empty");
  }
  if (static_cast<int>(values.size()) != geometry.cell_count()) {
    throw DataError("heat map value count does not match its grid");
  }
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) throw DataError("heat map value outside [0,1]");
  }
}

HeatMap DetectionHeatmap(const HeatMapGeometry& geometry, const BBox& d) {
  HeatMap map;
  map.geometry = geometry;
  map.values.resize(geometry.cell_count());
  for (int row = 0; row < geometry.height; ++row) {
    for (int col = 0; col < geometry.width; ++col) {
      map.values[row * geometry.width + col] = Iou(geometry.CellBox(col, row), d);
    }
  }
  return map;
}

HeatMapPeaks FindPeaks(const HeatMap& map) {
  HeatMapPeaks peaks;
  peaks.best = map.ArgMax();
  if (peaks.best < 0) return peaks;
  const BBox best_box = map.geometry.CellBox(peaks.best);
  for (int i = 0; i < static_cast<int>(map.values.size()); ++i) {
    if (Iou(map.geometry.CellBox(i), best_box) >= kPeakOverlapLimit) continue;
    if (!peaks.second || map.values[i] > map.values[*peaks.second]) {
      peaks.second = i;
    }
  }
  return peaks;
}

SwitcherInfo FindPotentialSwitcher(const HeatMap& map,
                                   std::span<const TrackState> prev_tracks,
                                   std::optional<int> exclude_id) {
  SwitcherInfo info;
  const HeatMapPeaks peaks = FindPeaks(map);
  if (!peaks.second || !(map.values[*peaks.second] > kSwitcherResponse)) {
    return info;
  }
  const BBox second_box = map.geometry.CellBox(*peaks.second);
  const TrackState* nearest = nullptr;
  double nearest_distance = 0.0;
  for (const TrackState& t : prev_tracks) {
    if (exclude_id && t.id == *exclude_id) continue;
    const double d = CenterDistance(t.box, second_box);
    if (nearest == nullptr || d < nearest_distance) {
      nearest = &t;
      nearest_distance = d;
    }
  }
  if (nearest == nullptr) return info;
  info.present = true;
  info.track_id = nearest->id;
  info.feature = nearest->feature;
  info.hist_feature = nearest->hist_feature;
  info.position = nearest->box;
  return info;
}

double Logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double IouScorer::Score(const MatchQuery& q) const {
  return Iou(q.target.box, q.detection.box);
}

double ReferenceScorer::Score(const MatchQuery& q) const {
  if (!q.target.feature || !q.detection.feature) {
    throw DataError("reference scorer needs target and detection features");
  }
  const Feature& det = *q.detection.feature;
  const Feature& target = *q.target.feature;
  const Feature& target_hist = q.target.hist_feature.value_or(target);
  double x = weights_.target * CosineSimilarity(target, det) +
             weights_.target_history * CosineSimilarity(target_hist, det) +
             weights_.iou * Iou(q.target.box, q.detection.box) + weights_.bias;
  if (q.switcher.present && q.switcher.feature) {
    const Feature& sw = *q.switcher.feature;
    const Feature& sw_hist = q.switcher.hist_feature.value_or(sw);
    x -= weights_.switcher * CosineSimilarity(sw, det);
    x -= weights_.switcher_history * CosineSimilarity(sw_hist, det);
  }
  return Logistic(x);
}

double MatchProbability(const MatchQuery& q, const MatchScorer& scorer) {
  if (!q.switcher.present && !q.switcher_map && !q.detection_map) {
    return Iou(q.target.box, q.detection.box);
  }
  try {
    return std::clamp(scorer.Score(q), 0.0, 1.0);
  } catch (const std::exception& e) {
    throw DataError("scorer '" + scorer.name() + "' failed for target " +
                    std::to_string(q.target.id) + " against detection in frame " +
                    std::to_string(q.detection.frame) + ": " + e.what());
  }
}

void HeatMapSidecar::Add(int frame, int id, std::vector<float> values) {
  if (static_cast<int>(values.size()) != width_ * height_) {
    throw DataError("heat-map record has wrong cell count");
  }
  for (float v : values) {
    if (!(v >= 0.0f && v <= 1.0f)) {
      throw DataError("heat-map value outside [0,1]");
    }
  }
  records_[{frame, id}] = std::move(values);
}

std::optional<HeatMap> HeatMapSidecar::Lookup(int frame,
                                              const TrackState& track) const {
  const auto it = records_.find({frame, track.id});
  if (it == records_.end()) return std::nullopt;
  HeatMap map;
  map.geometry = SearchRegionFor(track.box, width_, height_);
  map.values.assign(it->second.begin(), it->second.end());
  return map;
}

std::string HeatMapSidecar::Serialize() const {
  std::string out(kMagic, 4);
  PutU32(out, kVersion);
  PutU32(out, static_cast<std::uint32_t>(width_));
  PutU32(out, static_cast<std::uint32_t>(height_));
  for (const auto& [key, values] : records_) {
    PutU32(out, static_cast<std::uint32_t>(key.first));
    PutU32(out, static_cast<std::uint32_t>(key.second));
    for (float v : values) PutU32(out, std::bit_cast<std::uint32_t>(v));
  }
  return out;
}

HeatMapSidecar HeatMapSidecar::Parse(std::string_view bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw DataError("not a heat-map sidecar (bad magic)");
  }
  std::size_t pos = 4;
  const std::uint32_t version = GetU32(bytes, pos);
  if (version != kVersion) {
    throw DataError("unsupported heat-map sidecar version " +
                    std::to_string(version));
  }
  const std::uint32_t w = GetU32(bytes, pos);
  const std::uint32_t h = GetU32(bytes, pos);
  if (w == 0 || h == 0 || w > 4096 || h > 4096) {
    throw DataError("invalid heat-map grid size");
  }
  HeatMapSidecar sidecar(static_cast<int>(w), static_cast<int>(h));
  const std::size_t cells = static_cast<std::size_t>(w) * h;
  while (pos < bytes.size()) {
    const auto frame = static_cast<int>(GetU32(bytes, pos));
    const auto id = static_cast<int>(GetU32(bytes, pos));
    std::vector<float> values(cells);
    for (float& v : values) v = std::bit_cast<float>(GetU32(bytes, pos));
    sidecar.Add(frame, id, std::move(values));
  }
  return sidecar;
}

HeatMapSidecar HeatMapSidecar::Load(const std::filesystem::path& path) {
  return Parse(ReadTextFile(path));
}

}  // namespace swmot
