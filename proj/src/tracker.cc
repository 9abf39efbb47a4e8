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

#include "swmot/tracker.h"

#include <algorithm>

#include "swmot/errors.h"

namespace swmot {
namespace {

constexpr double kHistoryKeep = 0.7;

bool InUnitInterval(double v) { return v >= 0.0 && v <= 1.0; }

void UpdateMatched(TrackState& track, const Detection& det) {
  track.box = det.box;
  track.conf = std::clamp(det.score, 0.0, 1.0);
  track.lost_frames = 0;
  if (det.feature) {
    if (track.feature) {
      track.hist_feature = track.hist_feature
                               ? BlendHistory(*track.hist_feature, *track.feature)
                               : *track.feature;
    }
    track.feature = det.feature;
  }
}

}  // namespace

void TrackerConfig::Validate() const {
  scg.Validate();
  if (!InUnitInterval(gate)) throw ConfigError("tracker.gate must be in [0,1]");
  if (!(decay > 0.0 && decay < 1.0)) {
    throw ConfigError("tracker.decay must be in (0,1)");
  }
  if (!InUnitInterval(drop_threshold)) {
    throw ConfigError("tracker.drop_threshold must be in [0,1]");
  }
  if (!InUnitInterval(predict_threshold)) {
    throw ConfigError("tracker.predict_threshold must be in [0,1]");
  }
  if (max_lost_frames < 1) {
    throw ConfigError("tracker.max_lost_frames must be positive");
  }
  if (!InUnitInterval(init_threshold)) {
    throw ConfigError("tracker.init_threshold must be in [0,1]");
  }
}

Feature BlendHistory(const Feature& history, const Feature& latest) {
  if (history.size() != latest.size()) return latest;
  Feature blended(history.size());
  for (std::size_t i = 0; i < blended.size(); ++i) {
    blended[i] = kHistoryKeep * history[i] + (1.0 - kHistoryKeep) * latest[i];
  }
  try {
    return Normalized(std::move(blended));
  } catch (const DataError&) {
    return latest;
  }
}

std::vector<TrackBox> Step(TrackerState& state, int frame,
                           std::span<const Detection> frame_dets,
                           const HeatMapSource* maps, const TrackerConfig& cfg,
                           const MatchScorer& scorer) {
  const std::vector<Detection> dets =
      RefineDetections(frame_dets, state.prev_boxes, cfg.scg);
  const std::vector<TrackState> prev_tracks = state.tracks;
  const int n = static_cast<int>(prev_tracks.size());
  const int m = static_cast<int>(dets.size());

  std::vector<std::optional<HeatMap>> heat(n);
  Matrix<double> prob(n, m, 0.0);
  for (int i = 0; i < n; ++i) {
    const TrackState& target = prev_tracks[i];
    if (maps != nullptr) {
      heat[i] = maps->Lookup(frame, target);
      if (heat[i]) heat[i]->Validate();
    }
    SwitcherInfo switcher;
    if (heat[i]) switcher = FindPotentialSwitcher(*heat[i], prev_tracks, target.id);
    for (int j = 0; j < m; ++j) {
      MatchQuery q;
      q.target = target;
      q.detection = dets[j];
      q.switcher = switcher;
      if (switcher.present) {
        q.switcher_map = heat[i];
        q.detection_map = DetectionHeatmap(heat[i]->geometry, dets[j].box);
      }
      prob(i, j) = MatchProbability(q, scorer);
    }
  }

  const Assignment assignment = Hungarian(prob, nullptr, cfg.gate);
  std::vector<int> det_of_track(n, -1);
  std::vector<bool> det_used(m, false);
  for (const auto& [i, j] : assignment) {
    det_of_track[i] = j;
    det_used[j] = true;
  }

  std::vector<TrackState> next;
  std::vector<TrackBox> emitted;
  next.reserve(n + m);
  for (int i = 0; i < n; ++i) {
    TrackState track = prev_tracks[i];
    if (det_of_track[i] >= 0) {
      UpdateMatched(track, dets[det_of_track[i]]);
      emitted.push_back({frame, track.id, track.box, track.conf});
      next.push_back(std::move(track));
      continue;
    }
    track.conf *= cfg.decay;
    ++track.lost_frames;
    if (track.conf < cfg.drop_threshold ||
        track.lost_frames > cfg.max_lost_frames) {
      continue;
    }
    if (track.conf >= cfg.predict_threshold && heat[i]) {
      track.box = heat[i]->geometry.CellBox(heat[i]->ArgMax());
      emitted.push_back({frame, track.id, track.box, track.conf});
    }
    next.push_back(std::move(track));
  }
  for (int j = 0; j < m; ++j) {
    if (det_used[j] || dets[j].score < cfg.init_threshold) continue;
    TrackState track;
    track.id = state.next_id++;
    track.box = dets[j].box;
    track.conf = std::clamp(dets[j].score, 0.0, 1.0);
    track.feature = dets[j].feature;
    emitted.push_back({frame, track.id, track.box, track.conf});
    next.push_back(std::move(track));
  }
  std::sort(emitted.begin(), emitted.end(),
            [](const TrackBox& a, const TrackBox& b) { return a.id < b.id; });

  state.tracks = std::move(next);
  state.prev_boxes.clear();
  for (const Detection& d : dets) state.prev_boxes.push_back(d.box);
  return emitted;
}

std::vector<TrackBox> RunSequence(const Sequence& seq, const TrackerConfig& cfg,
                                  const MatchScorer& scorer,
                                  const HeatMapSource* maps) {
  cfg.Validate();
  TrackerState state;
  std::vector<TrackBox> out;
  for (int frame = 1; frame <= seq.num_frames; ++frame) {
    const auto emitted =
        Step(state, frame, seq.FrameDetections(frame), maps, cfg, scorer);
    out.insert(out.end(), emitted.begin(), emitted.end());
  }
  return out;
}

}  // namespace swmot
