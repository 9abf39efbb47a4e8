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

#ifndef SWMOT_TRACKER_H_
#define SWMOT_TRACKER_H_

#include <span>
#include <vector>

#include "swmot/association.h"
#include "swmot/motio.h"
#include "swmot/scg.h"

namespace swmot {

struct TrackerConfig {
  ScgConfig scg;
  // Pairs with a matching probability below gate are never assigned.
  double gate = 0.3;
  // Lost targets have their confidence multiplied by decay every frame.
  double decay = 0.95;
  double drop_threshold = 0.5;
  // Lost targets at or above this confidence follow their heat-map peak.
  double predict_threshold = 0.9;
  int max_lost_frames = 30;
  // Minimum detector score for starting a new identity.
  double init_threshold = 0.3;

  void Validate() const;
  friend bool operator==(const TrackerConfig&, const TrackerConfig&) = default;
};

struct TrackerState {
  std::vector<TrackState> tracks;
  int next_id = 1;
  // Refined detections of the previous frame.
  std::vector<BBox> prev_boxes;
};

// Advances the tracker by one frame: conflict-graph refinement, matching
// probabilities, Hungarian assignment and target management. Returns the
// boxes emitted for this frame, sorted by id.
std::vector<TrackBox> Step(TrackerState& state, int frame,
                           std::span<const Detection> frame_dets,
                           const HeatMapSource* maps, const TrackerConfig& cfg,
                           const MatchScorer& scorer);

std::vector<TrackBox> RunSequence(const Sequence& seq, const TrackerConfig& cfg,
                                  const MatchScorer& scorer,
                                  const HeatMapSource* maps = nullptr);

// Blend used to archive appearance history: normalize(0.7 old + 0.3 new).
Feature BlendHistory(const Feature& history, const Feature& latest);

}  // namespace swmot

#endif  // SWMOT_TRACKER_H_
