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

#ifndef SWMOT_SYNTH_H_
#define SWMOT_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swmot/association.h"
#include "swmot/metrics.h"
#include "swmot/motio.h"

namespace swmot {

enum class Motion { kLinear, kCrossing, kStopAndGo };

// Cuts the hypothesis copy of target 'target' (1-based gt id) before each
// split frame and labels segment k with ids[k].
struct Fragmentation {
  int target = 1;
  std::vector<int> split_frames;
  std::vector<int> ids;
};

// Explicit start state of a target; when ScenarioSpec::targets is empty the
// generator draws them.
struct TargetSpec {
  BBox box;
  double vx = 0.0;
  double vy = 0.0;
};

struct ScenarioSpec {
  int num_frames = 60;
  int num_targets = 2;
  Motion motion = Motion::kCrossing;
  std::vector<Fragmentation> fragmentation;
  std::vector<TargetSpec> targets;
  double noise = 0.0;          // box jitter std, pixels
  double feature_noise = 0.1;  // in [0, 1]
  int feature_dim = 32;
  // Detections of targets hidden beyond this fraction are not reported.
  double occlusion_drop = 0.8;
  std::uint64_t seed = 1;

  // Throws ConfigError on an invalid spec.
  void Validate() const;
};

struct Scenario {
  int num_frames = 0;
  std::vector<Trajectory> gt;
  // detections[t - 1] holds frame t; each carries its oracle feature.
  std::vector<std::vector<Detection>> detections;
  // Identity vector of every gt id.
  std::map<int, Feature> identity_features;
  // Hypothesis built from gt and the fragmentation plan.
  std::vector<Trajectory> hyp;

  Sequence ToSequence(std::string name, bool with_features) const;
  std::vector<TrackBox> GtBoxes() const { return BoxesFromTrajectories(gt); }
};

// Throws ConfigError when two targets coincide in some frame.
Scenario Generate(const ScenarioSpec& spec);

// Default two-target crossing setup drawn from seed.
ScenarioSpec CrossingSpec(std::uint64_t seed);

// Response maps built from ground truth: a bump of height 0.95 at the
// template identity's position in frame T and bumps of 0.7 at every other
// target, Gaussian with std 0.2 of the template size. The template identity
// is the gt target overlapping the track's box best in frame T-1.
class OracleHeatMaps final : public HeatMapSource {
 public:
  explicit OracleHeatMaps(std::vector<Trajectory> gt, int width = 31,
                          int height = 31);
  std::optional<HeatMap> Lookup(int frame,
                                const TrackState& track) const override;
  // Map over SearchRegionFor(prev_box) for gt identity 'id' at 'frame'.
  std::optional<HeatMap> ForIdentity(int frame, int id,
                                     const BBox& prev_box) const;

  static constexpr double kMainPeak = 0.95;
  static constexpr double kSecondaryPeak = 0.7;
  static constexpr double kSigmaRatio = 0.2;

 private:
  std::vector<Trajectory> gt_;
  int width_;
  int height_;
};

struct Fig5aCase {
  std::string name;
  std::vector<Trajectory> gt;
  std::vector<Trajectory> hyp;
};

// 100-frame single-target cases with perfect boxes:
//   1: id 1 on 1-48 and 53-100, id 2 on 49-52
//   2: id 1 on 1-60, id 2 on 61-100
//   3: id 1 on 51-100, ids 2 and 3 on 1-25 and 26-50
//   4: id 1 on 51-100, ten 5-frame ids on 1-50
std::vector<Fig5aCase> Fig5aCases();

struct BenchmarkRow {
  int n_ih = 0;
  double t_saidf = 0.0;
  double t_idf1 = 0.0;
  double t_mota = 0.0;
};

// n_ig static, non-overlapping gt tracks of seq_len frames.
std::vector<Trajectory> BenchmarkGroundTruth(int n_ig, int seq_len);

// Relabels the boxes of gt into n_ih identities: n_ih - n_ig cut points
// drawn uniformly without replacement among the frame boundaries, then a
// random permutation of ids. Throws ConfigError unless
// n_ig <= n_ih <= total boxes.
std::vector<Trajectory> FragmentIdentities(std::span<const Trajectory> gt,
                                           int n_ih, std::uint64_t seed);

// Median over 'repeats' runs of each metric on a precomputed frame matching.
std::vector<BenchmarkRow> BenchmarkIdSets(std::span<const int> n_ih_values,
                                          int n_ig = 30, int seq_len = 200,
                                          std::uint64_t seed = 1,
                                          int repeats = 5);

// Writes gt.txt, det.txt, features.csv and heatmaps.swhm. Heat-map records
// are keyed by gt id and laid out over the gt box of the previous frame.
void ExportScenario(const Scenario& scenario,
                    const std::filesystem::path& dir);

}  // namespace swmot

#endif  // SWMOT_SYNTH_H_
