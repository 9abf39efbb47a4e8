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

#ifndef SWMOT_TESTS_ORACLES_H_
#define SWMOT_TESTS_ORACLES_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "swmot/hungarian.h"
#include "swmot/metrics.h"
#include "swmot/scg.h"

namespace swmot::testing {

using Rng = std::mt19937_64;

// Multiple of 1/denominator in [lo, hi]; sums of such values are exact.
double Dyadic(Rng& rng, int denominator, double lo, double hi);

// Random graph with node scores in eighths and conflicts in 64ths.
ConflictGraph RandomGraph(Rng& rng, int num_nodes, double edge_probability);

// Best objective over all 2^|V| subsets of the whole graph.
double BruteForceSubgraph(const ConflictGraph& g, int* best_size = nullptr);

// Random matrix of 64ths in [0, 1] with an optional random forbid mask.
Matrix<double> RandomProbabilities(Rng& rng, int rows, int cols);
ForbidMask RandomForbid(Rng& rng, int rows, int cols, double probability);

// Exhaustive search over all partial one-to-one matchings using only pairs
// with p >= gate, p > 0 and not forbidden.
double BruteForceMatching(const Matrix<double>& p, const ForbidMask* forbid,
                          double gate);

// Random (gt, hyp) pair: up to max_ids trajectories per side over
// max_frames frames, hypotheses built from noisy, relabeled gt pieces plus
// clutter.
struct RandomScene {
  std::vector<Trajectory> gt;
  std::vector<Trajectory> hyp;
};
RandomScene RandomTrackingScene(Rng& rng, int max_ids, int max_frames);

// SAIDF recomputed from raw per-frame matches by scanning every (o, q) pair
// and every frame.
SaidfScores NaiveSaidf(const FrameMatching& matching,
                       std::span<const Trajectory> gt,
                       std::span<const Trajectory> hyp);

// Largest total of matched frames over all partial one-to-one id
// assignments.
long BruteForceIdtp(const FrameMatching& matching,
                    std::span<const Trajectory> gt,
                    std::span<const Trajectory> hyp);

// Unique scratch directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Calls RunCli with argv built from args.
struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};
CliResult Cli(const std::vector<std::string>& args);

}  // namespace swmot::testing

#endif  // SWMOT_TESTS_ORACLES_H_
