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

#ifndef SWMOT_METRICS_H_
#define SWMOT_METRICS_H_

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "swmot/geometry.h"
#include "swmot/motio.h"

namespace swmot {

// Time-indexed boxes of one identity. len() is the number of frames with a
// box.
struct Trajectory {
  int id = 0;
  std::map<int, BBox> boxes;

  int len() const { return static_cast<int>(boxes.size()); }
  bool Has(int frame) const { return boxes.contains(frame); }
};

// Groups boxes by id; result sorted by id.
std::vector<Trajectory> TrajectoriesFromBoxes(std::span<const TrackBox> boxes);
std::vector<TrackBox> BoxesFromTrajectories(std::span<const Trajectory> tracks);

struct FrameMatch {
  int frame = 0;
  // (gt id, hypothesis id) pairs with their IoU.
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> ious;
  std::vector<int> unmatched_gt;
  std::vector<int> unmatched_hyp;
};

// Frame-level truth-to-result matching, one entry per frame in which any
// trajectory exists, ordered by frame.
struct FrameMatching {
  double iou_threshold = 0.5;
  std::vector<FrameMatch> frames;
};

// Per frame: pairs matched in the previous frame are kept while their IoU
// stays above threshold; the remaining boxes get a maximum-cardinality,
// then maximum-total-IoU, one-to-one matching among pairs with
// IoU >= iou_threshold.
FrameMatching MatchFrames(std::span<const Trajectory> gt,
                          std::span<const Trajectory> hyp,
                          double iou_threshold = 0.5);

struct ClearMotScores {
  double mota = 0.0;
  double motp = 0.0;
  long ids = 0;
  long fp = 0;
  long fn = 0;
  long fm = 0;
  long mt = 0;
  long pt = 0;
  long ml = 0;
  long num_gt_boxes = 0;
  long num_matches = 0;
  double iou_sum = 0.0;
};

// Throws DataError("empty ground truth") when no ground-truth box exists.
ClearMotScores ComputeClearMot(const FrameMatching& matching,
                               std::span<const Trajectory> gt,
                               std::span<const Trajectory> hyp);

struct IdScores {
  double idf1 = 0.0;
  double idp = 0.0;
  double idr = 0.0;
  long idtp = 0;
  long gt_len = 0;
  long hyp_len = 0;
};

// Global one-to-one identity assignment maximizing matched frames, solved on
// the square bipartite graph that gives every trajectory a dummy partner.
IdScores ComputeIdf1(const FrameMatching& matching,
                     std::span<const Trajectory> gt,
                     std::span<const Trajectory> hyp);

struct SaidfScores {
  double saidf = 0.0;
  double saidr = 0.0;
  double saidp = 0.0;
  // Length-weighted numerators, kept for pooling across sequences.
  double recall_num = 0.0;
  double precision_num = 0.0;
  long gt_len = 0;
  long hyp_len = 0;
};

// lambda(o, q) = M(o, q) / (len(o) + len(q) - Intrs(o, q)) where M counts
// frames in which o and q are matched to each other and Intrs counts frames
// in which both exist. Recall pools sqrt(sum_q lambda^2) over ground truth
// weighted by length, precision the same over hypotheses. No global
// assignment is solved; only pairs with M > 0 are visited.
SaidfScores ComputeSaidf(const FrameMatching& matching,
                         std::span<const Trajectory> gt,
                         std::span<const Trajectory> hyp);

struct MetricTimings {
  double frame_match_s = 0.0;
  double clear_s = 0.0;
  double idf1_s = 0.0;
  double saidf_s = 0.0;
};

struct MetricsReport {
  std::string name;
  ClearMotScores clear;
  IdScores id;
  SaidfScores said;
  double recall = 0.0;
  double precision = 0.0;
  long num_gt_ids = 0;
  long num_hyp_boxes = 0;
  MetricTimings timing;
};

struct EvalOptions {
  double iou_threshold = 0.5;
};

MetricsReport Evaluate(std::string name, std::span<const Trajectory> gt,
                       std::span<const Trajectory> hyp,
                       const EvalOptions& options = {});

// Pooled counters across sequences; ratios are recomputed from the sums.
MetricsReport PoolReports(std::span<const MetricsReport> reports,
                          std::string name = "overall");

// Column tokens accepted by FormatReport, in display order.
const std::vector<std::string>& AllMetricColumns();

struct ReportFormat {
  std::vector<std::string> columns;  // empty selects every column
  bool timing = false;
  bool csv = false;
};

// Columns are validated against AllMetricColumns(); unknown tokens throw
// ConfigError.
std::string FormatReport(std::span<const MetricsReport> rows,
                         const ReportFormat& format);

// Machine-readable 'sequence.key=value' records, one per line.
std::string FormatKeyValues(std::span<const MetricsReport> rows);

// Shares of the MOTA loss (each count divided by the number of ground-truth
// boxes).
struct MotaLossShares {
  double fp = 0.0;
  double fn = 0.0;
  double ids = 0.0;
};
MotaLossShares ComputeMotaLossShares(long num_gt_boxes, double fp, double fn,
                                     double ids);

struct SensitivityRow {
  double m = 0.0;
  double delta_mota = 0.0;
  double delta_idf1 = 0.0;
  double delta_saidf = 0.0;
};

// One ground-truth trajectory of length l_g covered by three hypotheses of
// lengths m l_g, m l_g and l_g - 2 m l_g, in that order. Each row reports
// metric(after giving the first two the same id) - metric(before), computed
// through MatchFrames and the metric functions. Throws ConfigError for m
// outside (0, 0.5].
std::vector<SensitivityRow> SensitivityCurve(std::span<const double> m_values,
                                             int l_g);

}  // namespace swmot

#endif  // SWMOT_METRICS_H_
