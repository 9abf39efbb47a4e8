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

#include "swmot/metrics.h"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "oracles.h"
#include "swmot/errors.h"
#include "swmot/synth.h"

namespace swmot {
namespace {

const BBox kBox{0, 0, 10, 10};

Trajectory Constant(int id, int first, int last, BBox box = kBox) {
  Trajectory t{id, {}};
  for (int f = first; f <= last; ++f) t.boxes.emplace(f, box);
  return t;
}

struct Scores {
  ClearMotScores clear;
  IdScores id;
  SaidfScores said;
};

Scores All(const std::vector<Trajectory>& gt, const std::vector<Trajectory>& hyp) {
  const FrameMatching m = MatchFrames(gt, hyp);
  return {ComputeClearMot(m, gt, hyp), ComputeIdf1(m, gt, hyp), ComputeSaidf(m, gt, hyp)};
}

// One gt of length l_g covered by consecutive segments with the given ids.
std::vector<Trajectory> Segments(std::vector<std::pair<int, int>> id_and_length) {
  std::vector<TrackBox> boxes;
  int f = 1;
  for (const auto& [id, len] : id_and_length) {
    for (int k = 0; k < len; ++k) boxes.push_back({f++, id, kBox, 1.0});
  }
  return TrajectoriesFromBoxes(boxes);
}

TEST(MatchFramesTest, IdenticalMatchesEverything) {
  const std::vector<Trajectory> gt = {Constant(1, 1, 5), Constant(2, 1, 5, {50, 0, 10, 10})};
  const FrameMatching m = MatchFrames(gt, gt);
  ASSERT_EQ(m.frames.size(), 5u);
  for (const FrameMatch& fm : m.frames) {
    EXPECT_EQ(fm.pairs.size(), 2u);
    EXPECT_TRUE(fm.unmatched_gt.empty());
    EXPECT_TRUE(fm.unmatched_hyp.empty());
  }
}

TEST(MatchFramesTest, EmptyHypothesisLeavesAllGt) {
  const std::vector<Trajectory> gt = {Constant(1, 1, 3)};
  const FrameMatching m = MatchFrames(gt, {});
  ASSERT_EQ(m.frames.size(), 3u);
  EXPECT_EQ(m.frames[0].unmatched_gt, (std::vector<int>{1}));
}

TEST(MatchFramesTest, PicksHighestIou) {
  const std::vector<Trajectory> gt = {Constant(1, 1, 1, {0, 0, 10, 10})};
  // IoU 0.9 and 0.6 against the gt box.
  const std::vector<Trajectory> hyp = {Constant(1, 1, 1, {0, 0, 10, 6}),
                                       Constant(2, 1, 1, {0, 0, 10, 9})};
  ASSERT_NEAR(Iou(gt[0].boxes.at(1), hyp[1].boxes.at(1)), 0.9, 1e-12);
  const FrameMatching m = MatchFrames(gt, hyp);
  ASSERT_EQ(m.frames[0].pairs.size(), 1u);
  EXPECT_EQ(m.frames[0].pairs[0], (std::pair<int, int>{1, 2}));
  EXPECT_EQ(m.frames[0].unmatched_hyp, (std::vector<int>{1}));
}

TEST(MatchFramesTest, CardinalityBeforeIou) {
  // gt 1 prefers hyp A strongly; taking it would leave gt 2 unmatched.
  const std::vector<Trajectory> gt = {Constant(1, 1, 1, {0, 0, 10, 10}),
                                      Constant(2, 1, 1, {3, 0, 10, 10})};
  const std::vector<Trajectory> hyp = {Constant(1, 1, 1, {1, 0, 10, 10}),
                                       Constant(2, 1, 1, {-2, 0, 10, 10})};
  const FrameMatching m = MatchFrames(gt, hyp);
  EXPECT_EQ(m.frames[0].pairs.size(), 2u);
}

TEST(MatchFramesTest, KeepsPreviousPairWhileAboveThreshold) {
  // Frame 2: hyp 2 fits gt 1 better, but the frame-1 pair (1, 1) still
  // clears the threshold and is kept.
  Trajectory g = Constant(1, 1, 2);
  Trajectory h1 = Constant(1, 1, 2);
  h1.boxes[2] = {2, 0, 10, 10};
  Trajectory h2 = Constant(2, 2, 2);
  const std::vector<Trajectory> gt = {g}, hyp = {h1, h2};
  const FrameMatching m = MatchFrames(gt, hyp);
  EXPECT_EQ(m.frames[1].pairs[0], (std::pair<int, int>{1, 1}));
  EXPECT_EQ(ComputeClearMot(m, gt, hyp).ids, 0);
}

TEST(ClearMotTest, PerfectAndEmpty) {
  const std::vector<Trajectory> gt = {Constant(1, 1, 10)};
  const Scores perfect = All(gt, gt);
  EXPECT_EQ(perfect.clear.mota, 1.0);
  EXPECT_EQ(perfect.clear.ids, 0);
  EXPECT_EQ(perfect.clear.fp, 0);
  EXPECT_EQ(perfect.clear.fn, 0);
  EXPECT_EQ(perfect.clear.motp, 1.0);
  EXPECT_EQ(perfect.clear.mt, 1);
  const Scores empty = All(gt, {});
  EXPECT_EQ(empty.clear.mota, 0.0);
  EXPECT_EQ(empty.clear.ids, 0);
  EXPECT_EQ(empty.clear.fn, 10);
  EXPECT_EQ(empty.clear.ml, 1);
}

TEST(ClearMotTest, EmptyGroundTruthIsAnError) {
  const std::vector<Trajectory> hyp = {Constant(1, 1, 3)};
  const FrameMatching m = MatchFrames({}, hyp);
  try {
    ComputeClearMot(m, {}, hyp);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_STREQ(e.what(), "empty ground truth");
  }
  EXPECT_THROW(ComputeSaidf(m, {}, hyp), DataError);
}

TEST(ClearMotTest, SwitchCountsAgainstLastMatchAcrossGaps) {
  // id 1 on 1-3, gap on 4-5, id 2 on 6-8, id 2 again after a gap.
  std::vector<TrackBox> boxes;
  for (int f : {1, 2, 3}) boxes.push_back({f, 1, kBox, 1});
  for (int f : {6, 7, 8, 10}) boxes.push_back({f, 2, kBox, 1});
  const std::vector<Trajectory> gt = {Constant(1, 1, 10)};
  const auto hyp = TrajectoriesFromBoxes(boxes);
  const Scores s = All(gt, hyp);
  EXPECT_EQ(s.clear.ids, 1);
  EXPECT_EQ(s.clear.fn, 3);
  EXPECT_EQ(s.clear.fm, 2);
  EXPECT_EQ(s.clear.pt, 1);
  EXPECT_NEAR(s.clear.mota, 1.0 - 4.0 / 10.0, 1e-12);
}

TEST(ClearMotTest, MostlyTrackedBoundaries) {
  const std::vector<Trajectory> gt = {Constant(1, 1, 10), Constant(2, 1, 10, {50, 0, 10, 10}),
                                      Constant(3, 1, 10, {100, 0, 10, 10})};
  const std::vector<Trajectory> hyp = {Constant(1, 1, 8), Constant(2, 1, 2, {50, 0, 10, 10}),
                                       Constant(3, 1, 3, {100, 0, 10, 10})};
  const Scores s = All(gt, hyp);
  EXPECT_EQ(s.clear.mt, 1);
  EXPECT_EQ(s.clear.ml, 1);
  EXPECT_EQ(s.clear.pt, 1);
}

TEST(MotaLossSharesTest, ReportedFractions) {
  const MotaLossShares s = ComputeMotaLossShares(564228, 22565, 248713, 3116);
  EXPECT_NEAR(100 * s.fp, 4.000, 0.01);
  EXPECT_NEAR(100 * s.fn, 44.08, 0.01);
  EXPECT_NEAR(100 * s.ids, 0.552, 0.01);
  EXPECT_THROW(ComputeMotaLossShares(0, 1, 1, 1), DataError);
}

TEST(Idf1Test, PerfectAndEmpty) {
  const std::vector<Trajectory> gt = {Constant(1, 1, 10)};
  const Scores perfect = All(gt, gt);
  EXPECT_EQ(perfect.id.idf1, 1.0);
  EXPECT_EQ(perfect.id.idp, 1.0);
  EXPECT_EQ(perfect.id.idr, 1.0);
  const Scores empty = All(gt, {});
  EXPECT_EQ(empty.id.idf1, 0.0);
  EXPECT_EQ(empty.id.idp, 0.0);
  EXPECT_EQ(empty.id.idr, 0.0);
}

TEST(Idf1Test, SmallSegmentsDoNotMatter) {
  const std::vector<Trajectory> gt = {Constant(1, 1, 100)};
  EXPECT_NEAR(All(gt, Segments({{1, 20}, {2, 20}, {3, 60}})).id.idf1, 0.6, 1e-12);
  EXPECT_NEAR(All(gt, Segments({{1, 20}, {1, 20}, {3, 60}})).id.idf1, 0.6, 1e-12);
}

TEST(SaidfTest, PerfectAndEmpty) {
  const std::vector<Trajectory> gt = {Constant(1, 1, 10)};
  const Scores perfect = All(gt, gt);
  EXPECT_EQ(perfect.said.saidf, 1.0);
  EXPECT_EQ(perfect.said.saidr, 1.0);
  EXPECT_EQ(perfect.said.saidp, 1.0);
  const Scores empty = All(gt, {});
  EXPECT_EQ(empty.said.saidf, 0.0);
  EXPECT_EQ(empty.said.saidr, 0.0);
  EXPECT_EQ(empty.said.saidp, 0.0);
}

TEST(SaidfTest, ThreeSegmentsAndMerge) {
  const std::vector<Trajectory> gt = {Constant(1, 1, 100)};
  const SaidfScores before = All(gt, Segments({{1, 20}, {2, 20}, {3, 60}})).said;
  EXPECT_NEAR(before.saidr, std::sqrt(0.44), 1e-12);
  EXPECT_NEAR(before.saidp, 0.44, 1e-12);
  EXPECT_NEAR(before.saidf, 0.5291, 1e-4);
  const SaidfScores after = All(gt, Segments({{1, 20}, {1, 20}, {3, 60}})).said;
  EXPECT_NEAR(after.saidr, std::sqrt(0.52), 1e-12);
  EXPECT_NEAR(after.saidp, 0.52, 1e-12);
  EXPECT_NEAR(after.saidf, 0.6042, 1e-4);
}

TEST(SaidfOracle, MatchesNaiveRecomputation) {
  testing::Rng rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    const auto scene = testing::RandomTrackingScene(rng, 5, 50);
    const FrameMatching m = MatchFrames(scene.gt, scene.hyp);
    const SaidfScores fast = ComputeSaidf(m, scene.gt, scene.hyp);
    const SaidfScores naive = testing::NaiveSaidf(m, scene.gt, scene.hyp);
    ASSERT_EQ(fast.saidr, naive.saidr) << "trial " << trial;
    ASSERT_EQ(fast.saidp, naive.saidp) << "trial " << trial;
    ASSERT_EQ(fast.saidf, naive.saidf) << "trial " << trial;
  }
}

TEST(Idf1Oracle, MatchesPermutationSearch) {
  testing::Rng rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const auto scene = testing::RandomTrackingScene(rng, 6, 40);
    const FrameMatching m = MatchFrames(scene.gt, scene.hyp);
    const IdScores s = ComputeIdf1(m, scene.gt, scene.hyp);
    ASSERT_EQ(s.idtp, testing::BruteForceIdtp(m, scene.gt, scene.hyp)) << "trial " << trial;
  }
}

TEST(MetricProperties, SaidfInUnitIntervalAndOneOnlyWhenPerfect) {
  testing::Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto scene = testing::RandomTrackingScene(rng, 5, 30);
    const Scores s = All(scene.gt, scene.hyp);
    EXPECT_GE(s.said.saidf, 0.0);
    EXPECT_LE(s.said.saidf, 1.0);
    if (s.said.saidf == 1.0) {
      EXPECT_EQ(s.clear.fp + s.clear.fn + s.clear.ids, 0);
      EXPECT_EQ(scene.gt.size(), scene.hyp.size());
    }
  }
}

TEST(MetricProperties, RelabelingInvariance) {
  testing::Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto scene = testing::RandomTrackingScene(rng, 5, 30);
    std::vector<int> perm(scene.hyp.size());
    std::iota(perm.begin(), perm.end(), 100);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Trajectory> relabeled = scene.hyp;
    for (std::size_t i = 0; i < relabeled.size(); ++i) relabeled[i].id = perm[i];
    std::sort(relabeled.begin(), relabeled.end(),
              [](const Trajectory& a, const Trajectory& b) { return a.id < b.id; });
    const Scores a = All(scene.gt, scene.hyp);
    const Scores b = All(scene.gt, relabeled);
    EXPECT_EQ(a.clear.mota, b.clear.mota);
    EXPECT_EQ(a.clear.ids, b.clear.ids);
    EXPECT_EQ(a.id.idtp, b.id.idtp);
    EXPECT_NEAR(a.said.saidf, b.said.saidf, 1e-12);
  }
}

TEST(MetricProperties, MergingDisjointSegmentsNeverLowersSaidf) {
  testing::Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int l_g = std::uniform_int_distribution<int>(4, 120)(rng);
    const int pieces = std::uniform_int_distribution<int>(2, std::min(6, l_g))(rng);
    std::vector<int> cuts(l_g - 1);
    std::iota(cuts.begin(), cuts.end(), 1);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(pieces - 1);
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::pair<int, int>> layout;
    int start = 0;
    for (int k = 0; k <= pieces - 1; ++k) {
      const int end = k < pieces - 1 ? cuts[k] : l_g;
      layout.push_back({k + 1, end - start});
      start = end;
    }
    const std::vector<Trajectory> gt = {Constant(1, 1, l_g)};
    const double before = All(gt, Segments(layout)).said.saidf;
    std::uniform_int_distribution<int> pick(0, pieces - 1);
    const int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    auto merged = layout;
    merged[b].first = merged[a].first;
    EXPECT_GE(All(gt, Segments(merged)).said.saidf, before - 1e-15) << "trial " << trial;
  }
}

TEST(SensitivityCurveTest, SpotValuesAtOneFifth) {
  const std::vector<double> m = {0.2};
  const SensitivityRow r = SensitivityCurve(m, 100)[0];
  EXPECT_NEAR(r.delta_mota, 0.01, 1e-12);
  EXPECT_EQ(r.delta_idf1, 0.0);
  // Hand evaluation: lambda 0.2/0.2/0.6 before, 0.4/0.6 after.
  const auto f = [](double r_, double p) { return 2 * r_ * p / (r_ + p); };
  const double expected = f(std::sqrt(0.52), 0.52) - f(std::sqrt(0.44), 0.44);
  EXPECT_NEAR(r.delta_saidf, expected, 1e-12);
  EXPECT_NEAR(r.delta_saidf, 0.0752003, 1e-7);
}

TEST(SensitivityCurveTest, ShapeOverM) {
  std::vector<double> m;
  for (int k = 1; k <= 10; ++k) m.push_back(0.05 * k);
  const auto rows = SensitivityCurve(m, 1000);
  for (const SensitivityRow& r : rows) {
    EXPECT_GT(r.delta_saidf, 0.0) << r.m;
    EXPECT_NEAR(r.delta_mota, 1.0 / 1000, 1e-12) << r.m;
    // The merged pair 2 m l_g outgrows the third segment once m > 1/4.
    if (r.m <= 0.25 + 1e-9) {
      EXPECT_EQ(r.delta_idf1, 0.0) << r.m;
    } else {
      EXPECT_GT(r.delta_idf1, 0.0) << r.m;
    }
  }
}

TEST(SensitivityCurveTest, RejectsBadRatios) {
  const std::vector<double> bad = {0.6};
  EXPECT_THROW(SensitivityCurve(bad, 100), ConfigError);
  const std::vector<double> zero = {0.0};
  EXPECT_THROW(SensitivityCurve(zero, 100), ConfigError);
}

TEST(FragmentCasesTest, CaptionOrderings) {
  const auto cases = Fig5aCases();
  ASSERT_EQ(cases.size(), 4u);
  std::vector<Scores> s;
  for (const auto& c : cases) s.push_back(All(c.gt, c.hyp));
  EXPECT_EQ(s[0].clear.ids, 2);
  EXPECT_EQ(s[1].clear.ids, 1);
  EXPECT_GT(s[0].said.saidf, s[1].said.saidf);
  EXPECT_EQ(s[2].id.idf1, s[3].id.idf1);
  EXPECT_GT(s[2].said.saidf, s[3].said.saidf);
  for (const Scores& x : s) EXPECT_EQ(x.clear.fp, 0);
}

TEST(EvaluateTest, PoolingUsesCounters) {
  const std::vector<Trajectory> gt1 = {Constant(1, 1, 10)};
  const std::vector<Trajectory> gt2 = {Constant(1, 1, 30)};
  const std::vector<Trajectory> hyp2 = Segments({{1, 10}, {2, 20}});
  const MetricsReport a = Evaluate("a", gt1, gt1);
  const MetricsReport b = Evaluate("b", gt2, hyp2);
  const std::vector<MetricsReport> reports = {a, b};
  const MetricsReport pooled = PoolReports(reports);
  EXPECT_EQ(pooled.name, "overall");
  EXPECT_EQ(pooled.clear.ids, 1);
  EXPECT_NEAR(pooled.clear.mota, 1.0 - 1.0 / 40.0, 1e-12);
  EXPECT_NEAR(pooled.id.idf1, 2.0 * (10 + 20) / 80.0, 1e-12);
  EXPECT_NEAR(pooled.said.saidr,
              (a.said.saidr * 10 + b.said.saidr * 30) / 40.0, 1e-12);
}

TEST(FormatReportTest, ColumnsAndErrors) {
  const std::vector<Trajectory> gt = {Constant(1, 1, 10)};
  const std::vector<MetricsReport> rows = {Evaluate("seq", gt, gt)};
  ReportFormat f;
  f.columns = {"mota", "idf1", "saidf"};
  const std::string table = FormatReport(rows, f);
  EXPECT_NE(table.find("MOTA"), std::string::npos);
  EXPECT_NE(table.find("1.0000"), std::string::npos);
  f.columns = {"saidf"};
  f.timing = true;
  f.csv = true;
  const std::string csv = FormatReport(rows, f);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "Sequence,SAIDF,t_SAIDF");
  f.columns = {"bogus"};
  EXPECT_THROW(FormatReport(rows, f), ConfigError);
  EXPECT_EQ(AllMetricColumns().size(), 18u);
}

}  // namespace
}  // namespace swmot
