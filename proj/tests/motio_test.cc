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

#include "swmot/motio.h"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.h"
#include "swmot/errors.h"

namespace swmot {
namespace {

TEST(ParseDetectionsTest, SingleRow) {
  const auto r = ParseDetections("1,-1,10.0,20.0,30.0,40.0,0.9\n");
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].frame, 1);
  EXPECT_EQ(r.records[0].box, (BBox{10, 20, 30, 40}));
  EXPECT_EQ(r.records[0].score, 0.9);
  EXPECT_FALSE(r.records[0].feature);
}

TEST(ParseDetectionsTest, SortsByFrameKeepingFileOrder) {
  const auto r = ParseDetections("2,-1,0,0,1,1,0.5\n1,-1,5,0,1,1,0.5\n1,-1,7,0,1,1,0.5\n");
  ASSERT_EQ(r.records.size(), 3u);
  EXPECT_EQ(r.records[0].box.x, 5);
  EXPECT_EQ(r.records[1].box.x, 7);
  EXPECT_EQ(r.records[2].frame, 2);
  EXPECT_EQ(r.source_rows[2], 0u);
}

TEST(ParseTracksTest, ResultRow) {
  const auto r = ParseTracks("3,7,0,0,10,10,1\n", MotFileKind::kResult);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0], (TrackBox{3, 7, {0, 0, 10, 10}, 1.0}));
}

TEST(ParseTracksTest, ZeroWidthSkippedAndCounted) {
  const auto r = ParseTracks("2,5,1,1,0,10,1\n", MotFileKind::kGroundTruth);
  EXPECT_TRUE(r.records.empty());
  EXPECT_EQ(r.skipped, 1);
}

TEST(ParseTracksTest, GroundTruthFlagsAndClasses) {
  const std::string text =
      "1,1,0,0,10,10,1,1,1\n"
      "1,2,0,0,10,10,0,1,1\n"   // not considered
      "1,3,0,0,10,10,1,7,1\n";  // other class
  const auto r = ParseTracks(text, MotFileKind::kGroundTruth);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].id, 1);
  GtFilter all;
  all.class_whitelist.clear();
  EXPECT_EQ(ParseTracks(text, MotFileKind::kGroundTruth, all).records.size(), 2u);
}

TEST(ParseTracksTest, MalformedLineNamesLine) {
  try {
    ParseTracks("1,1,0,0,10,10,1\n1,x,0,0,10,10,1\n", MotFileKind::kResult);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(ParseTracksTest, DuplicateFrameIdRejected) {
  EXPECT_THROW(ParseTracks("1,1,0,0,1,1,1\n1,1,2,2,1,1,1\n", MotFileKind::kResult),
               DataError);
}

TEST(WriteMotFileTest, Examples) {
  const std::vector<TrackBox> one = {{1, 1, {0, 0, 5, 5}, 0.8}};
  EXPECT_EQ(WriteMotFile(one), "1,1,0,0,5,5,0.8,-1,-1,-1\n");
  EXPECT_EQ(WriteMotFile({}), "");
  const std::vector<TrackBox> dup = {{1, 1, {0, 0, 5, 5}, 0.8}, {1, 1, {1, 0, 5, 5}, 0.8}};
  EXPECT_THROW(WriteMotFile(dup), DataError);
}

TEST(WriteMotFileTest, SortsAndRoundTrips) {
  const std::vector<TrackBox> boxes = {{2, 1, {0.25, -3, 5.5, 5}, 0.8},
                                       {1, 9, {1e-3, 7, 12.125, 5}, 1},
                                       {1, 2, {100.5, 0.1, 0.3, 5}, 0.123456789}};
  const std::string text = WriteMotFile(boxes);
  const auto parsed = ParseTracks(text, MotFileKind::kResult);
  ASSERT_EQ(parsed.records.size(), 3u);
  EXPECT_EQ(parsed.records[0], boxes[2]);
  EXPECT_EQ(parsed.records[1], boxes[1]);
  EXPECT_EQ(parsed.records[2], boxes[0]);
  EXPECT_EQ(WriteMotFile(parsed.records), text);
}

TEST(FormatNumberTest, FixedShortest) {
  EXPECT_EQ(FormatNumber(0.8), "0.8");
  EXPECT_EQ(FormatNumber(5), "5");
  EXPECT_EQ(FormatNumber(-12.25), "-12.25");
  EXPECT_EQ(FormatNumber(0.0), "0");
  EXPECT_EQ(FormatNumber(1e-7), "0.0000001");
}

TEST(DetectionFileTest, RoundTrip) {
  const std::vector<Detection> dets = {{1, {1, 2, 3, 4}, 0.5, {}}, {2, {0.5, 2, 3, 4}, 0.25, {}}};
  const auto parsed = ParseDetections(WriteDetFile(dets));
  ASSERT_EQ(parsed.records.size(), 2u);
  EXPECT_EQ(parsed.records[1].box, dets[1].box);
  EXPECT_EQ(parsed.records[1].score, 0.25);
}

TEST(FeatureFileTest, NormalizesRows) {
  const auto dets = ParseDetections("1,-1,0,0,1,1,1\n1,-1,5,0,1,1,1\n2,-1,0,0,1,1,1\n");
  std::string csv;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 64; ++k) csv += (k ? "," : "") + std::to_string(i + k + 1);
    csv += "\n";
  }
  const FeatureMap map = ParseFeatureCsv(csv, dets);
  ASSERT_EQ(map.size(), 3u);
  for (const auto& [key, v] : map) {
    double norm = 0;
    for (double x : v) norm += x * x;
    EXPECT_NEAR(std::sqrt(norm), 1.0, 1e-12);
  }
  EXPECT_TRUE(map.contains({1, 1}));
  EXPECT_TRUE(map.contains({2, 0}));
}

TEST(FeatureFileTest, Errors) {
  const auto dets = ParseDetections("1,-1,0,0,1,1,1\n1,-1,5,0,1,1,1\n");
  EXPECT_THROW(ParseFeatureCsv("1,0\n", dets), DataError);
  try {
    ParseFeatureCsv("1,0\n0,0\n", dets);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("non-normalizable feature"), std::string::npos);
  }
}

TEST(FeatureFileTest, MissingFileMeansNoFeatures) {
  const auto dets = ParseDetections("1,-1,0,0,1,1,1\n");
  testing::TempDir dir;
  EXPECT_FALSE(LoadFeatureFile(dir.path() / "none.csv", dets));
  const Sequence seq = MakeSequence("s", dets);
  EXPECT_FALSE(seq.has_features());
}

TEST(SequenceTest, FrameAccess) {
  const auto dets = ParseDetections("1,-1,0,0,1,1,1\n3,-1,5,0,1,1,1\n3,-1,7,0,1,1,1\n");
  const Sequence seq = MakeSequence("s", dets, nullptr, 5);
  EXPECT_EQ(seq.num_frames, 5);
  EXPECT_EQ(seq.FrameDetections(1).size(), 1u);
  EXPECT_EQ(seq.FrameDetections(2).size(), 0u);
  EXPECT_EQ(seq.FrameDetections(3).size(), 2u);
  EXPECT_EQ(seq.FrameDetections(5).size(), 0u);
}

TEST(TextFileTest, MissingFileNamesPath) {
  try {
    ReadTextFile("/nonexistent/dir/file.txt");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/file.txt"), std::string::npos);
  }
}

}  // namespace
}  // namespace swmot
