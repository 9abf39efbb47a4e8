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

#include "swmot/hungarian.h"

#include <gtest/gtest.h>

#include "oracles.h"

namespace swmot {
namespace {

Matrix<double> FromRows(std::vector<std::vector<double>> rows) {
  Matrix<double> m(static_cast<int>(rows.size()),
                   rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

TEST(HungarianTest, TwoByTwo) {
  const auto p = FromRows({{0.9, 0.1}, {0.2, 0.8}});
  const Assignment a = Hungarian(p);
  EXPECT_EQ(a, (Assignment{{0, 0}, {1, 1}}));
  EXPECT_NEAR(AssignmentTotal(p, a), 1.7, 1e-12);
}

TEST(HungarianTest, ForbiddenPairStaysUnmatched) {
  const auto p = FromRows({{0.9}});
  ForbidMask forbid(1, 1, 1);
  EXPECT_TRUE(Hungarian(p, &forbid).empty());
}

TEST(HungarianTest, TieBreakTowardSmallerIndex) {
  EXPECT_EQ(Hungarian(FromRows({{0.5, 0.5}})), (Assignment{{0, 0}}));
  EXPECT_EQ(Hungarian(FromRows({{0.5}, {0.5}})), (Assignment{{0, 0}}));
}

TEST(HungarianTest, GateLeavesLowPairsOpen) {
  const auto p = FromRows({{0.29, 0.0}, {0.0, 0.31}});
  EXPECT_EQ(Hungarian(p), (Assignment{{1, 1}}));
  EXPECT_EQ(Hungarian(p, nullptr, 0.0).size(), 2u);
}

TEST(HungarianTest, EmptyMatrix) {
  EXPECT_TRUE(Hungarian(Matrix<double>(0, 3)).empty());
  EXPECT_TRUE(Hungarian(Matrix<double>(2, 0)).empty());
}

TEST(HungarianTest, PrefersTwoMediumOverOneHigh) {
  const auto p = FromRows({{0.95, 0.6}, {0.6, 0.0}});
  EXPECT_EQ(Hungarian(p), (Assignment{{0, 1}, {1, 0}}));
}

TEST(SolveMinCostAssignmentTest, RectangularBothWays) {
  const auto wide = FromRows({{3, 1, 2}, {1, 5, 9}});
  const auto cols = SolveMinCostAssignment(wide);
  EXPECT_EQ(cols, (std::vector<int>{1, 0}));
  const auto tall = FromRows({{3, 1}, {1, 5}, {0, 0.5}});
  const auto rows = SolveMinCostAssignment(tall);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], 1);
  EXPECT_EQ(rows[2], 0);
  EXPECT_EQ(rows[1], -1);
}

TEST(HungarianOracle, MatchesExhaustivePartialMatching) {
  testing::Rng rng(77);
  std::uniform_int_distribution<int> dim(0, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int rows = dim(rng), cols = dim(rng);
    const Matrix<double> p = testing::RandomProbabilities(rng, rows, cols);
    const bool use_forbid = unit(rng) < 0.5;
    const ForbidMask forbid = testing::RandomForbid(rng, rows, cols, 0.3);
    const double gate = trial % 3 == 0 ? 0.0 : 0.3;
    const ForbidMask* mask = use_forbid ? &forbid : nullptr;
    const Assignment a = Hungarian(p, mask, gate);
    ASSERT_EQ(AssignmentTotal(p, a), testing::BruteForceMatching(p, mask, gate))
        << "trial " << trial;
    std::vector<bool> row_used(rows, false), col_used(cols, false);
    for (const auto& [r, c] : a) {
      ASSERT_FALSE(row_used[r]);
      ASSERT_FALSE(col_used[c]);
      row_used[r] = col_used[c] = true;
      ASSERT_GE(p(r, c), gate);
      ASSERT_GT(p(r, c), 0.0);
      if (mask) ASSERT_FALSE((*mask)(r, c));
    }
  }
}

}  // namespace
}  // namespace swmot
