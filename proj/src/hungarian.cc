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

#include <limits>

namespace swmot {
namespace {

// Requires rows <= cols. Indices are 1-based internally with row/column 0
// as the virtual source.
std::vector<int> SolveWide(const Matrix<double>& a) {
  const int n = a.rows();
  const int m = a.cols();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

std::vector<int> SolveMinCostAssignment(const Matrix<double>& cost) {
  if (cost.empty()) return std::vector<int>(cost.rows(), -1);
  if (cost.rows() <= cost.cols()) return SolveWide(cost);
  Matrix<double> t(cost.cols(), cost.rows());
  for (int r = 0; r < cost.rows(); ++r) {
    for (int c = 0; c < cost.cols(); ++c) t(c, r) = cost(r, c);
  }
  const std::vector<int> col_to_row = SolveWide(t);
  std::vector<int> row_to_col(cost.rows(), -1);
  for (int c = 0; c < static_cast<int>(col_to_row.size()); ++c) {
    if (col_to_row[c] >= 0) row_to_col[col_to_row[c]] = c;
  }
  return row_to_col;
}

Assignment Hungarian(const Matrix<double>& probabilities,
                     const ForbidMask* forbid, double gate) {
  const int n = probabilities.rows();
  const int m = probabilities.cols();
  Assignment result;
  if (n == 0 || m == 0) return result;
  // Disallowed pairs get weight 0, which is the same as leaving both sides
  // unmatched, so a full assignment on the weights is an optimal partial
  // matching on the allowed pairs.
  Matrix<unsigned char> allowed(n, m, 0);
  Matrix<double> cost(n, m, 0.0);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < m; ++c) {
      const double p = probabilities(r, c);
      const bool ok = !(forbid != nullptr && (*forbid)(r, c)) && p >= gate &&
                      p > 0.0;
      allowed(r, c) = ok;
      cost(r, c) = ok ? -p : 0.0;
    }
  }
  const std::vector<int> row_to_col = SolveMinCostAssignment(cost);
  for (int r = 0; r < n; ++r) {
    const int c = row_to_col[r];
    if (c >= 0 && allowed(r, c)) result.emplace_back(r, c);
  }
  return result;
}

double AssignmentTotal(const Matrix<double>& probabilities,
                       const Assignment& assignment) {
  double total = 0.0;
  for (const auto& [r, c] : assignment) total += probabilities(r, c);
  return total;
}

}  // namespace swmot
