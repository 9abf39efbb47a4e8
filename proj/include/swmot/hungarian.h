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

#ifndef SWMOT_HUNGARIAN_H_
#define SWMOT_HUNGARIAN_H_

#include <cstddef>
#include <utility>
#include <vector>

namespace swmot {

// Dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(int r, int c) { return data_[Index(r, c)]; }
  const T& operator()(int r, int c) const { return data_[Index(r, c)]; }

 private:
  std::size_t Index(int r, int c) const {
    return static_cast<std::size_t>(r) * cols_ + c;
  }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

// Minimum-cost assignment of every row to a distinct column (rows <= cols
// or the matrix is transposed internally). Returns, per row, the assigned
// column. Classic potentials-based O(n^2 m) Hungarian method; columns are
// scanned in index order so ties resolve toward smaller indices.
std::vector<int> SolveMinCostAssignment(const Matrix<double>& cost);

using ForbidMask = Matrix<unsigned char>;

using Assignment = std::vector<std::pair<int, int>>;

// Maximum-total-probability one-to-one partial matching. Pairs that are
// forbidden or whose probability is below gate stay unmatched. Result is
// sorted by row.
Assignment Hungarian(const Matrix<double>& probabilities,
                     const ForbidMask* forbid = nullptr, double gate = 0.3);

// Sum of probabilities over the assignment.
double AssignmentTotal(const Matrix<double>& probabilities,
                       const Assignment& assignment);

}  // namespace swmot

#endif  // SWMOT_HUNGARIAN_H_
