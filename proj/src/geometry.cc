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

#include "swmot/geometry.h"

#include <algorithm>
#include <cmath>

namespace swmot {
namespace {
constexpr double kCoreRatio = 0.6;
}  // namespace

BBox BoxCenteredAt(double cx, double cy, double w, double h) {
  return BBox{cx - 0.5 * w, cy - 0.5 * h, w, h};
}

double IntersectionArea(const BBox& a, const BBox& b) {
  const double iw = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  return iw * ih;
}

double Iou(const BBox& a, const BBox& b) {
  const double inter = IntersectionArea(a, b);
  if (inter <= 0.0) return 0.0;
  // Self-overlap is reported as exactly 1 regardless of rounding.
  if (a == b) return 1.0;
  const double uni = a.area() + b.area() - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

BBox Core(const BBox& b) {
  return BoxCenteredAt(b.center_x(), b.center_y(), kCoreRatio * b.w,
                       kCoreRatio * b.h);
}

double CenterDistance(const BBox& a, const BBox& b) {
  return std::hypot(a.center_x() - b.center_x(), a.center_y() - b.center_y());
}

}  // namespace swmot
