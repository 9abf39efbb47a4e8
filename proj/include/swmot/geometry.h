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

#ifndef SWMOT_GEOMETRY_H_
#define SWMOT_GEOMETRY_H_

namespace swmot {

// Axis-aligned box in image coordinates. y grows downward, so bottom() is the
// edge closest to the camera for ground-plane scenes. Width and height must be
// strictly positive; inputs are validated where boxes enter the system.
struct BBox {
  double x = 0.0;
  double y = 0.0;
  double w = 1.0;
  double h = 1.0;

  double right() const { return x + w; }
  double bottom() const { return y + h; }
  double area() const { return w * h; }
  double center_x() const { return x + 0.5 * w; }
  double center_y() const { return y + 0.5 * h; }
  bool valid() const { return w > 0.0 && h > 0.0; }

  friend bool operator==(const BBox&, const BBox&) = default;
};

// Box of size w x h centered at (cx, cy).
BBox BoxCenteredAt(double cx, double cy, double w, double h);

double IntersectionArea(const BBox& a, const BBox& b);

// Intersection over union, 0 for disjoint boxes.
double Iou(const BBox& a, const BBox& b);

// Central region with 60% of the width and height, same center.
BBox Core(const BBox& b);

// Euclidean distance between box centers.
double CenterDistance(const BBox& a, const BBox& b);

}  // namespace swmot

#endif  // SWMOT_GEOMETRY_H_
