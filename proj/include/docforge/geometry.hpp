// Copyright 2026 The Docforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>

namespace docforge {

// Axis-aligned rectangle in page points, origin top-left, y growing downward.
struct BoundingBox {
  double left = 0;
  double top = 0;
  double right = 0;
  double bottom = 0;

  double width() const { return right - left; }
  double height() const { return bottom - top; }
  double center_x() const { return 0.5 * (left + right); }
  double center_y() const { return 0.5 * (top + bottom); }

  bool valid() const {
    return std::isfinite(left) && std::isfinite(top) && std::isfinite(right) &&
           std::isfinite(bottom) && left <= right && top <= bottom;
  }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

double bbox_area(const BoundingBox& b);

// Smallest box containing both.
BoundingBox bbox_union(const BoundingBox& a, const BoundingBox& b);

// Intersection; empty intersections collapse to a zero-area box.
BoundingBox bbox_intersection(const BoundingBox& a, const BoundingBox& b);

// area(a ∩ b) / area(a ∪ b), 0 when the union is empty.
double bbox_iou(const BoundingBox& a, const BoundingBox& b);

// area(a ∩ b) / area(a). A zero-area `a` counts as fully inside `b` when its
// center lies in `b` (edges inclusive), otherwise 0.
double bbox_overlap_frac(const BoundingBox& a, const BoundingBox& b);

// Clamp into [0,width]x[0,height]. Returns true if anything moved.
bool bbox_clamp(BoundingBox& b, double width, double height);

// Length of the overlap of [a0,a1] and [b0,b1], never negative.
inline double interval_overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

}  // namespace docforge
