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

#include "docforge/geometry.hpp"

namespace docforge {

double bbox_area(const BoundingBox& b) {
  return (b.right - b.left) * (b.bottom - b.top);
}

BoundingBox bbox_union(const BoundingBox& a, const BoundingBox& b) {
  return {std::min(a.left, b.left), std::min(a.top, b.top),
          std::max(a.right, b.right), std::max(a.bottom, b.bottom)};
}

BoundingBox bbox_intersection(const BoundingBox& a, const BoundingBox& b) {
  BoundingBox r{std::max(a.left, b.left), std::max(a.top, b.top),
                std::min(a.right, b.right), std::min(a.bottom, b.bottom)};
  if (r.right < r.left) r.right = r.left;
  if (r.bottom < r.top) r.bottom = r.top;
  return r;
}

namespace {

// Kept in the same operation order as the vector kernels so both paths
// produce bit-identical results.
double intersection_area(const BoundingBox& a, const BoundingBox& b) {
  const double w = std::min(a.right, b.right) - std::max(a.left, b.left);
  const double h = std::min(a.bottom, b.bottom) - std::max(a.top, b.top);
  if (w <= 0 || h <= 0) return 0;
  return w * h;
}

}  // namespace

double bbox_iou(const BoundingBox& a, const BoundingBox& b) {
  const double inter = intersection_area(a, b);
  const double uni = bbox_area(a) + bbox_area(b) - inter;
  if (uni <= 0) return 0;
  return inter / uni;
}

double bbox_overlap_frac(const BoundingBox& a, const BoundingBox& b) {
  const double area = bbox_area(a);
  if (area <= 0) {
    const double cx = a.center_x();
    const double cy = a.center_y();
    return (cx >= b.left && cx <= b.right && cy >= b.top && cy <= b.bottom)
               ? 1.0
               : 0.0;
  }
  return intersection_area(a, b) / area;
}

bool bbox_clamp(BoundingBox& b, double width, double height) {
  const BoundingBox before = b;
  b.left = std::clamp(b.left, 0.0, width);
  b.right = std::clamp(b.right, 0.0, width);
  b.top = std::clamp(b.top, 0.0, height);
  b.bottom = std::clamp(b.bottom, 0.0, height);
  return !(before == b);
}

}  // namespace docforge
