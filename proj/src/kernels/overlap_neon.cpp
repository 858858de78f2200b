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

#include <arm_neon.h>

#include "docforge/kernels.hpp"

namespace docforge::simd::neon {

void overlap_frac_many(const BoundingBox& probe, const BoxColumns& boxes,
                       std::span<double> out) {
  const std::size_t n = boxes.size();
  const double area = (probe.right - probe.left) * (probe.bottom - probe.top);
  if (area <= 0) {
    scalar::overlap_frac_many(probe, boxes, out);
    return;
  }
  const float64x2_t pl = vdupq_n_f64(probe.left);
  const float64x2_t pt = vdupq_n_f64(probe.top);
  const float64x2_t pr = vdupq_n_f64(probe.right);
  const float64x2_t pb = vdupq_n_f64(probe.bottom);
  const float64x2_t va = vdupq_n_f64(area);
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t bl = vld1q_f64(boxes.left() + i);
    const float64x2_t bt = vld1q_f64(boxes.top() + i);
    const float64x2_t br = vld1q_f64(boxes.right() + i);
    const float64x2_t bb = vld1q_f64(boxes.bottom() + i);
    const float64x2_t w = vsubq_f64(vminq_f64(pr, br), vmaxq_f64(pl, bl));
    const float64x2_t h = vsubq_f64(vminq_f64(pb, bb), vmaxq_f64(pt, bt));
    const uint64x2_t pos = vandq_u64(vcgtq_f64(w, zero), vcgtq_f64(h, zero));
    const float64x2_t inter = vbslq_f64(pos, vmulq_f64(w, h), zero);
    vst1q_f64(out.data() + i, vdivq_f64(inter, va));
  }
  for (; i < n; ++i) {
    const double w = std::min(probe.right, boxes.right()[i]) -
                     std::max(probe.left, boxes.left()[i]);
    const double h = std::min(probe.bottom, boxes.bottom()[i]) -
                     std::max(probe.top, boxes.top()[i]);
    const double inter = (w <= 0 || h <= 0) ? 0.0 : w * h;
    out[i] = inter / area;
  }
}

void iou_many(const BoundingBox& probe, const BoxColumns& boxes,
              std::span<double> out) {
  const std::size_t n = boxes.size();
  const double area = (probe.right - probe.left) * (probe.bottom - probe.top);
  const float64x2_t pl = vdupq_n_f64(probe.left);
  const float64x2_t pt = vdupq_n_f64(probe.top);
  const float64x2_t pr = vdupq_n_f64(probe.right);
  const float64x2_t pb = vdupq_n_f64(probe.bottom);
  const float64x2_t va = vdupq_n_f64(area);
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t bl = vld1q_f64(boxes.left() + i);
    const float64x2_t bt = vld1q_f64(boxes.top() + i);
    const float64x2_t br = vld1q_f64(boxes.right() + i);
    const float64x2_t bb = vld1q_f64(boxes.bottom() + i);
    const float64x2_t w = vsubq_f64(vminq_f64(pr, br), vmaxq_f64(pl, bl));
    const float64x2_t h = vsubq_f64(vminq_f64(pb, bb), vmaxq_f64(pt, bt));
    const uint64x2_t pos = vandq_u64(vcgtq_f64(w, zero), vcgtq_f64(h, zero));
    const float64x2_t inter = vbslq_f64(pos, vmulq_f64(w, h), zero);
    const float64x2_t other = vmulq_f64(vsubq_f64(br, bl), vsubq_f64(bb, bt));
    const float64x2_t uni = vsubq_f64(vaddq_f64(va, other), inter);
    const uint64x2_t ok = vcgtq_f64(uni, zero);
    vst1q_f64(out.data() + i, vbslq_f64(ok, vdivq_f64(inter, uni), zero));
  }
  for (; i < n; ++i) {
    const double w = std::min(probe.right, boxes.right()[i]) -
                     std::max(probe.left, boxes.left()[i]);
    const double h = std::min(probe.bottom, boxes.bottom()[i]) -
                     std::max(probe.top, boxes.top()[i]);
    const double inter = (w <= 0 || h <= 0) ? 0.0 : w * h;
    const double other = (boxes.right()[i] - boxes.left()[i]) *
                         (boxes.bottom()[i] - boxes.top()[i]);
    const double uni = area + other - inter;
    out[i] = uni <= 0 ? 0.0 : inter / uni;
  }
}

}  // namespace docforge::simd::neon
