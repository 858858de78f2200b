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

// Compiled with -mavx2. Only reached after a runtime CPU check.

#include <immintrin.h>

#include "docforge/kernels.hpp"

namespace docforge::simd::avx2 {

void overlap_frac_many(const BoundingBox& probe, const BoxColumns& boxes,
                       std::span<double> out) {
  const std::size_t n = boxes.size();
  const double area = (probe.right - probe.left) * (probe.bottom - probe.top);
  std::size_t i = 0;

  if (area <= 0) {
    const __m256d cx = _mm256_set1_pd(0.5 * (probe.left + probe.right));
    const __m256d cy = _mm256_set1_pd(0.5 * (probe.top + probe.bottom));
    const __m256d one = _mm256_set1_pd(1.0);
    for (; i + 4 <= n; i += 4) {
      const __m256d bl = _mm256_loadu_pd(boxes.left() + i);
      const __m256d bt = _mm256_loadu_pd(boxes.top() + i);
      const __m256d br = _mm256_loadu_pd(boxes.right() + i);
      const __m256d bb = _mm256_loadu_pd(boxes.bottom() + i);
      __m256d inside = _mm256_and_pd(_mm256_cmp_pd(cx, bl, _CMP_GE_OQ),
                                     _mm256_cmp_pd(cx, br, _CMP_LE_OQ));
      inside = _mm256_and_pd(inside, _mm256_cmp_pd(cy, bt, _CMP_GE_OQ));
      inside = _mm256_and_pd(inside, _mm256_cmp_pd(cy, bb, _CMP_LE_OQ));
      _mm256_storeu_pd(out.data() + i, _mm256_and_pd(inside, one));
    }
    const double sx = 0.5 * (probe.left + probe.right);
    const double sy = 0.5 * (probe.top + probe.bottom);
    for (; i < n; ++i) {
      out[i] = (sx >= boxes.left()[i] && sx <= boxes.right()[i] &&
                sy >= boxes.top()[i] && sy <= boxes.bottom()[i])
                   ? 1.0
                   : 0.0;
    }
    return;
  }

  const __m256d pl = _mm256_set1_pd(probe.left);
  const __m256d pt = _mm256_set1_pd(probe.top);
  const __m256d pr = _mm256_set1_pd(probe.right);
  const __m256d pb = _mm256_set1_pd(probe.bottom);
  const __m256d va = _mm256_set1_pd(area);
  const __m256d zero = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4) {
    const __m256d bl = _mm256_loadu_pd(boxes.left() + i);
    const __m256d bt = _mm256_loadu_pd(boxes.top() + i);
    const __m256d br = _mm256_loadu_pd(boxes.right() + i);
    const __m256d bb = _mm256_loadu_pd(boxes.bottom() + i);
    const __m256d w =
        _mm256_sub_pd(_mm256_min_pd(pr, br), _mm256_max_pd(pl, bl));
    const __m256d h =
        _mm256_sub_pd(_mm256_min_pd(pb, bb), _mm256_max_pd(pt, bt));
    const __m256d pos = _mm256_and_pd(_mm256_cmp_pd(w, zero, _CMP_GT_OQ),
                                      _mm256_cmp_pd(h, zero, _CMP_GT_OQ));
    const __m256d inter = _mm256_and_pd(pos, _mm256_mul_pd(w, h));
    _mm256_storeu_pd(out.data() + i, _mm256_div_pd(inter, va));
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
  const __m256d pl = _mm256_set1_pd(probe.left);
  const __m256d pt = _mm256_set1_pd(probe.top);
  const __m256d pr = _mm256_set1_pd(probe.right);
  const __m256d pb = _mm256_set1_pd(probe.bottom);
  const __m256d va = _mm256_set1_pd(area);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d bl = _mm256_loadu_pd(boxes.left() + i);
    const __m256d bt = _mm256_loadu_pd(boxes.top() + i);
    const __m256d br = _mm256_loadu_pd(boxes.right() + i);
    const __m256d bb = _mm256_loadu_pd(boxes.bottom() + i);
    const __m256d w =
        _mm256_sub_pd(_mm256_min_pd(pr, br), _mm256_max_pd(pl, bl));
    const __m256d h =
        _mm256_sub_pd(_mm256_min_pd(pb, bb), _mm256_max_pd(pt, bt));
    const __m256d pos = _mm256_and_pd(_mm256_cmp_pd(w, zero, _CMP_GT_OQ),
                                      _mm256_cmp_pd(h, zero, _CMP_GT_OQ));
    const __m256d inter = _mm256_and_pd(pos, _mm256_mul_pd(w, h));
    const __m256d other =
        _mm256_mul_pd(_mm256_sub_pd(br, bl), _mm256_sub_pd(bb, bt));
    const __m256d uni = _mm256_sub_pd(_mm256_add_pd(va, other), inter);
    const __m256d ok = _mm256_cmp_pd(uni, zero, _CMP_GT_OQ);
    _mm256_storeu_pd(out.data() + i,
                     _mm256_and_pd(ok, _mm256_div_pd(inter, uni)));
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

}  // namespace docforge::simd::avx2
