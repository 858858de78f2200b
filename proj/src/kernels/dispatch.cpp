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

#include <cstdlib>
#include <string>

#include "docforge/error.hpp"
#include "docforge/kernels.hpp"

namespace docforge::simd {

BoxColumns::BoxColumns(std::span<const BoundingBox> boxes) {
  left_.reserve(boxes.size());
  top_.reserve(boxes.size());
  right_.reserve(boxes.size());
  bottom_.reserve(boxes.size());
  for (const auto& b : boxes) push_back(b);
}

void BoxColumns::push_back(const BoundingBox& b) {
  left_.push_back(b.left);
  top_.push_back(b.top);
  right_.push_back(b.right);
  bottom_.push_back(b.bottom);
}

void BoxColumns::clear() {
  left_.clear();
  top_.clear();
  right_.clear();
  bottom_.clear();
}

namespace scalar {

void overlap_frac_many(const BoundingBox& probe, const BoxColumns& boxes,
                       std::span<double> out) {
  const std::size_t n = boxes.size();
  const double area = (probe.right - probe.left) * (probe.bottom - probe.top);
  if (area <= 0) {
    const double cx = 0.5 * (probe.left + probe.right);
    const double cy = 0.5 * (probe.top + probe.bottom);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = (cx >= boxes.left()[i] && cx <= boxes.right()[i] &&
                cy >= boxes.top()[i] && cy <= boxes.bottom()[i])
                   ? 1.0
                   : 0.0;
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
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
  for (std::size_t i = 0; i < n; ++i) {
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

}  // namespace scalar

namespace {

using OverlapFn = void (*)(const BoundingBox&, const BoxColumns&,
                           std::span<double>);

struct KernelTable {
  Isa isa;
  OverlapFn overlap_frac;
  OverlapFn iou;
};

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

KernelTable table_for(Isa isa) {
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::kAvx2:
      return {Isa::kAvx2, &avx2::overlap_frac_many, &avx2::iou_many};
#endif
#if defined(__aarch64__)
    case Isa::kNeon:
      return {Isa::kNeon, &neon::overlap_frac_many, &neon::iou_many};
#endif
    default:
      return {Isa::kScalar, &scalar::overlap_frac_many, &scalar::iou_many};
  }
}

Isa detect_isa() {
  if (const char* env = std::getenv("DOCFORGE_SIMD")) {
    const std::string v = env;
    if (v == "scalar") return Isa::kScalar;
    if (v == "avx2" && isa_supported(Isa::kAvx2)) return Isa::kAvx2;
    if (v == "neon" && isa_supported(Isa::kNeon)) return Isa::kNeon;
  }
  if (isa_supported(Isa::kAvx2)) return Isa::kAvx2;
  if (isa_supported(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

KernelTable& active() {
  static KernelTable table = table_for(detect_isa());
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
    case Isa::kScalar:
      break;
  }
  return "scalar";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
      return cpu_has_avx2();
    case Isa::kNeon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return active().isa; }

// Not synchronized with concurrent kernel calls; switch only while idle.
void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw ConfigError("SIMD implementation '" + std::string(isa_name(isa)) +
                      "' is not supported on this CPU");
  }
  active() = table_for(isa);
}

void overlap_frac_many(const BoundingBox& probe, const BoxColumns& boxes,
                       std::span<double> out) {
  active().overlap_frac(probe, boxes, out);
}

void iou_many(const BoundingBox& probe, const BoxColumns& boxes,
              std::span<double> out) {
  active().iou(probe, boxes, out);
}

}  // namespace docforge::simd
