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

// Batched box-overlap kernels. Every hot loop that compares one box against
// many (overlap suppression, token assignment, table cell matching) goes
// through here. The scalar path is the reference; vector paths must agree
// with it bit for bit.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "docforge/geometry.hpp"

namespace docforge::simd {

// Structure-of-arrays copy of a box list.
class BoxColumns {
 public:
  BoxColumns() = default;
  explicit BoxColumns(std::span<const BoundingBox> boxes);

  void push_back(const BoundingBox& b);
  void clear();
  std::size_t size() const { return left_.size(); }
  bool empty() const { return left_.empty(); }

  const double* left() const { return left_.data(); }
  const double* top() const { return top_.data(); }
  const double* right() const { return right_.data(); }
  const double* bottom() const { return bottom_.data(); }

 private:
  std::vector<double> left_, top_, right_, bottom_;
};

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);

// The implementation in use. Chosen once from CPU features; the
// DOCFORGE_SIMD environment variable ("scalar", "avx2", "neon") overrides.
Isa active_isa();

// Switch implementations at runtime. Throws ConfigError when unsupported.
void set_active_isa(Isa isa);

// out[i] = bbox_overlap_frac(probe, boxes[i])
void overlap_frac_many(const BoundingBox& probe, const BoxColumns& boxes,
                       std::span<double> out);

// out[i] = bbox_iou(probe, boxes[i])
void iou_many(const BoundingBox& probe, const BoxColumns& boxes,
              std::span<double> out);

// Per-ISA entry points, exposed for equivalence tests and benchmarks.
namespace scalar {
void overlap_frac_many(const BoundingBox& probe, const BoxColumns& boxes,
                       std::span<double> out);
void iou_many(const BoundingBox& probe, const BoxColumns& boxes,
              std::span<double> out);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void overlap_frac_many(const BoundingBox& probe, const BoxColumns& boxes,
                       std::span<double> out);
void iou_many(const BoundingBox& probe, const BoxColumns& boxes,
              std::span<double> out);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
void overlap_frac_many(const BoundingBox& probe, const BoxColumns& boxes,
                       std::span<double> out);
void iou_many(const BoundingBox& probe, const BoxColumns& boxes,
              std::span<double> out);
}  // namespace neon
#endif

}  // namespace docforge::simd
