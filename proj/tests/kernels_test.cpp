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

#include "docforge/kernels.hpp"

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "docforge/error.hpp"

namespace docforge::simd {
namespace {

using Kernel = void (*)(const BoundingBox&, const BoxColumns&, std::span<double>);

struct Variant {
  Isa isa;
  Kernel overlap;
  Kernel iou;
};

std::vector<Variant> vector_variants() {
  std::vector<Variant> out;
#if defined(__x86_64__) || defined(_M_X64)
  if (isa_supported(Isa::kAvx2)) out.push_back({Isa::kAvx2, avx2::overlap_frac_many, avx2::iou_many});
#endif
#if defined(__aarch64__)
  if (isa_supported(Isa::kNeon)) out.push_back({Isa::kNeon, neon::overlap_frac_many, neon::iou_many});
#endif
  return out;
}

BoundingBox random_box(std::mt19937_64& rng, bool integral) {
  std::uniform_real_distribution<double> u(0, 100);
  auto v = [&] { return integral ? std::floor(u(rng)) : u(rng); };
  const double l = v(), t = v();
  // Degenerate and touching boxes are the interesting edge cases.
  const int shape = static_cast<int>(rng() % 10);
  const double w = shape == 0 ? 0 : v();
  const double h = shape == 1 ? 0 : v();
  return {l, t, l + w, t + h};
}

void expect_bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(a[i]), std::bit_cast<std::uint64_t>(b[i]))
        << "lane " << i << ": " << a[i] << " vs " << b[i];
  }
}

TEST(Kernels, ScalarMatchesGeometry) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    BoxColumns cols;
    std::vector<BoundingBox> boxes;
    for (int i = 0; i < 13; ++i) {
      boxes.push_back(random_box(rng, trial % 2 == 0));
      cols.push_back(boxes.back());
    }
    const BoundingBox probe = random_box(rng, trial % 2 == 0);
    std::vector<double> ov(boxes.size()), io(boxes.size());
    scalar::overlap_frac_many(probe, cols, ov);
    scalar::iou_many(probe, cols, io);
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      EXPECT_EQ(ov[i], bbox_overlap_frac(probe, boxes[i]));
      EXPECT_EQ(io[i], bbox_iou(probe, boxes[i]));
    }
  }
}

TEST(Kernels, VectorVariantsAreBitIdentical) {
  const auto variants = vector_variants();
  if (variants.empty()) GTEST_SKIP() << "no vector unit on this machine";
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 2000; ++trial) {
    // Sizes around the vector width exercise the scalar tail.
    const std::size_t n = static_cast<std::size_t>(rng() % 19);
    BoxColumns cols;
    for (std::size_t i = 0; i < n; ++i) cols.push_back(random_box(rng, trial % 3 == 0));
    const BoundingBox probe = random_box(rng, trial % 3 == 0);
    std::vector<double> ref_ov(n), ref_io(n);
    scalar::overlap_frac_many(probe, cols, ref_ov);
    scalar::iou_many(probe, cols, ref_io);
    for (const auto& v : variants) {
      SCOPED_TRACE(std::string(isa_name(v.isa)));
      std::vector<double> ov(n), io(n);
      v.overlap(probe, cols, ov);
      v.iou(probe, cols, io);
      expect_bitwise_equal(ref_ov, ov);
      expect_bitwise_equal(ref_io, io);
    }
  }
}

TEST(Kernels, DispatchFollowsActiveIsa) {
  const Isa original = active_isa();
  std::mt19937_64 rng(3);
  BoxColumns cols;
  for (int i = 0; i < 9; ++i) cols.push_back(random_box(rng, false));
  const BoundingBox probe = random_box(rng, false);
  std::vector<double> ref(9), out(9);
  scalar::iou_many(probe, cols, ref);
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
    if (!isa_supported(isa)) continue;
    set_active_isa(isa);
    EXPECT_EQ(active_isa(), isa);
    iou_many(probe, cols, out);
    expect_bitwise_equal(ref, out);
  }
  set_active_isa(original);
}

TEST(Kernels, ScalarAlwaysSupported) {
  EXPECT_TRUE(isa_supported(Isa::kScalar));
  EXPECT_EQ(isa_name(Isa::kScalar), "scalar");
}

TEST(Kernels, UnsupportedIsaIsRejected) {
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    if (!isa_supported(isa)) {
      EXPECT_THROW(set_active_isa(isa), ConfigError);
    }
  }
}

TEST(Kernels, EmptyInput) {
  BoxColumns cols;
  std::vector<double> out;
  overlap_frac_many({0, 0, 1, 1}, cols, out);
  iou_many({0, 0, 1, 1}, cols, out);
  SUCCEED();
}

}  // namespace
}  // namespace docforge::simd
