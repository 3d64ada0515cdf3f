// Copyright 2026 The nttkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Counts heap allocations made while transforms run in place.

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <new>
#include <random>
#include <vector>

#include "nttkit/transforms.hpp"

namespace {
std::atomic<long> g_allocations{0};
}  // namespace

void* operator new(std::size_t size) {
  g_allocations.fetch_add(1, std::memory_order_relaxed);
  if (void* p = std::malloc(size == 0 ? 1 : size)) return p;
  throw std::bad_alloc();
}
void* operator new[](std::size_t size) { return operator new(size); }
void operator delete(void* p) noexcept { std::free(p); }
void operator delete[](void* p) noexcept { std::free(p); }
void operator delete(void* p, std::size_t) noexcept { std::free(p); }
void operator delete[](void* p, std::size_t) noexcept { std::free(p); }

namespace nttkit {
namespace {

TEST(InPlaceTest, TransformsDoNotAllocate) {
  const Modulus m(7681);
  std::mt19937_64 rng(30);
  for (unsigned beta : {0u, 1u, 2u}) {
    for (const TransformSpec& spec : standard_variants(beta)) {
      for (std::size_t n : {16u, 256u}) {
        const TwiddleTable table = make_transform_table(
            spec, n, m, spec.direction == Direction::kInverse);
        std::vector<Residue> x(n);
        for (auto& v : x) v = rng() % 7681;
        const long before = g_allocations.load();
        transform_in_place(x, table, spec);
        reorder_in_place(x, std::size_t{1} << beta);
        EXPECT_EQ(g_allocations.load() - before, 0) << spec.name() << " n=" << n;
      }
    }
  }
}

TEST(InPlaceTest, CountingDoesNotAllocate) {
  const Modulus m(12289);
  const TransformSpec spec;
  const TwiddleTable table = make_transform_table(spec, 512, m, false);
  std::vector<Residue> x(512, 3);
  OpCounter counter;
  const long before = g_allocations.load();
  {
    ScopedOpCounter scope(counter);
    transform_in_place(x, table, spec);
  }
  EXPECT_EQ(g_allocations.load() - before, 0);
  EXPECT_EQ(counter.mults, 512u / 2 * 9);
}

}  // namespace
}  // namespace nttkit
