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

#include "nttkit/splitting.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <vector>

#include "test_util.hpp"

namespace nttkit {
namespace {

using testing::random_poly;

TEST(SplitTest, IndexFormula) {
  const RingSpec ring = RingSpec::negacyclic(8, 17);
  const Poly a(ring, {0, 1, 2, 3, 4, 5, 6, 7});
  const SplitPoly s0 = split(a, 0);
  ASSERT_EQ(s0.parts.size(), 1u);
  EXPECT_EQ(s0.parts[0].coeffs, a.coeffs);
  const SplitPoly s1 = split(a, 1);
  EXPECT_EQ(s1.parts[0].coeffs, (std::vector<Residue>{0, 2, 4, 6}));
  EXPECT_EQ(s1.parts[1].coeffs, (std::vector<Residue>{1, 3, 5, 7}));
  EXPECT_EQ(s1.parts[0].ring, RingSpec::negacyclic(4, 17));
}

TEST(SplitTest, RoundTrip) {
  std::mt19937_64 rng(1);
  for (RingForm f : {RingForm::kXnMinus1, RingForm::kXnPlus1}) {
    const RingSpec ring(f, 64, 3329);
    for (unsigned alpha = 0; alpha <= 3; ++alpha) {
      for (int t = 0; t < 10; ++t) {
        const Poly a = random_poly(ring, rng);
        EXPECT_EQ(unsplit(split(a, alpha)), a);
      }
    }
  }
  try {
    split(Poly(RingSpec::negacyclic(12, 17)), 3);
    FAIL();
  } catch (const NttError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadAlpha);
  }
}

TEST(ShiftTest, Wraps) {
  const RingSpec nwc = RingSpec::negacyclic(4, 17);
  EXPECT_EQ(shift_by_y(Poly(nwc, {5})).coeffs, (std::vector<Residue>{0, 5, 0, 0}));
  EXPECT_EQ(shift_by_y(Poly(nwc, {0, 0, 0, 5})).coeffs,
            (std::vector<Residue>{12, 0, 0, 0}));
  const RingSpec cc = RingSpec::cyclic(4, 17);
  EXPECT_EQ(shift_by_y(Poly(cc, {0, 0, 0, 5})).coeffs,
            (std::vector<Residue>{5, 0, 0, 0}));
  std::mt19937_64 rng(2);
  const Poly p = random_poly(RingSpec::negacyclic(32, 3329), rng);
  Poly s = p;
  for (int i = 0; i < 32; ++i) s = shift_by_y(s);
  EXPECT_EQ(s + p, Poly(p.ring));
}

TEST(SplitStrategyTest, SmallKyberMatchesOracle) {
  std::mt19937_64 rng(3);
  const RingSpec ring = RingSpec::negacyclic(256, 3329);
  const SplitPlan plan(ring, 1);
  for (int t = 0; t < 100; ++t) {
    const Poly a = random_poly(ring, rng), b = random_poly(ring, rng);
    const Poly want = schoolbook_nwc(a, b);
    ASSERT_EQ(plan.ptntt(a, b), want);
    ASSERT_EQ(plan.kntt(a, b), want);
  }
}

TEST(SplitStrategyTest, AllAlphasAndForms) {
  std::mt19937_64 rng(4);
  for (RingForm f : {RingForm::kXnMinus1, RingForm::kXnPlus1}) {
    const RingSpec ring(f, 64, 257);
    for (unsigned alpha = 0; alpha <= 3; ++alpha) {
      for (unsigned beta = 0; beta <= 2; ++beta) {
        const SplitPlan plan(ring, alpha, beta, beta > 0);
        for (int t = 0; t < 5; ++t) {
          const Poly a = random_poly(ring, rng), b = random_poly(ring, rng);
          const Poly want = schoolbook_multiply(a, b);
          ASSERT_EQ(plan.ptntt(a, b), want) << alpha << " " << beta;
          ASSERT_EQ(plan.kntt(a, b), want) << alpha << " " << beta;
        }
      }
    }
  }
}

TEST(SplitStrategyTest, TransformCounts) {
  std::mt19937_64 rng(5);
  const RingSpec ring = RingSpec::negacyclic(256, 7681);
  for (unsigned alpha = 1; alpha <= 3; ++alpha) {
    const SplitPlan plan(ring, alpha);
    const Poly a = random_poly(ring, rng), b = random_poly(ring, rng);
    const std::uint64_t k = 1u << alpha;
    OpCounter pt, kt;
    {
      ScopedOpCounter g(pt);
      plan.ptntt(a, b);
    }
    {
      ScopedOpCounter g(kt);
      plan.kntt(a, b);
    }
    EXPECT_EQ(pt.forward_transforms, 3 * k - 1);
    EXPECT_EQ(pt.inverse_transforms, k);
    EXPECT_EQ(kt.forward_transforms, 2 * k);
    EXPECT_EQ(kt.inverse_transforms, k);
  }
}

// Multiplications of the pointwise stage only: total minus transforms.
std::uint64_t pointwise_mults(const std::function<void()>& body,
                              std::uint64_t transform_mults) {
  OpCounter c;
  {
    ScopedOpCounter g(c);
    body();
  }
  return c.mults - transform_mults;
}

TEST(SplitStrategyTest, KaratsubaPairSavesProducts) {
  std::mt19937_64 rng(6);
  const RingSpec ring = RingSpec::negacyclic(256, 3329);
  const SplitPlan plan(ring, 1);
  const Poly a = random_poly(ring, rng), b = random_poly(ring, rng);
  const std::uint64_t m = 128;  // inner length
  const std::uint64_t fwd = m / 2 * 7, inv = fwd + m;
  // Pt: 5 forward, 2 inverse, 4 products. K: 4 forward, 2 inverse,
  // 3 products plus one multiplication by the transform of y.
  EXPECT_EQ(pointwise_mults([&] { plan.ptntt(a, b); }, 5 * fwd + 2 * inv), 4 * m);
  EXPECT_EQ(pointwise_mults([&] { plan.kntt(a, b); }, 4 * fwd + 2 * inv), 4 * m);
  const SplitPlan plan2(ring, 2, 0);
  const std::uint64_t m2 = 64, f2 = m2 / 2 * 6, i2 = f2 + m2;
  EXPECT_EQ(pointwise_mults([&] { plan2.ptntt(a, b); }, 11 * f2 + 4 * i2), 16 * m2);
  EXPECT_EQ(pointwise_mults([&] { plan2.kntt(a, b); }, 8 * f2 + 4 * i2),
            (10 + 3) * m2);
}

TEST(SplitStrategyTest, HnttSpecialisations) {
  std::mt19937_64 rng(7);
  const RingSpec kyber = RingSpec::negacyclic(256, 3329);
  TransformOptions kara;
  kara.karatsuba_leaves = true;
  const TransformPlan incomplete(kyber, 1, kara);
  for (int t = 0; t < 20; ++t) {
    const Poly a = random_poly(kyber, rng), b = random_poly(kyber, rng);
    EXPECT_EQ(hntt_multiply(a, b, 0, 1), ntt_multiply(a, b, incomplete));
    EXPECT_EQ(hntt_multiply(a, b, 1, 1), schoolbook_nwc(a, b));
  }
  const RingSpec dil = RingSpec::negacyclic(256, 8380417);
  const Poly a = random_poly(dil, rng), b = random_poly(dil, rng);
  OpCounter h, p;
  Poly x(dil), y(dil);
  {
    ScopedOpCounter g(h);
    x = hntt_multiply(a, b, 0, 0);
  }
  const TransformPlan full(dil, 0);
  {
    ScopedOpCounter g(p);
    y = ntt_multiply(a, b, full);
  }
  EXPECT_EQ(x, y);
  EXPECT_EQ(h.mults, p.mults);
  EXPECT_THROW(hntt_multiply(random_poly(kyber, rng), random_poly(kyber, rng), 0, 0),
               NttError);
}

TEST(SplitStrategyTest, HnttMatchesIncompleteCounts) {
  // H-NTT(alpha, 0) against the incomplete pipeline cropped by alpha levels
  // with Karatsuba leaves: same product, same pointwise-stage cost.
  std::mt19937_64 rng(8);
  const RingSpec ring = RingSpec::negacyclic(256, 7681);
  for (unsigned alpha = 1; alpha <= 3; ++alpha) {
    const std::uint64_t k = 1u << alpha;
    const SplitPlan h(ring, alpha, 0);
    TransformOptions kara;
    kara.karatsuba_leaves = true;
    const TransformPlan inc(ring, alpha, kara);
    const Poly a = random_poly(ring, rng), b = random_poly(ring, rng);
    const auto ah = inc.forward(a), bh = inc.forward(b);
    OpCounter c;
    NttDomainPoly prod = ah;
    {
      ScopedOpCounter g(c);
      prod = inc.pointwise(ah, bh);
    }
    const std::uint64_t want = 256 / k * (k * (k + 1) / 2 + k - 1);
    EXPECT_EQ(c.mults, want);
    EXPECT_EQ(inc.inverse(prod), h.kntt(a, b));
    const std::uint64_t m = 256 / k, lg = log2_exact(m);
    const std::uint64_t fwd = m / 2 * lg, inv = fwd + m;
    EXPECT_EQ(pointwise_mults([&] { h.kntt(a, b); }, 2 * k * fwd + k * inv), want);
  }
}

TEST(SplitStrategyTest, CongruenceFailure) {
  try {
    SplitPlan(RingSpec::negacyclic(256, 3329), 0, 0);
    FAIL();
  } catch (const NttError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParameterCondition);
  }
}

}  // namespace
}  // namespace nttkit
