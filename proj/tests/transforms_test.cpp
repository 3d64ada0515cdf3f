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

#include "nttkit/transforms.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "nttkit/polymul.hpp"
#include "test_util.hpp"

namespace nttkit {
namespace {

using testing::random_poly;
using testing::ref_brv;
using testing::ref_evaluate;
using testing::ref_leaf_remainder;
using testing::ref_order;
using testing::ref_pow;

TransformSpec fwd(ConvKind c, Butterfly b, IndexOrder in, unsigned beta = 0) {
  return {c, b, Direction::kForward, in,
          in == IndexOrder::kNatural ? IndexOrder::kBitReversed
                                     : IndexOrder::kNatural,
          beta};
}

TransformSpec inv(ConvKind c, Butterfly b, IndexOrder in, unsigned beta = 0) {
  TransformSpec s = fwd(c, b, in, beta);
  s.direction = Direction::kInverse;
  return s;
}

std::vector<Residue> run(std::vector<Residue> v, const TransformSpec& s,
                         const Modulus& m) {
  const auto t = make_transform_table(s, v.size(), m,
                                      s.direction == Direction::kInverse);
  transform_in_place(v, t, s);
  return v;
}

// Smallest prime q = 1 mod k above `from`, found with the library-free
// order check.
std::uint64_t friendly_prime(std::uint64_t k, std::uint64_t from) {
  for (std::uint64_t q = (from / k + 1) * k + 1;; q += k) {
    bool prime = q > 1;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
      if (q % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) return q;
  }
}

TEST(ButterflyTest, Fixed) {
  const Modulus m(17);
  EXPECT_EQ(butterfly_ct(5, 0, 3, m), (std::pair<Residue, Residue>{5, 5}));
  EXPECT_EQ(butterfly_ct(1, 1, 16, m), (std::pair<Residue, Residue>{0, 2}));
  EXPECT_EQ(butterfly_gs(6, 6, 3, m), (std::pair<Residue, Residue>{12, 0}));
  EXPECT_EQ(butterfly_gs(1, 16, 2, m), (std::pair<Residue, Residue>{0, 4}));
}

TEST(ButterflyTest, GsUndoesCtUpToTwo) {
  const Modulus m(7681);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<Residue> d(0, 7680);
  for (int i = 0; i < 1000; ++i) {
    const Residue u = d(rng), v = d(rng), w = d(rng) | 1;
    const Residue wi = mod_inv(w, m);
    const auto [x, y] = butterfly_ct(u, v, w, m);
    const auto [s, t] = butterfly_gs(x, y, wi, m);
    EXPECT_EQ(s, mod_mul(2, u, m));
    EXPECT_EQ(t, mod_mul(2, v, m));
    const auto [hs, ht] = butterfly_gs_half(x, y, wi, m);
    EXPECT_EQ(hs, u);
    EXPECT_EQ(ht, v);
  }
}

TEST(TransformTest, DeltaAndConstant) {
  const Modulus m(17);
  for (IndexOrder in : {IndexOrder::kNatural, IndexOrder::kBitReversed}) {
    const auto d = run({1, 0, 0, 0},
                       fwd(ConvKind::kNegacyclic, Butterfly::kCooleyTukey, in), m);
    EXPECT_EQ(d, (std::vector<Residue>{1, 1, 1, 1}));
    const auto back =
        run({1, 1, 1, 1},
            inv(ConvKind::kNegacyclic, Butterfly::kGentlemanSande, in), m);
    EXPECT_EQ(back, (std::vector<Residue>{1, 0, 0, 0}));
    for (Butterfly b : {Butterfly::kCooleyTukey, Butterfly::kGentlemanSande}) {
      EXPECT_EQ(run({1, 1, 1, 1}, fwd(ConvKind::kCyclic, b, in), m),
                (std::vector<Residue>{4, 0, 0, 0}));
    }
  }
}

TEST(TransformTest, SpecViolations) {
  const Modulus m(17);
  auto expect_code = [&](const TransformSpec& s, ErrorCode code) {
    try {
      std::vector<Residue> v(4, 1);
      const auto t = make_transform_table(
          fwd(s.conv, Butterfly::kCooleyTukey, IndexOrder::kNatural), 4, m,
          s.direction == Direction::kInverse);
      transform_in_place(v, t, s);
      FAIL() << s.name();
    } catch (const NttError& e) {
      EXPECT_EQ(e.code(), code) << s.name();
    }
  };
  expect_code(fwd(ConvKind::kNegacyclic, Butterfly::kGentlemanSande,
                  IndexOrder::kNatural),
              ErrorCode::kSpecViolation);
  expect_code(inv(ConvKind::kNegacyclic, Butterfly::kCooleyTukey,
                  IndexOrder::kBitReversed),
              ErrorCode::kSpecViolation);
  TransformSpec same = fwd(ConvKind::kCyclic, Butterfly::kCooleyTukey,
                           IndexOrder::kNatural);
  same.out_order = IndexOrder::kNatural;
  expect_code(same, ErrorCode::kSpecViolation);
  // Wrong table order.
  std::vector<Residue> v(8, 1);
  const auto t4 = make_transform_table(
      fwd(ConvKind::kNegacyclic, Butterfly::kCooleyTukey, IndexOrder::kNatural),
      4, m, false);
  try {
    transform_in_place(v, t4, fwd(ConvKind::kNegacyclic,
                                  Butterfly::kCooleyTukey, IndexOrder::kNatural));
    FAIL();
  } catch (const NttError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOrderMismatch);
  }
}

TEST(TransformTest, VariantTable) {
  const auto all = standard_variants();
  EXPECT_EQ(all.size(), 12u);
  for (const auto& s : all) EXPECT_NO_THROW(s.validate());
  EXPECT_EQ(standard_pairings().size(), 20u);
}

// Forward output at physical block i equals evaluation at the leaf root.
void check_direct(const TransformSpec& s, std::uint64_t q, std::size_t n,
                  std::mt19937_64& rng) {
  const Modulus m(q);
  const auto tw = make_transform_table(s, n, m, false);
  const std::uint64_t k = tw.order();
  ASSERT_EQ(ref_order(tw.root(), q), k);
  const RingSpec ring = s.conv == ConvKind::kCyclic ? RingSpec::cyclic(n, q)
                                                     : RingSpec::negacyclic(n, q);
  const Poly a = random_poly(ring, rng);
  std::vector<Residue> x = a.coeffs;
  if (s.in_order == IndexOrder::kBitReversed) {
    for (std::size_t i = 0; i < n; ++i) x[ref_brv(i, n)] = a.coeffs[i];
  }
  transform_in_place(x, tw, s);
  std::vector<std::uint64_t> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t idx =
        s.out_order == IndexOrder::kBitReversed ? ref_brv(i, n) : i;
    const std::uint64_t e = s.conv == ConvKind::kCyclic ? idx : 2 * idx + 1;
    pts.push_back(ref_pow(tw.root(), e, q));
  }
  EXPECT_EQ(x, ref_evaluate(a.coeffs, pts, q)) << s.name() << " n=" << n;
}

TEST(TransformTest, DirectDefinitionSmallN) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 2; n <= 64; n *= 2) {
    for (const auto& s : standard_variants()) {
      if (s.direction != Direction::kForward) continue;
      check_direct(s, 7681, n, rng);
      check_direct(s, 12289, n, rng);
    }
  }
}

TEST(TransformTest, IncompleteLeavesMatchRemainders) {
  std::mt19937_64 rng(9);
  const std::uint64_t q = 3329;
  const std::size_t n = 256;
  for (IndexOrder in : {IndexOrder::kNatural, IndexOrder::kBitReversed}) {
    const auto s = fwd(ConvKind::kNegacyclic, Butterfly::kCooleyTukey, in, 1);
    const Modulus m(q);
    const auto tw = make_transform_table(s, n, m, false);
    ASSERT_EQ(ref_order(tw.root(), q), 256u);
    const Poly a = random_poly(RingSpec::negacyclic(n, q), rng);
    std::vector<Residue> x = a.coeffs;
    if (in == IndexOrder::kBitReversed) {
      for (std::size_t i = 0; i < 128; ++i) {
        for (std::size_t l = 0; l < 2; ++l) {
          x[ref_brv(i, 128) * 2 + l] = a.coeffs[i * 2 + l];
        }
      }
    }
    transform_in_place(x, tw, s);
    for (std::size_t i = 0; i < 128; ++i) {
      const std::uint64_t idx =
          s.out_order == IndexOrder::kBitReversed ? ref_brv(i, 128) : i;
      const std::uint64_t gamma = ref_pow(tw.root(), 2 * idx + 1, q);
      EXPECT_EQ(leaf_gamma(tw, s, n, i), gamma);
      const auto r = ref_leaf_remainder(a.coeffs, 2, gamma, q);
      EXPECT_EQ(x[2 * i], r[0]);
      EXPECT_EQ(x[2 * i + 1], r[1]);
    }
  }
}

TEST(TransformTest, IncompleteCyclicLeaves) {
  std::mt19937_64 rng(19);
  const std::uint64_t q = 257;
  const std::size_t n = 64;
  for (unsigned beta = 1; beta <= 3; ++beta) {
    for (Butterfly b : {Butterfly::kCooleyTukey, Butterfly::kGentlemanSande}) {
      const auto s = fwd(ConvKind::kCyclic, b, IndexOrder::kNatural, beta);
      const auto tw = make_transform_table(s, n, Modulus(q), false);
      const Poly a = random_poly(RingSpec::cyclic(n, q), rng);
      std::vector<Residue> x = a.coeffs;
      transform_in_place(x, tw, s);
      const std::size_t w = std::size_t{1} << beta;
      for (std::size_t i = 0; i < n / w; ++i) {
        const auto r = ref_leaf_remainder(a.coeffs, w, leaf_gamma(tw, s, n, i), q);
        for (std::size_t l = 0; l < w; ++l) EXPECT_EQ(x[i * w + l], r[l]);
      }
    }
  }
}

TEST(TransformTest, RoundTripAllPairings) {
  std::mt19937_64 rng(21);
  for (std::uint64_t q : {257ULL, 7681ULL, 8380417ULL}) {
    for (std::size_t n = 4; n <= 256; n *= 4) {
      unsigned beta = 0;
      while (beta + 1 < log2_exact(n) && (q - 1) % (2 * (n >> beta)) != 0) {
        ++beta;
      }
      for (const auto& [f, i] : standard_pairings(beta)) {
        const Modulus m(q);
        const auto tf = make_transform_table(f, n, m, false);
        const auto ti = make_transform_table(i, n, m, true);
        for (int t = 0; t < 5; ++t) {
          const Poly a = random_poly(RingSpec::cyclic(n, q), rng);
          const std::size_t w = std::size_t{1} << beta;
          std::vector<Residue> x = a.coeffs;
          if (f.in_order == IndexOrder::kBitReversed) reorder_in_place(x, w);
          transform_in_place(x, tf, f);
          if (f.out_order != i.in_order) reorder_in_place(x, w);
          transform_in_place(x, ti, i);
          if (i.out_order == IndexOrder::kBitReversed) reorder_in_place(x, w);
          ASSERT_EQ(x, a.coeffs) << f.name() << " / " << i.name() << " n=" << n;
        }
      }
    }
  }
}

TEST(TransformTest, OrderingDuality) {
  std::mt19937_64 rng(23);
  const Modulus m(7681);
  for (std::size_t n : {8u, 64u, 256u}) {
    for (const auto& s : standard_variants()) {
      if (s.in_order != IndexOrder::kNatural) continue;
      TransformSpec other = s;
      std::swap(other.in_order, other.out_order);
      const Poly a = random_poly(RingSpec::cyclic(n, 7681), rng);
      const auto direct = run(a.coeffs, s, m);
      auto via = reorder(a.coeffs, ReorderDirection::kToBitReversed);
      via = run(via, other, m);
      via = reorder(via, ReorderDirection::kToBitReversed);
      EXPECT_EQ(direct, via) << s.name();
    }
  }
}

TEST(TransformTest, TwistedAndSeparateAgreeWithMerged) {
  std::mt19937_64 rng(29);
  const std::size_t n = 128;
  const std::uint64_t q = 7681;
  const Modulus m(q);
  for (IndexOrder in : {IndexOrder::kNatural, IndexOrder::kBitReversed}) {
    const Poly a = random_poly(RingSpec::cyclic(n, q), rng);
    EXPECT_EQ(run(a.coeffs, fwd(ConvKind::kCyclic, Butterfly::kCooleyTukey, in), m),
              run(a.coeffs, fwd(ConvKind::kCyclic, Butterfly::kGentlemanSande, in), m));
    const auto merged =
        run(a.coeffs, fwd(ConvKind::kNegacyclic, Butterfly::kCooleyTukey, in), m);
    for (Butterfly b : {Butterfly::kCooleyTukey, Butterfly::kGentlemanSande}) {
      TransformSpec s = fwd(ConvKind::kNegacyclic, b, in);
      s.psi = PsiMode::kSeparate;
      const auto sep = run(a.coeffs, s, m);
      EXPECT_EQ(sep, merged);
      for (Butterfly ib : {Butterfly::kCooleyTukey, Butterfly::kGentlemanSande}) {
        TransformSpec si = inv(ConvKind::kNegacyclic, ib, s.out_order);
        si.psi = PsiMode::kSeparate;
        EXPECT_EQ(run(sep, si, m), a.coeffs);
      }
    }
  }
}

TEST(TransformTest, HalvingMatchesFinalScaling) {
  std::mt19937_64 rng(31);
  const Modulus m(3329);
  for (const auto& s : standard_variants(1)) {
    if (s.direction != Direction::kInverse) continue;
    TransformSpec h = s;
    h.scaling = Scaling::kPerLevelHalving;
    const Poly a = random_poly(RingSpec::cyclic(256, 3329), rng);
    EXPECT_EQ(run(a.coeffs, s, m), run(a.coeffs, h, m)) << s.name();
  }
}

TEST(TransformTest, TableTwoCounts) {
  const Modulus m(7681);
  for (std::size_t n : {8u, 64u, 256u}) {
    const std::uint64_t half_nlogn = n / 2 * log2_exact(n);
    for (const auto& s : standard_variants()) {
      std::vector<Residue> x(n, 3);
      const auto t = make_transform_table(s, n, m, s.direction == Direction::kInverse);
      OpCounter c;
      {
        ScopedOpCounter g(c);
        transform_in_place(x, t, s);
      }
      const std::uint64_t want =
          half_nlogn + (s.direction == Direction::kInverse ? n : 0);
      EXPECT_EQ(c.mults, want) << s.name();
      EXPECT_EQ(c.adds + c.subs, 2 * half_nlogn) << s.name();
    }
    TransformSpec sf = fwd(ConvKind::kNegacyclic, Butterfly::kCooleyTukey,
                           IndexOrder::kNatural);
    sf.psi = PsiMode::kSeparate;
    TransformSpec si = inv(ConvKind::kNegacyclic, Butterfly::kGentlemanSande,
                           IndexOrder::kBitReversed);
    si.psi = PsiMode::kSeparate;
    std::vector<Residue> x(n, 3);
    OpCounter c;
    {
      ScopedOpCounter g(c);
      transform_in_place(x, make_transform_table(sf, n, m, false), sf);
    }
    EXPECT_EQ(c.mults, half_nlogn + n);
    c.reset();
    {
      ScopedOpCounter g(c);
      transform_in_place(x, make_transform_table(si, n, m, true), si);
    }
    EXPECT_EQ(c.mults, half_nlogn + 2 * n);
    EXPECT_EQ(c.inverse_transforms, 1u);
  }
  // One level cropped.
  const auto s = fwd(ConvKind::kNegacyclic, Butterfly::kCooleyTukey,
                     IndexOrder::kNatural, 1);
  std::vector<Residue> x(256, 1);
  OpCounter c;
  {
    ScopedOpCounter g(c);
    transform_in_place(x, make_transform_table(s, 256, Modulus(3329), false), s);
  }
  EXPECT_EQ(c.mults, 896u);
}

TEST(TransformTest, Linearity) {
  std::mt19937_64 rng(37);
  const std::uint64_t q = 12289;
  const Modulus m(q);
  for (const auto& s : standard_variants()) {
    if (s.direction != Direction::kForward) continue;
    const RingSpec ring = RingSpec::cyclic(64, q);
    const Poly a = random_poly(ring, rng), b = random_poly(ring, rng);
    const Residue c = 4321;
    const auto fa = run(a.coeffs, s, m), fb = run(b.coeffs, s, m);
    const auto fsum = run((a + b).coeffs, s, m);
    std::vector<Residue> ca(a.coeffs);
    for (auto& v : ca) v = mod_mul(v, c, m);
    const auto fca = run(ca, s, m);
    for (std::size_t i = 0; i < 64; ++i) {
      EXPECT_EQ(fsum[i], (fa[i] + fb[i]) % q);
      EXPECT_EQ(fca[i], mod_mul(fa[i], c, m));
    }
  }
}

// After stage t of the bit-reversed-input CT pass, each run of 2^(t+1)
// entries is the natural-order DFT of a stride-n/2^(t+1) subsequence.
class LevelRecorder : public TransformObserver {
 public:
  void on_stage(unsigned, unsigned, std::span<const Residue> v) override {
    levels.emplace_back(v.begin(), v.end());
  }
  std::vector<std::vector<Residue>> levels;
};

TEST(TransformTest, StageOutputsMatchSmallerDfts) {
  std::mt19937_64 rng(41);
  const std::size_t n = 64;
  const std::uint64_t q = 7681;
  const auto s = fwd(ConvKind::kCyclic, Butterfly::kCooleyTukey,
                     IndexOrder::kBitReversed);
  const auto tw = make_transform_table(s, n, Modulus(q), false);
  const Poly a = random_poly(RingSpec::cyclic(n, q), rng);
  std::vector<Residue> x(n);
  for (std::size_t i = 0; i < n; ++i) x[ref_brv(i, n)] = a.coeffs[i];
  LevelRecorder rec;
  transform_in_place(x, tw, s, &rec);
  ASSERT_EQ(rec.levels.size(), 6u);
  for (unsigned t = 0; t < 6; ++t) {
    const std::size_t len = std::size_t{2} << t;
    const std::size_t stride = n / len;
    const std::uint64_t root = ref_pow(tw.root(), stride, q);
    for (std::size_t base = 0; base < n; base += len) {
      const std::size_t r = ref_brv(base, n);
      std::vector<std::uint64_t> sub;
      for (std::size_t k = 0; k < len; ++k) sub.push_back(a.coeffs[r + k * stride]);
      std::vector<std::uint64_t> pts;
      for (std::size_t j = 0; j < len; ++j) pts.push_back(ref_pow(root, j, q));
      const auto want = ref_evaluate(sub, pts, q);
      for (std::size_t j = 0; j < len; ++j) {
        ASSERT_EQ(rec.levels[t][base + j], want[j]) << t << " " << base;
      }
    }
  }
}

TEST(ReorderTest, Fixed) {
  EXPECT_EQ(reorder(std::vector<Residue>{5, 6}, ReorderDirection::kToNatural),
            (std::vector<Residue>{5, 6}));
  EXPECT_EQ(reorder(std::vector<Residue>{0, 1, 2, 3, 4, 5, 6, 7},
                    ReorderDirection::kToBitReversed),
            (std::vector<Residue>{0, 4, 2, 6, 1, 5, 3, 7}));
  std::mt19937_64 rng(2);
  std::vector<Residue> v(512);
  for (auto& x : v) x = rng();
  EXPECT_EQ(reorder(reorder(v, ReorderDirection::kToNatural),
                    ReorderDirection::kToNatural),
            v);
}

TEST(DomainPolyTest, ForwardInverseWrappers) {
  std::mt19937_64 rng(43);
  const RingSpec ring = RingSpec::negacyclic(256, 3329);
  const auto f = fwd(ConvKind::kNegacyclic, Butterfly::kCooleyTukey,
                     IndexOrder::kNatural, 1);
  const auto i = inv(ConvKind::kNegacyclic, Butterfly::kGentlemanSande,
                     IndexOrder::kBitReversed, 1);
  const auto tf = make_transform_table(f, 256, ring.modulus(), false);
  const auto ti = make_transform_table(i, 256, ring.modulus(), true);
  const Poly a = random_poly(ring, rng);
  const NttDomainPoly ah = ntt_forward(a, tf, f);
  EXPECT_EQ(ah.leaf_degree, 2u);
  EXPECT_EQ(ntt_inverse(ah, ti, i), a);
  EXPECT_THROW(ntt_forward(Poly(RingSpec::cyclic(256, 3329)), tf, f), NttError);
  auto wrong = i;
  wrong.in_order = IndexOrder::kNatural;
  wrong.out_order = IndexOrder::kBitReversed;
  EXPECT_THROW(ntt_inverse(ah, ti, wrong), NttError);
}

TEST(DomainPolyTest, DegenerateLengths) {
  const Modulus m(17);
  std::vector<Residue> one{5};
  const auto s = fwd(ConvKind::kCyclic, Butterfly::kCooleyTukey, IndexOrder::kNatural);
  transform_in_place(one, build_twiddles(1, 1, m, StorageOrder::kNatural, false), s);
  EXPECT_EQ(one[0], 5u);
  OpCounter c;
  std::vector<Residue> two{3, 4};
  {
    ScopedOpCounter g(c);
    transform_in_place(two, make_transform_table(s, 2, m, false), s);
  }
  EXPECT_EQ(c.mults, 1u);
  EXPECT_EQ(two, (std::vector<Residue>{7, 16}));
  EXPECT_EQ(friendly_prime(512, 7000), 7681u);
}

}  // namespace
}  // namespace nttkit
