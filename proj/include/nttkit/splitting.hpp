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

#pragma once

// Splitting x^n +- 1 into 2^alpha interleaved parts over y = x^(2^alpha),
// and the three product strategies built on it.

#include <optional>
#include <vector>

#include "nttkit/polymul.hpp"
#include "nttkit/ring.hpp"

namespace nttkit {

struct SplitPoly {
  std::vector<Poly> parts;  // parts[i][j] = a[2^alpha * j + i]
  unsigned alpha;
  RingSpec parent;
};

/// The ring Z_q[y]/(y^(n/2^alpha) +- 1) that the parts live in.
RingSpec split_ring(const RingSpec& parent, unsigned alpha);

SplitPoly split(const Poly& a, unsigned alpha);
Poly unsplit(const SplitPoly& s);

/// Multiplies a part by y: rotate up one place, negating the wrapped
/// coefficient over y^m + 1.
Poly shift_by_y(const Poly& part);

/// Inner transform over the split ring plus the cached transform of y.
class SplitPlan {
 public:
  /// beta crops the inner transform; karatsuba selects Karatsuba leaves.
  SplitPlan(const RingSpec& parent, unsigned alpha, unsigned beta = 0,
            bool karatsuba_leaves = false);

  const RingSpec& parent() const noexcept { return parent_; }
  unsigned alpha() const noexcept { return alpha_; }
  const TransformPlan& inner() const noexcept { return inner_; }

  /// Transforms y-shifted parts separately and accumulates all 4^alpha
  /// leaf products.
  Poly ptntt(const Poly& a, const Poly& b) const;
  /// Karatsuba over part pairs; wrapped sums are multiplied by NTT(y).
  Poly kntt(const Poly& a, const Poly& b) const;

 private:
  RingSpec parent_;
  unsigned alpha_;
  TransformPlan inner_;
  std::optional<NttDomainPoly> y_hat_;
};

Poly ptntt_multiply(const Poly& a, const Poly& b, unsigned alpha);
Poly kntt_multiply(const Poly& a, const Poly& b, unsigned alpha);
/// Karatsuba splitting with an incomplete inner transform and Karatsuba
/// leaves; (0, beta) is the incomplete pipeline, (alpha, 0) is kntt.
Poly hntt_multiply(const Poly& a, const Poly& b, unsigned alpha, unsigned beta);

}  // namespace nttkit
