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

// Transform over x^n - x^(n/2) + 1 with n = 3 * 2^e: one sixth-root split,
// radix-2 levels, and products of degree-2 leaves modulo x^3 - psi^j.

#include <array>
#include <cstddef>
#include <vector>

#include "nttkit/ring.hpp"
#include "nttkit/transforms.hpp"

namespace nttkit {

class TrinomialPlan {
 public:
  /// ring must have the trinomial form; its modulus must be 1 mod n.
  explicit TrinomialPlan(const RingSpec& ring);

  const RingSpec& ring() const noexcept { return ring_; }
  Residue psi() const noexcept { return psi_; }
  Residue zeta1() const noexcept { return zeta1_; }
  Residue zeta2() const noexcept { return zeta2_; }
  /// Exponent j of each leaf x^3 - psi^j, in the order leaves are stored.
  const std::vector<std::size_t>& leaf_exponents() const noexcept {
    return leaf_exponents_;
  }
  const std::vector<Residue>& leaf_roots() const noexcept { return leaf_roots_; }

  NttDomainPoly forward(const Poly& a) const;
  Poly inverse(const NttDomainPoly& a_hat) const;
  NttDomainPoly pointwise(const NttDomainPoly& u, const NttDomainPoly& v) const;

 private:
  RingSpec ring_;
  unsigned radix_levels_;
  Residue psi_;
  Residue zeta1_;
  Residue zeta2_;
  Residue split_inv_;  // (zeta1 - zeta2)^-1 * 2^-(radix levels)
  Residue scale_;      // 2^-(radix levels)
  // twiddles_[d][g]: root of group g at radix level d; inv_twiddles_ holds
  // the inverses.
  std::vector<std::vector<Residue>> twiddles_;
  std::vector<std::vector<Residue>> inv_twiddles_;
  std::vector<std::size_t> leaf_exponents_;
  std::vector<Residue> leaf_roots_;
};

/// (u * v) mod (x^3 - root).
std::array<Residue, 3> trinomial_pointwise(const std::array<Residue, 3>& u,
                                           const std::array<Residue, 3>& v,
                                           Residue root, const Modulus& m);

NttDomainPoly trinomial_forward(const Poly& a, const TrinomialPlan& plan);
Poly trinomial_inverse(const NttDomainPoly& a_hat, const TrinomialPlan& plan);
Poly trinomial_multiply(const Poly& a, const Poly& b, const TrinomialPlan& plan);

}  // namespace nttkit
