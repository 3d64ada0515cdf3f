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

#include "nttkit/trinomial.hpp"

#include <numeric>
#include <string>

namespace nttkit {

TrinomialPlan::TrinomialPlan(const RingSpec& ring) : ring_(ring) {
  NTTKIT_REQUIRE(ring.form() == RingForm::kTrinomial, ErrorCode::kFormMismatch,
                 "ring " + ring.describe() + " is not x^n - x^(n/2) + 1");
  const std::size_t n = ring.n();
  const Modulus& m = ring.modulus();
  NTTKIT_REQUIRE(m.value() % n == 1, ErrorCode::kParameterCondition,
                 "q = " + std::to_string(m.value()) + " is not 1 mod n = " +
                     std::to_string(n));
  const unsigned e = log2_exact(n / 3);
  radix_levels_ = e - 1;
  detail::PauseCounting pause;
  psi_ = find_root(n, m, RootKind::kPrimitive);
  zeta1_ = m.pow(psi_, n / 6);
  zeta2_ = m.pow(zeta1_, 5);
  NTTKIT_REQUIRE(m.add(zeta1_, zeta2_) == m.reduce(1) &&
                     m.mul(zeta1_, zeta2_) == m.reduce(1),
                 ErrorCode::kParameterCondition,
                 "sixth roots do not satisfy z1 + z2 = 1, z1 z2 = 1");
  scale_ = m.inv(m.reduce(std::uint64_t{1} << radix_levels_));
  split_inv_ = m.mul(m.inv(m.sub(zeta1_, zeta2_)), scale_);

  std::vector<std::size_t> exps = {n / 6, 5 * n / 6};
  for (unsigned d = 0; d < radix_levels_; ++d) {
    std::vector<Residue> tw, itw;
    std::vector<std::size_t> next;
    for (std::size_t ex : exps) {
      NTTKIT_REQUIRE(ex % 2 == 0, ErrorCode::kParameterCondition,
                     "odd exponent before the leaves");
      const std::size_t half = ex / 2;
      const Residue w = m.pow(psi_, half);
      tw.push_back(w);
      itw.push_back(m.inv(w));
      next.push_back(half);
      next.push_back((half + n / 2) % n);
    }
    twiddles_.push_back(std::move(tw));
    inv_twiddles_.push_back(std::move(itw));
    exps = std::move(next);
  }
  for (std::size_t j : exps) {
    NTTKIT_REQUIRE(std::gcd(j, n) == 1, ErrorCode::kParameterCondition,
                   "leaf exponent is not a unit mod n");
    leaf_roots_.push_back(m.pow(psi_, j));
  }
  leaf_exponents_ = std::move(exps);
}

NttDomainPoly TrinomialPlan::forward(const Poly& a) const {
  NTTKIT_REQUIRE(a.ring == ring_, ErrorCode::kPlanMismatch,
                 "operand ring " + a.ring.describe() + " differs from the plan");
  if (detail::active_counter != nullptr) {
    ++detail::active_counter->forward_transforms;
  }
  const Modulus& m = ring_.modulus();
  const std::size_t n = ring_.n();
  std::vector<Residue> v = a.coeffs;
  const std::size_t h = n / 2;
  for (std::size_t i = 0; i < h; ++i) {
    const Residue t = m.mul(zeta1_, v[i + h]);
    const Residue lo = v[i];
    v[i + h] = m.sub(m.add(lo, v[i + h]), t);
    v[i] = m.add(lo, t);
  }
  for (unsigned d = 0; d < radix_levels_; ++d) {
    const std::size_t groups = std::size_t{2} << d;
    const std::size_t half = n / groups / 2;
    for (std::size_t g = 0; g < groups; ++g) {
      const Residue w = twiddles_[d][g];
      Residue* base = v.data() + g * 2 * half;
      for (std::size_t i = 0; i < half; ++i) {
        const Residue t = m.mul(w, base[i + half]);
        base[i + half] = m.sub(base[i], t);
        base[i] = m.add(base[i], t);
      }
    }
  }
  TransformSpec spec;
  return NttDomainPoly{std::move(v), spec, ring_, 3};
}

Poly TrinomialPlan::inverse(const NttDomainPoly& a_hat) const {
  NTTKIT_REQUIRE(a_hat.ring == ring_ && a_hat.leaf_degree == 3 &&
                     a_hat.values.size() == ring_.n(),
                 ErrorCode::kPlanMismatch,
                 "transform-domain value was not produced by this plan");
  if (detail::active_counter != nullptr) {
    ++detail::active_counter->inverse_transforms;
  }
  const Modulus& m = ring_.modulus();
  const std::size_t n = ring_.n();
  std::vector<Residue> v = a_hat.values;
  for (unsigned r = 0; r < radix_levels_; ++r) {
    const unsigned d = radix_levels_ - 1 - r;
    const std::size_t groups = std::size_t{2} << d;
    const std::size_t half = n / groups / 2;
    for (std::size_t g = 0; g < groups; ++g) {
      const Residue w_inv = inv_twiddles_[d][g];
      Residue* base = v.data() + g * 2 * half;
      for (std::size_t i = 0; i < half; ++i) {
        const Residue u = base[i];
        base[i] = m.add(u, base[i + half]);
        base[i + half] = m.mul(m.sub(u, base[i + half]), w_inv);
      }
    }
  }
  const std::size_t h = n / 2;
  for (std::size_t i = 0; i < h; ++i) {
    const Residue hi = m.mul(m.sub(v[i], v[i + h]), split_inv_);
    v[i] = m.sub(m.mul(v[i], scale_), m.mul(zeta1_, hi));
    v[i + h] = hi;
  }
  return Poly(ring_, std::move(v));
}

NttDomainPoly TrinomialPlan::pointwise(const NttDomainPoly& u,
                                       const NttDomainPoly& v) const {
  NTTKIT_REQUIRE(u.ring == ring_ && v.ring == ring_ && u.leaf_degree == 3 &&
                     v.leaf_degree == 3,
                 ErrorCode::kPlanMismatch,
                 "transform-domain values were not produced by this plan");
  const Modulus& m = ring_.modulus();
  NttDomainPoly out = u;
  for (std::size_t l = 0; l < leaf_roots_.size(); ++l) {
    const std::size_t o = 3 * l;
    const auto c = trinomial_pointwise({u.values[o], u.values[o + 1], u.values[o + 2]},
                                       {v.values[o], v.values[o + 1], v.values[o + 2]},
                                       leaf_roots_[l], m);
    for (std::size_t i = 0; i < 3; ++i) out.values[o + i] = c[i];
  }
  return out;
}

std::array<Residue, 3> trinomial_pointwise(const std::array<Residue, 3>& u,
                                           const std::array<Residue, 3>& v,
                                           Residue root, const Modulus& m) {
  const Residue c0 =
      m.add(m.mul(u[0], v[0]),
            m.mul(root, m.add(m.mul(u[1], v[2]), m.mul(u[2], v[1]))));
  const Residue c1 =
      m.add(m.add(m.mul(u[0], v[1]), m.mul(u[1], v[0])),
            m.mul(root, m.mul(u[2], v[2])));
  const Residue c2 = m.add(m.add(m.mul(u[0], v[2]), m.mul(u[1], v[1])),
                           m.mul(u[2], v[0]));
  return {c0, c1, c2};
}

NttDomainPoly trinomial_forward(const Poly& a, const TrinomialPlan& plan) {
  return plan.forward(a);
}

Poly trinomial_inverse(const NttDomainPoly& a_hat, const TrinomialPlan& plan) {
  return plan.inverse(a_hat);
}

Poly trinomial_multiply(const Poly& a, const Poly& b, const TrinomialPlan& plan) {
  return plan.inverse(plan.pointwise(plan.forward(a), plan.forward(b)));
}

}  // namespace nttkit
