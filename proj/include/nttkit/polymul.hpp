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

#include <cstddef>
#include <span>
#include <vector>

#include "nttkit/modarith.hpp"
#include "nttkit/ring.hpp"
#include "nttkit/transforms.hpp"

namespace nttkit {

// Schoolbook oracles. These accumulate exact 128-bit sums and reduce once
// per coefficient; they share no arithmetic with the transform code.

/// Linear product, length 2n - 1. Operands may live in different ring
/// shapes but must share the coefficient modulus.
std::vector<Residue> schoolbook_linear(const Poly& a, const Poly& b);
Poly schoolbook_cyclic(const Poly& a, const Poly& b);
Poly schoolbook_nwc(const Poly& a, const Poly& b);
/// Product in a.ring for any modulus polynomial.
Poly schoolbook_multiply(const Poly& a, const Poly& b);

/// Remainder of c by the ring's (monic) modulus polynomial.
Poly reduce_mod_phi(std::span<const Residue> c, const RingSpec& ring);

/// (u * v) mod (x^w - gamma) for w = u.size(). With `karatsuba`, every
/// cross pair u_i v_j + u_j v_i is formed as
/// (u_i + u_j)(v_i + v_j) - u_i v_i - u_j v_j.
std::vector<Residue> basecase_mul(std::span<const Residue> u,
                                  std::span<const Residue> v, Residue gamma,
                                  const Modulus& m, bool karatsuba);

/// Same as basecase_mul, writing into out (size w) and accumulating when
/// `accumulate` is set. `scratch` must hold 3w entries.
void basecase_mul_into(std::span<const Residue> u, std::span<const Residue> v,
                       Residue gamma, const Modulus& m, bool karatsuba,
                       std::span<Residue> out, std::span<Residue> scratch,
                       bool accumulate = false);

struct TransformOptions {
  Butterfly forward_butterfly = Butterfly::kCooleyTukey;
  IndexOrder forward_in = IndexOrder::kNatural;
  Butterfly inverse_butterfly = Butterfly::kGentlemanSande;
  IndexOrder inverse_in = IndexOrder::kBitReversed;
  PsiMode psi = PsiMode::kMerged;
  Scaling scaling = Scaling::kFinal;
  bool karatsuba_leaves = false;
};

/// Forward/inverse transform pair with tables for x^n +- 1 over the ring's
/// own modulus, cropped by beta levels.
class TransformPlan {
 public:
  TransformPlan(const RingSpec& ring, unsigned beta,
                const TransformOptions& options = {});

  const RingSpec& ring() const noexcept { return ring_; }
  unsigned beta() const noexcept { return forward_spec_.beta; }
  const TransformSpec& forward_spec() const noexcept { return forward_spec_; }
  const TransformSpec& inverse_spec() const noexcept { return inverse_spec_; }
  const TwiddleTable& forward_table() const noexcept { return forward_table_; }
  const TwiddleTable& inverse_table() const noexcept { return inverse_table_; }
  bool karatsuba_leaves() const noexcept { return karatsuba_; }

  NttDomainPoly forward(const Poly& a) const;
  /// Reorders first when the forward output order differs from the inverse
  /// input order.
  Poly inverse(const NttDomainPoly& a_hat) const;
  NttDomainPoly pointwise(const NttDomainPoly& a, const NttDomainPoly& b) const;

 private:
  RingSpec ring_;
  TransformSpec forward_spec_;
  TransformSpec inverse_spec_;
  TwiddleTable forward_table_;
  TwiddleTable inverse_table_;
  bool karatsuba_;
};

/// Leafwise product of two forward outputs; gamma per block is read from
/// forward_table.
NttDomainPoly pointwise_mul(const NttDomainPoly& a, const NttDomainPoly& b,
                            const TwiddleTable& forward_table,
                            bool karatsuba = false);
NttDomainPoly domain_add(const NttDomainPoly& a, const NttDomainPoly& b);
NttDomainPoly domain_sub(const NttDomainPoly& a, const NttDomainPoly& b);

Poly ntt_multiply(const Poly& a, const Poly& b, const TransformPlan& plan);

}  // namespace nttkit
