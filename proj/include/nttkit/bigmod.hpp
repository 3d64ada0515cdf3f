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

// Multiplication for moduli without the needed roots of unity: lift to a big
// NTT-friendly prime, to a residue number system, or to a composite modulus
// with a principal root. Lifting is centered; results map back mod q.

#include <cstdint>
#include <span>
#include <vector>

#include "nttkit/modarith.hpp"
#include "nttkit/polymul.hpp"
#include "nttkit/ring.hpp"

namespace nttkit {

/// Shape of the operands, which fixes how large the working modulus must be.
struct OperandProfile {
  enum class Kind { kFullFull, kFullSmall, kMatvec };
  Kind kind = Kind::kFullFull;
  std::uint64_t mu = 0;  // small operand coefficients lie in [-mu/2, mu/2]
  unsigned k = 1;        // matrix dimension

  static OperandProfile full_full() { return {}; }
  static OperandProfile full_small(std::uint64_t mu) {
    return {Kind::kFullSmall, mu, 1};
  }
  static OperandProfile matvec(unsigned k, std::uint64_t mu) {
    return {Kind::kMatvec, mu, k};
  }
};

/// n*q^2 for full operands, n*q*mu/2 with one small operand, k*n*q*mu/2 for
/// a k-term inner product. Saturates at 2^64 - 1.
std::uint64_t required_bound(std::uint64_t n, std::uint64_t q,
                             const OperandProfile& profile);

/// x in [0, q) to its representative in [-q/2, q/2), reduced mod N.
Residue centered_lift(Residue x, std::uint64_t q, std::uint64_t big_n);
/// c in [0, N) read as a signed value in (-N/2, N/2], reduced mod q.
Residue centered_drop(Residue c, std::uint64_t big_n, std::uint64_t q);

class RnsBasis {
 public:
  /// Throws NotCoprime for repeated or non-coprime entries.
  explicit RnsBasis(std::vector<std::uint64_t> primes);

  const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }
  std::uint64_t product() const noexcept { return product_; }

 private:
  std::vector<std::uint64_t> primes_;
  std::uint64_t product_;
};

std::vector<Residue> crt_residues(Residue x, const RnsBasis& basis);
/// The unique x in [0, N) with x = residues[i] mod primes[i].
Residue crt_recombine(std::span<const Residue> residues, const RnsBasis& basis);

/// CRT combination of the smallest primitive k-th roots modulo each prime.
Residue find_principal_root_composite(std::uint64_t k, const RnsBasis& basis);
/// Factors m (which must be squarefree) and defers to the basis overload.
Residue find_principal_root_composite(std::uint64_t k, const Modulus& m);

struct LiftOptions {
  OperandProfile profile = OperandProfile::full_full();
  /// Recompute the exact integer product and check it fits (-N/2, N/2].
  bool verify_exact = false;
};

/// Exact product over Z with centered operands, for bound checks.
std::vector<__int128> exact_centered_product(const Poly& a, const Poly& b);

/// Lift to Z_N, multiply with `plan` (whose ring is a.ring over N), drop
/// back to Z_q.
Poly lifted_multiply(const Poly& a, const Poly& b, const TransformPlan& plan,
                     const LiftOptions& options = {});

Poly bigprime_multiply(const Poly& a, const Poly& b, std::uint64_t big_n,
                       unsigned beta, const LiftOptions& options = {});
Poly rns_multiply(const Poly& a, const Poly& b, const RnsBasis& basis,
                  unsigned beta, const LiftOptions& options = {});
Poly composite_multiply(const Poly& a, const Poly& b, const RnsBasis& basis,
                        unsigned beta, const LiftOptions& options = {});

/// RNS product with prebuilt per-prime plans (plans[i] over primes[i]).
Poly rns_multiply(const Poly& a, const Poly& b,
                  std::span<const TransformPlan> plans, const RnsBasis& basis,
                  const LiftOptions& options = {});

/// Throws BoundTooSmall unless big_n > required_bound(n, q, profile).
/// Multiples of q need no bound: the result is exact mod q regardless.
void check_bound(std::uint64_t big_n, std::uint64_t n, std::uint64_t q,
                 const OperandProfile& profile);

}  // namespace nttkit
