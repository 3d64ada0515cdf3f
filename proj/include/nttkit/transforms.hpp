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

// Radix-2 forward and inverse transforms over x^n - 1 and x^n + 1, in both
// index orderings, with optional early stop (beta) leaving degree-2^beta
// leaves. All variants share one kernel; a TransformSpec selects the variant.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nttkit/modarith.hpp"
#include "nttkit/ring.hpp"

namespace nttkit {

enum class ConvKind { kCyclic, kNegacyclic };
enum class Butterfly { kCooleyTukey, kGentlemanSande };
enum class Direction { kForward, kInverse };
enum class IndexOrder { kNatural, kBitReversed };

/// kMerged folds the psi powers into the butterflies (negacyclic only);
/// kSeparate pre/post-multiplies by psi powers around a cyclic transform.
enum class PsiMode { kMerged, kSeparate };

/// kFinal scales by (n/2^beta)^-1 once at the end of an inverse;
/// kPerLevelHalving halves both butterfly outputs at every level instead.
enum class Scaling { kFinal, kPerLevelHalving };

struct TransformSpec {
  ConvKind conv = ConvKind::kNegacyclic;
  Butterfly butterfly = Butterfly::kCooleyTukey;
  Direction direction = Direction::kForward;
  IndexOrder in_order = IndexOrder::kNatural;
  IndexOrder out_order = IndexOrder::kBitReversed;
  unsigned beta = 0;
  PsiMode psi = PsiMode::kMerged;
  Scaling scaling = Scaling::kFinal;

  /// Throws SpecViolation for combinations without a fast algorithm.
  void validate() const;
  std::string name() const;

  friend bool operator==(const TransformSpec&, const TransformSpec&) = default;
};

/// The twelve merged-mode variants: eight cyclic, four negacyclic.
std::vector<TransformSpec> standard_variants(unsigned beta = 0);

/// Forward variants followed by inverse variants that accept their output
/// (directly or after a reorder) in the same convolution kind.
std::vector<std::pair<TransformSpec, TransformSpec>> standard_pairings(
    unsigned beta = 0);

/// Root order the twiddle table must have for a length-n input.
std::uint64_t table_order(const TransformSpec& spec, std::size_t n);

/// Storage order used by the kernels' natural access pattern.
StorageOrder preferred_storage(const TransformSpec& spec);

/// Builds the table for spec over m using the smallest primitive root of the
/// required order; `inverse` selects powers of the root's inverse.
TwiddleTable make_transform_table(const TransformSpec& spec, std::size_t n,
                                  const Modulus& m, bool inverse);

/// Leaf modulus constant gamma for block i of a forward output:
/// the block lives in Z_m[x]/(x^(2^beta) - gamma).
Residue leaf_gamma(const TwiddleTable& forward_table,
                   const TransformSpec& forward_spec, std::size_t n,
                   std::size_t block);

std::pair<Residue, Residue> butterfly_ct(Residue u, Residue v, Residue w,
                                         const Modulus& m);
std::pair<Residue, Residue> butterfly_gs(Residue u, Residue v, Residue w,
                                         const Modulus& m);
/// ((u + v) / 2, (u - v) * w / 2) for odd m.
std::pair<Residue, Residue> butterfly_gs_half(Residue u, Residue v, Residue w,
                                              const Modulus& m);

struct ButterflyEvent {
  unsigned stage;          // execution order, 0-based
  unsigned level;          // tree level of the split being processed
  std::size_t first;       // block indices (physical)
  std::size_t second;
  std::uint64_t exponent;  // twiddle = root^(+-exponent) of the table
  Residue twiddle;
};

class TransformObserver {
 public:
  virtual ~TransformObserver() = default;
  virtual void on_butterfly(const ButterflyEvent& /*event*/) {}
  /// Called after every stage with the whole working array.
  virtual void on_stage(unsigned /*stage*/, unsigned /*level*/,
                        std::span<const Residue> /*values*/) {}
};

/// Runs the transform in place. Length must be a power of two.
void transform_in_place(std::span<Residue> values, const TwiddleTable& table,
                        const TransformSpec& spec,
                        TransformObserver* observer = nullptr);

enum class ReorderDirection { kToNatural, kToBitReversed };

/// Bit-reversal permutation of consecutive blocks of `block` entries.
void reorder_in_place(std::span<Residue> values, std::size_t block = 1);
std::vector<Residue> reorder(std::span<const Residue> values,
                             ReorderDirection direction,
                             std::size_t block = 1);

/// Transform-domain values; carries the spec and ring that produced them.
struct NttDomainPoly {
  std::vector<Residue> values;
  TransformSpec spec;
  RingSpec ring;
  std::size_t leaf_degree;
};

NttDomainPoly ntt_forward(const Poly& a, const TwiddleTable& table,
                          const TransformSpec& spec);
Poly ntt_inverse(const NttDomainPoly& a_hat, const TwiddleTable& inverse_table,
                 const TransformSpec& spec);

}  // namespace nttkit
