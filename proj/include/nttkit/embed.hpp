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

// Ring embeddings: zero padding into a bigger x^n' +- 1, lifting to a larger
// modulus, Good's index mapping for h * 2^k lengths, and the Schonhage and
// Nussbaumer constructions that use the indeterminate as the root of unity.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nttkit/bigmod.hpp"
#include "nttkit/polymul.hpp"
#include "nttkit/ring.hpp"

namespace nttkit {

struct GoodLayout {
  unsigned h;  // odd
  unsigned k;
  /// matrix[i][j] holds a_l with i = l mod h, j = l mod 2^k.
  std::vector<std::vector<Residue>> matrix;
};

GoodLayout good_map(const Poly& a, unsigned h, unsigned k);
/// Inverse of good_map into `ring` (x^(h 2^k) - 1).
Poly good_unmap(const GoodLayout& layout, const RingSpec& ring);
/// Position of (i, j) in the flat coefficient vector.
std::size_t good_index(unsigned h, unsigned k, std::size_t i, std::size_t j);

/// Product in x^(h 2^k) - 1 over the operands' modulus: row transforms,
/// cyclic column products mod y^h - 1, inverse row transforms.
Poly good_multiply(const Poly& a, const Poly& b, unsigned h, unsigned k);
/// Same, computed over inner_modulus after a centered lift.
Poly good_multiply(const Poly& a, const Poly& b, unsigned h, unsigned k,
                   std::uint64_t inner_modulus, const LiftOptions& lift = {});

/// Product in x^(2mn) - 1 for odd q; needs n <= 2m.
Poly schonhage_multiply(const Poly& a, const Poly& b, std::size_t m,
                        std::size_t n);
/// Product in x^(2mn) + 1 for odd q; needs n >= m.
Poly nussbaumer_multiply(const Poly& a, const Poly& b, std::size_t m,
                         std::size_t n);

/// Product in t^len + 1 on raw coefficient vectors; schoolbook at len <= 8,
/// otherwise Nussbaumer with a balanced shape.
std::vector<Residue> negacyclic_product(std::span<const Residue> u,
                                        std::span<const Residue> v,
                                        const Modulus& m);
/// Balanced (m, n) with 2mn = len and n >= m.
std::pair<std::size_t, std::size_t> nussbaumer_shape(std::size_t len);

namespace detail {
/// Length-`count` cyclic transform over elements of t^len + 1 stored
/// back to back, with root t^root_exp. Forward maps natural to bit-reversed
/// order; inverse undoes it including the 1/count scaling.
void ring_transform(std::span<Residue> data, std::size_t count,
                    std::size_t len, std::size_t root_exp, bool inverse,
                    const Modulus& m);
}  // namespace detail

namespace step {
struct ZeroPad {
  std::size_t n;
  RingForm form = RingForm::kXnMinus1;
};
struct LiftModulus {
  std::uint64_t big_n;
  OperandProfile profile = OperandProfile::full_full();
};
struct Good {
  unsigned h;
  unsigned k;
};
struct Schonhage {
  std::size_t m;
  std::size_t n;
};
struct Nussbaumer {
  std::size_t m;
  std::size_t n;
};
}  // namespace step

using EmbedStep = std::variant<step::ZeroPad, step::LiftModulus, step::Good,
                               step::Schonhage, step::Nussbaumer>;

struct EmbedChain {
  std::vector<EmbedStep> steps;
  std::string describe() const;
};

/// Validated chain for one source ring, with prebuilt transform tables.
class EmbedPlan {
 public:
  EmbedPlan(const RingSpec& source, EmbedChain chain);

  const RingSpec& source() const noexcept { return source_; }
  const EmbedChain& chain() const noexcept { return chain_; }
  /// Ring the multiplier works in (after padding and lifting).
  const RingSpec& working_ring() const noexcept { return working_; }

  Poly multiply(const Poly& a, const Poly& b) const;
  /// Maps operands into the working ring (pad, centered lift).
  Poly embed(const Poly& a) const;
  /// Product inside the working ring.
  Poly multiply_working(const Poly& a, const Poly& b) const;
  /// Maps a working-ring product back to the source ring.
  Poly recover(const Poly& c) const;

 private:
  RingSpec source_;
  EmbedChain chain_;
  std::optional<step::ZeroPad> pad_;
  std::optional<step::LiftModulus> lift_;
  std::optional<EmbedStep> multiplier_;
  std::optional<step::Nussbaumer> inner_;
  RingSpec working_;
  std::optional<TransformPlan> transform_;
};

Poly zero_pad_multiply(const Poly& a, const Poly& b, std::size_t padded_n,
                       const EmbedChain& tail = {});
Poly general_phi_multiply(const Poly& a, const Poly& b,
                          const EmbedChain& chain);

}  // namespace nttkit
