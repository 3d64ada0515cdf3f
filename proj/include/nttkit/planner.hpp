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

// Ring classification, strategy selection and scheme presets.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nttkit/bigmod.hpp"
#include "nttkit/embed.hpp"
#include "nttkit/polymul.hpp"
#include "nttkit/ring.hpp"
#include "nttkit/transforms.hpp"

namespace nttkit {

struct RingClass {
  enum class Kind {
    kPow2FullFriendly,
    kPow2PartialFriendly,
    kPow2Unfriendly,
    kNonPow2,
    kGeneralPhi,
  };
  Kind kind;
  unsigned deficit = 0;  // partial: levels the modulus falls short by
  unsigned h = 1;        // non-power-of-two: working length h * 2^k
  unsigned k = 0;
  std::size_t pad = 0;   // working length; equals n when no padding is needed

  std::string describe() const;
  friend bool operator==(const RingClass&, const RingClass&) = default;
};

/// Deficits above half the levels leave leaves too large to be useful and
/// count as unfriendly.
RingClass classify(const RingSpec& ring);

namespace strategy {
struct Full {};
struct Incomplete {
  unsigned beta;
};
enum class SplitKind { kPt, kK };
struct Split {
  unsigned alpha;
  SplitKind kind = SplitKind::kK;
};
struct HNtt {
  unsigned alpha;
  unsigned beta;
};
struct BigPrime {
  std::uint64_t big_n;
  unsigned beta;
};
struct Rns {
  std::vector<std::uint64_t> primes;
  unsigned beta;
};
struct Composite {
  std::vector<std::uint64_t> primes;
  unsigned beta;
};
struct Embed {
  EmbedChain chain;
};
struct Trinomial {};
}  // namespace strategy

using Strategy =
    std::variant<strategy::Full, strategy::Incomplete, strategy::Split,
                 strategy::HNtt, strategy::BigPrime, strategy::Rns,
                 strategy::Composite, strategy::Embed, strategy::Trinomial>;

std::string describe(const Strategy& s);

/// A verified, immutable multiplication plan. Copies share state.
class NttPlan {
 public:
  /// Builds every table the strategy needs; congruence and bound failures
  /// surface here.
  NttPlan(const RingSpec& ring, Strategy strategy,
          const OperandProfile& profile = OperandProfile::full_full());

  const RingSpec& ring() const noexcept { return ring_; }
  const Strategy& strategy() const noexcept { return strategy_; }
  const OperandProfile& profile() const noexcept { return profile_; }
  /// Human-readable congruences and bounds checked at construction.
  const std::vector<std::string>& checks() const noexcept { return checks_; }
  std::string describe() const;

  /// Forward/inverse specs of the underlying transform, when there is one.
  std::optional<std::pair<TransformSpec, TransformSpec>> transform_specs() const;

  Poly multiply(const Poly& a, const Poly& b) const;

  /// Strategies with a single transform domain (full, incomplete, big prime,
  /// composite, trinomial) expose it for reuse across products.
  bool has_domain() const noexcept;
  /// Modulus of transform-domain values.
  std::uint64_t domain_modulus() const;
  NttDomainPoly forward(const Poly& a) const;
  Poly inverse(const NttDomainPoly& a_hat) const;
  NttDomainPoly pointwise(const NttDomainPoly& u, const NttDomainPoly& v) const;

 private:
  struct State;
  RingSpec ring_;
  Strategy strategy_;
  OperandProfile profile_;
  std::vector<std::string> checks_;
  std::shared_ptr<const State> state_;
};

struct PlanPreferences {
  enum class Partial { kIncomplete, kSplit, kHNtt };
  enum class Unfriendly { kBigPrime, kRns, kComposite };
  enum class Embedding { kPad, kGood, kSchonhage };
  Partial partial = Partial::kIncomplete;
  Unfriendly unfriendly = Unfriendly::kBigPrime;
  Embedding embedding = Embedding::kGood;
  strategy::SplitKind split_kind = strategy::SplitKind::kK;
  /// Lifting to a larger modulus must be allowed explicitly.
  bool allow_bigmod = false;
  OperandProfile profile = OperandProfile::full_full();
  std::optional<unsigned> beta;
  std::optional<unsigned> alpha;
};

/// Throws NoStrategy when no implemented route fits the ring and
/// preferences.
NttPlan make_plan(const RingSpec& ring, const PlanPreferences& prefs = {});

/// Smallest prime N = 1 mod step with N > bound.
std::uint64_t search_prime(std::uint64_t step, std::uint64_t bound);
/// Smallest primes = 1 mod step, ascending, whose product exceeds bound.
std::vector<std::uint64_t> search_basis(std::uint64_t step, std::uint64_t bound);

Poly ntt_multiply(const Poly& a, const Poly& b, const NttPlan& plan);

/// Row i of the result is inverse(sum_j a_hat[i][j] * forward(s[j])): one
/// forward transform per column and one inverse per row.
std::vector<Poly> matvec_multiply(
    const std::vector<std::vector<NttDomainPoly>>& a_hat,
    const std::vector<Poly>& s, const NttPlan& plan);

/// Uniform transform-domain values from a seeded mt19937_64.
NttDomainPoly sample_ntt_domain_uniform(const NttPlan& plan, std::uint64_t seed);

struct Preset {
  std::string name;
  std::string scheme;
  RingSpec ring;
  NttPlan plan;
};

/// Registry built into the library; NTTKIT_PRESETS names a replacement file.
const std::vector<Preset>& presets();
/// Throws UnknownPreset.
const Preset& preset(const std::string& name);
/// Parses a registry in the documented JSON schema.
std::vector<Preset> load_presets(const std::string& json_text);

}  // namespace nttkit
