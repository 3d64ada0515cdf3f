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

#include "nttkit/planner.hpp"

#include <bit>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "nttkit/splitting.hpp"
#include "nttkit/trinomial.hpp"

namespace nttkit {

namespace detail {
// Generated from data/presets.json at configure time.
extern const char* const kBuiltinPresets;
}  // namespace detail

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_pow2_form(const RingSpec& ring) {
  return (ring.form() == RingForm::kXnMinus1 ||
          ring.form() == RingForm::kXnPlus1) &&
         is_power_of_two(ring.n());
}

// Order of the roots a full transform needs: 2n for x^n + 1, n for x^n - 1.
std::uint64_t full_order(const RingSpec& ring) {
  return ring.form() == RingForm::kXnPlus1 ? 2 * ring.n() : ring.n();
}

std::string congruence(std::uint64_t q, std::uint64_t k) {
  return std::to_string(q) + " = 1 mod " + std::to_string(k);
}

// Smallest h * 2^k >= target with h in {1, 3, 5, 7}.
void pad_target(std::size_t target, RingClass& out) {
  std::size_t best = 0;
  for (unsigned h : {1u, 3u, 5u, 7u}) {
    unsigned k = 0;
    while ((std::size_t{h} << k) < target) ++k;
    const std::size_t len = std::size_t{h} << k;
    if (best == 0 || len < best) {
      best = len;
      out.h = h;
      out.k = k;
    }
  }
  out.pad = best;
}

std::size_t next_pow2(std::size_t x) { return std::bit_ceil(x); }

}  // namespace

std::string RingClass::describe() const {
  switch (kind) {
    case Kind::kPow2FullFriendly: return "Pow2FullFriendly";
    case Kind::kPow2PartialFriendly:
      return "PartialFriendly(" + std::to_string(deficit) + ")";
    case Kind::kPow2Unfriendly: return "Pow2Unfriendly";
    case Kind::kNonPow2:
      return "NonPow2(h=" + std::to_string(h) + ", k=" + std::to_string(k) +
             ", pad=" + std::to_string(pad) + ")";
    case Kind::kGeneralPhi: return "GeneralPhi";
  }
  return "?";
}

RingClass classify(const RingSpec& ring) {
  const std::uint64_t q = ring.q();
  if (is_pow2_form(ring)) {
    if (!is_prime(q)) return {RingClass::Kind::kPow2Unfriendly};
    const std::uint64_t order = full_order(ring);
    if (q % order == 1) return {RingClass::Kind::kPow2FullFriendly};
    const unsigned max_deficit = log2_exact(ring.n()) / 2;
    for (unsigned t = 1; t <= max_deficit && (order >> t) >= 2; ++t) {
      if (q % (order >> t) == 1) {
        return {RingClass::Kind::kPow2PartialFriendly, t};
      }
    }
    return {RingClass::Kind::kPow2Unfriendly};
  }
  const bool binomial =
      ring.form() == RingForm::kXnMinus1 || ring.form() == RingForm::kXnPlus1;
  RingClass out{binomial ? RingClass::Kind::kNonPow2
                         : RingClass::Kind::kGeneralPhi};
  const std::size_t n = ring.n();
  const unsigned tz = static_cast<unsigned>(std::countr_zero(n));
  if (ring.form() == RingForm::kXnMinus1 && tz >= 1 && (n >> tz) <= 7) {
    out.h = static_cast<unsigned>(n >> tz);
    out.k = tz;
    out.pad = n;
  } else {
    pad_target(2 * n - 1, out);
  }
  return out;
}

std::string describe(const Strategy& s) {
  return std::visit(
      Overloaded{
          [](const strategy::Full&) { return std::string("Full"); },
          [](const strategy::Incomplete& x) {
            return "Incomplete(β=" + std::to_string(x.beta) + ")";
          },
          [](const strategy::Split& x) {
            return std::string(x.kind == strategy::SplitKind::kPt ? "Split-Pt"
                                                                   : "Split-K") +
                   "(α=" + std::to_string(x.alpha) + ")";
          },
          [](const strategy::HNtt& x) {
            return "HNtt(α=" + std::to_string(x.alpha) +
                   ", β=" + std::to_string(x.beta) + ")";
          },
          [](const strategy::BigPrime& x) {
            return "BigPrime(N=" + std::to_string(x.big_n) +
                   ", β=" + std::to_string(x.beta) + ")";
          },
          [](const strategy::Rns& x) {
            std::string p;
            for (auto v : x.primes) p += (p.empty() ? "" : "*") + std::to_string(v);
            return "Rns(" + p + ", β=" + std::to_string(x.beta) + ")";
          },
          [](const strategy::Composite& x) {
            std::string p;
            for (auto v : x.primes) p += (p.empty() ? "" : "*") + std::to_string(v);
            return "Composite(" + p + ", β=" + std::to_string(x.beta) + ")";
          },
          [](const strategy::Embed& x) { return "Embed[" + x.chain.describe() + "]"; },
          [](const strategy::Trinomial&) { return std::string("Trinomial"); },
      },
      s);
}

struct NttPlan::State {
  std::optional<TransformPlan> transform;
  std::uint64_t lift_modulus = 0;  // nonzero when operands are lifted
  std::optional<SplitPlan> split;
  std::optional<RnsBasis> basis;
  std::vector<TransformPlan> rns_plans;
  std::optional<EmbedPlan> embed;
  std::optional<TrinomialPlan> trinomial;
};

namespace {

TransformPlan checked_transform(const RingSpec& ring, unsigned beta,
                                std::vector<std::string>& checks) {
  NTTKIT_REQUIRE(is_pow2_form(ring), ErrorCode::kFormMismatch,
                 "transform strategies need x^n +- 1 with n a power of two");
  NTTKIT_REQUIRE(beta < log2_exact(ring.n()), ErrorCode::kParameterCondition,
                 "beta must be below log2(n)");
  const std::uint64_t order = full_order(ring) >> beta;
  try {
    TransformPlan plan(ring, beta);
    checks.push_back(is_prime(ring.q())
                         ? congruence(ring.q(), order)
                         : "principal root of order " + std::to_string(order) +
                               " mod " + std::to_string(ring.q()));
    return plan;
  } catch (const NttError& e) {
    if (e.code() != ErrorCode::kNoSuchRoot) throw;
    fail(ErrorCode::kParameterCondition,
         "needs " + congruence(ring.q(), order) + " for n=" +
             std::to_string(ring.n()) + ", beta=" + std::to_string(beta));
  }
}

void checked_bound(std::uint64_t big_n, const RingSpec& ring,
                   const OperandProfile& profile,
                   std::vector<std::string>& checks) {
  check_bound(big_n, ring.n(), ring.q(), profile);
  checks.push_back(std::to_string(big_n) + " > " +
                   std::to_string(required_bound(ring.n(), ring.q(), profile)));
}

Poly lift_to(const Poly& a, std::uint64_t big_n) {
  Poly out(a.ring.with_modulus(big_n));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    out.coeffs[i] = centered_lift(a.coeffs[i], a.ring.q(), big_n);
  }
  return out;
}

}  // namespace

NttPlan::NttPlan(const RingSpec& ring, Strategy strategy,
                 const OperandProfile& profile)
    : ring_(ring), strategy_(std::move(strategy)), profile_(profile) {
  auto state = std::make_shared<State>();
  std::visit(
      Overloaded{
          [&](const strategy::Full&) {
            state->transform.emplace(checked_transform(ring_, 0, checks_));
          },
          [&](const strategy::Incomplete& x) {
            state->transform.emplace(checked_transform(ring_, x.beta, checks_));
          },
          [&](const strategy::Split& x) {
            checks_.push_back(congruence(ring_.q(), full_order(ring_) >> x.alpha));
            try {
              state->split.emplace(ring_, x.alpha, 0, false);
            } catch (const NttError& e) {
              if (e.code() != ErrorCode::kNoSuchRoot) throw;
              fail(ErrorCode::kParameterCondition, "needs " + checks_.back());
            }
          },
          [&](const strategy::HNtt& x) {
            checks_.push_back(
                congruence(ring_.q(), full_order(ring_) >> (x.alpha + x.beta)));
            try {
              state->split.emplace(ring_, x.alpha, x.beta, true);
            } catch (const NttError& e) {
              if (e.code() != ErrorCode::kNoSuchRoot) throw;
              fail(ErrorCode::kParameterCondition, "needs " + checks_.back());
            }
          },
          [&](const strategy::BigPrime& x) {
            NTTKIT_REQUIRE(is_prime(x.big_n), ErrorCode::kParameterCondition,
                           std::to_string(x.big_n) + " is not prime");
            checked_bound(x.big_n, ring_, profile_, checks_);
            state->transform.emplace(
                checked_transform(ring_.with_modulus(x.big_n), x.beta, checks_));
            state->lift_modulus = x.big_n;
          },
          [&](const strategy::Rns& x) {
            state->basis.emplace(x.primes);
            checked_bound(state->basis->product(), ring_, profile_, checks_);
            for (std::uint64_t p : x.primes) {
              NTTKIT_REQUIRE(is_prime(p), ErrorCode::kParameterCondition,
                             std::to_string(p) + " is not prime");
              state->rns_plans.push_back(
                  checked_transform(ring_.with_modulus(p), x.beta, checks_));
            }
          },
          [&](const strategy::Composite& x) {
            for (std::uint64_t p : x.primes) {
              NTTKIT_REQUIRE(is_prime(p), ErrorCode::kParameterCondition,
                             std::to_string(p) + " is not prime");
            }
            state->basis.emplace(x.primes);
            const std::uint64_t big_n = state->basis->product();
            checked_bound(big_n, ring_, profile_, checks_);
            state->transform.emplace(
                checked_transform(ring_.with_modulus(big_n), x.beta, checks_));
            state->lift_modulus = big_n;
          },
          [&](const strategy::Embed& x) {
            state->embed.emplace(ring_, x.chain);
            checks_.push_back("working ring " +
                              state->embed->working_ring().describe());
          },
          [&](const strategy::Trinomial&) {
            state->trinomial.emplace(ring_);
            checks_.push_back(congruence(ring_.q(), ring_.n()));
          },
      },
      strategy_);
  state_ = std::move(state);
}

std::string NttPlan::describe() const { return nttkit::describe(strategy_); }

std::optional<std::pair<TransformSpec, TransformSpec>> NttPlan::transform_specs()
    const {
  const TransformPlan* t = nullptr;
  if (state_->transform) t = &*state_->transform;
  if (state_->split) t = &state_->split->inner();
  if (!state_->rns_plans.empty()) t = &state_->rns_plans.front();
  if (state_->embed) return std::nullopt;
  if (t == nullptr) return std::nullopt;
  return std::make_pair(t->forward_spec(), t->inverse_spec());
}

Poly NttPlan::multiply(const Poly& a, const Poly& b) const {
  NTTKIT_REQUIRE(a.ring == ring_ && b.ring == ring_, ErrorCode::kRingMismatch,
                 "operands do not live in the plan ring " + ring_.describe());
  const State& s = *state_;
  const LiftOptions lift{profile_, false};
  return std::visit(
      Overloaded{
          [&](const strategy::Split& x) {
            return x.kind == strategy::SplitKind::kPt ? s.split->ptntt(a, b)
                                                      : s.split->kntt(a, b);
          },
          [&](const strategy::HNtt&) { return s.split->kntt(a, b); },
          [&](const strategy::Rns&) {
            return rns_multiply(a, b, s.rns_plans, *s.basis, lift);
          },
          [&](const strategy::Embed&) { return s.embed->multiply(a, b); },
          [&](const strategy::Trinomial&) {
            return trinomial_multiply(a, b, *s.trinomial);
          },
          [&](const auto&) {
            if (s.lift_modulus != 0) {
              return lifted_multiply(a, b, *s.transform, lift);
            }
            return nttkit::ntt_multiply(a, b, *s.transform);
          },
      },
      strategy_);
}

bool NttPlan::has_domain() const noexcept {
  return state_->transform.has_value() || state_->trinomial.has_value();
}

std::uint64_t NttPlan::domain_modulus() const {
  NTTKIT_REQUIRE(has_domain(), ErrorCode::kPlanMismatch,
                 describe() + " has no single transform domain");
  return state_->lift_modulus != 0 ? state_->lift_modulus : ring_.q();
}

NttDomainPoly NttPlan::forward(const Poly& a) const {
  NTTKIT_REQUIRE(has_domain(), ErrorCode::kPlanMismatch,
                 describe() + " has no single transform domain");
  NTTKIT_REQUIRE(a.ring == ring_, ErrorCode::kRingMismatch,
                 "operand does not live in the plan ring " + ring_.describe());
  if (state_->trinomial) return state_->trinomial->forward(a);
  if (state_->lift_modulus != 0) {
    return state_->transform->forward(lift_to(a, state_->lift_modulus));
  }
  return state_->transform->forward(a);
}

Poly NttPlan::inverse(const NttDomainPoly& a_hat) const {
  NTTKIT_REQUIRE(has_domain(), ErrorCode::kPlanMismatch,
                 describe() + " has no single transform domain");
  if (state_->trinomial) return state_->trinomial->inverse(a_hat);
  NTTKIT_REQUIRE(a_hat.ring == state_->transform->ring(), ErrorCode::kPlanMismatch,
                 "transform-domain value belongs to another plan");
  Poly c = state_->transform->inverse(a_hat);
  if (state_->lift_modulus == 0) return c;
  Poly out(ring_);
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    out.coeffs[i] = centered_drop(c.coeffs[i], state_->lift_modulus, ring_.q());
  }
  return out;
}

NttDomainPoly NttPlan::pointwise(const NttDomainPoly& u,
                                 const NttDomainPoly& v) const {
  NTTKIT_REQUIRE(has_domain(), ErrorCode::kPlanMismatch,
                 describe() + " has no single transform domain");
  if (state_->trinomial) return state_->trinomial->pointwise(u, v);
  return state_->transform->pointwise(u, v);
}

std::uint64_t search_prime(std::uint64_t step, std::uint64_t bound) {
  NTTKIT_REQUIRE(step >= 1, ErrorCode::kParameterCondition, "step must be positive");
  std::uint64_t c = bound / step + 1;
  for (;; ++c) {
    const std::uint64_t candidate = c * step + 1;
    NTTKIT_REQUIRE(candidate <= kMaxModulus, ErrorCode::kNoStrategy,
                   "no prime below the modulus limit exceeds " +
                       std::to_string(bound));
    if (candidate > bound && is_prime(candidate)) return candidate;
  }
}

std::vector<std::uint64_t> search_basis(std::uint64_t step, std::uint64_t bound) {
  std::vector<std::uint64_t> primes;
  unsigned __int128 product = 1;
  for (std::uint64_t c = 1; product <= bound; ++c) {
    const std::uint64_t candidate = c * step + 1;
    if (!is_prime(candidate)) continue;
    primes.push_back(candidate);
    product *= candidate;
  }
  NTTKIT_REQUIRE(product <= kMaxModulus, ErrorCode::kNoStrategy,
                 "basis product exceeds the modulus limit");
  return primes;
}

NttPlan make_plan(const RingSpec& ring, const PlanPreferences& prefs) {
  const RingClass cls = classify(ring);
  const std::uint64_t q = ring.q();
  const std::size_t n = ring.n();
  auto need_bigmod = [&](const std::string& why) {
    NTTKIT_REQUIRE(prefs.allow_bigmod, ErrorCode::kNoStrategy,
                   ring.describe() + ": " + why +
                       "; lifting to a larger modulus is not allowed");
  };
  const std::uint64_t bound = required_bound(n, q, prefs.profile);
  switch (cls.kind) {
    case RingClass::Kind::kPow2FullFriendly:
      if (prefs.beta.value_or(0) > 0) {
        return NttPlan(ring, strategy::Incomplete{*prefs.beta}, prefs.profile);
      }
      return NttPlan(ring, strategy::Full{}, prefs.profile);
    case RingClass::Kind::kPow2PartialFriendly: {
      const unsigned t = cls.deficit;
      switch (prefs.partial) {
        case PlanPreferences::Partial::kIncomplete:
          return NttPlan(ring, strategy::Incomplete{prefs.beta.value_or(t)},
                         prefs.profile);
        case PlanPreferences::Partial::kSplit:
          return NttPlan(ring,
                         strategy::Split{prefs.alpha.value_or(t), prefs.split_kind},
                         prefs.profile);
        case PlanPreferences::Partial::kHNtt: {
          const unsigned alpha = prefs.alpha.value_or(0);
          const unsigned beta = prefs.beta.value_or(alpha >= t ? 0 : t - alpha);
          return NttPlan(ring, strategy::HNtt{alpha, beta}, prefs.profile);
        }
      }
      break;
    }
    case RingClass::Kind::kPow2Unfriendly: {
      need_bigmod("no usable roots of unity mod " + std::to_string(q));
      const unsigned beta = prefs.beta.value_or(0);
      const std::uint64_t step = full_order(ring) >> beta;
      switch (prefs.unfriendly) {
        case PlanPreferences::Unfriendly::kBigPrime:
          return NttPlan(ring, strategy::BigPrime{search_prime(step, bound), beta},
                         prefs.profile);
        case PlanPreferences::Unfriendly::kRns:
          return NttPlan(ring, strategy::Rns{search_basis(step, bound), beta},
                         prefs.profile);
        case PlanPreferences::Unfriendly::kComposite:
          return NttPlan(ring, strategy::Composite{search_basis(step, bound), beta},
                         prefs.profile);
      }
      break;
    }
    case RingClass::Kind::kNonPow2:
    case RingClass::Kind::kGeneralPhi: {
      if (ring.form() == RingForm::kTrinomial && is_prime(q) && q % n == 1) {
        return NttPlan(ring, strategy::Trinomial{}, prefs.profile);
      }
      if (ring.form() == RingForm::kGeneral) break;
      const bool native_cyclic = cls.pad == n && ring.form() == RingForm::kXnMinus1;
      EmbedChain chain;
      auto lift_for = [&](std::uint64_t step) {
        if (is_prime(q) && q % step == 1) return;
        need_bigmod("coefficient modulus lacks roots of order " +
                    std::to_string(step));
        chain.steps.push_back(
            step::LiftModulus{search_prime(step, bound), prefs.profile});
      };
      auto embedding = prefs.embedding;
      if (embedding == PlanPreferences::Embedding::kGood && cls.h == 1) {
        embedding = PlanPreferences::Embedding::kPad;
      }
      switch (embedding) {
        case PlanPreferences::Embedding::kGood:
          if (!native_cyclic) chain.steps.push_back(step::ZeroPad{cls.pad});
          lift_for(std::uint64_t{1} << cls.k);
          chain.steps.push_back(step::Good{cls.h, cls.k});
          break;
        case PlanPreferences::Embedding::kPad: {
          const std::size_t padded = next_pow2(2 * n - 1);
          chain.steps.push_back(step::ZeroPad{padded});
          lift_for(padded);
          break;
        }
        case PlanPreferences::Embedding::kSchonhage: {
          NTTKIT_REQUIRE(q % 2 == 1, ErrorCode::kNoStrategy,
                         "Schonhage's trick needs an odd modulus");
          const std::size_t padded = next_pow2(2 * n - 1);
          const unsigned s = log2_exact(padded / 2);
          const std::size_t m = std::size_t{1} << ((s + 1) / 2);
          chain.steps.push_back(step::ZeroPad{padded});
          chain.steps.push_back(step::Schonhage{m, padded / (2 * m)});
          if (2 * m > 8) {
            const auto [im, in] = nussbaumer_shape(2 * m);
            chain.steps.push_back(step::Nussbaumer{im, in});
          }
          break;
        }
      }
      return NttPlan(ring, strategy::Embed{chain}, prefs.profile);
    }
  }
  fail(ErrorCode::kNoStrategy, "no strategy for " + ring.describe());
}

Poly ntt_multiply(const Poly& a, const Poly& b, const NttPlan& plan) {
  return plan.multiply(a, b);
}

std::vector<Poly> matvec_multiply(
    const std::vector<std::vector<NttDomainPoly>>& a_hat,
    const std::vector<Poly>& s, const NttPlan& plan) {
  NTTKIT_REQUIRE(!s.empty(), ErrorCode::kShapeMismatch, "empty vector");
  for (const auto& row : a_hat) {
    NTTKIT_REQUIRE(row.size() == s.size(), ErrorCode::kShapeMismatch,
                   "matrix has " + std::to_string(row.size()) +
                       " columns, vector has " + std::to_string(s.size()));
  }
  std::vector<NttDomainPoly> s_hat;
  s_hat.reserve(s.size());
  for (const Poly& p : s) s_hat.push_back(plan.forward(p));
  std::vector<Poly> out;
  out.reserve(a_hat.size());
  for (const auto& row : a_hat) {
    NttDomainPoly acc = plan.pointwise(row[0], s_hat[0]);
    for (std::size_t j = 1; j < row.size(); ++j) {
      acc = domain_add(acc, plan.pointwise(row[j], s_hat[j]));
    }
    out.push_back(plan.inverse(acc));
  }
  return out;
}

NttDomainPoly sample_ntt_domain_uniform(const NttPlan& plan, std::uint64_t seed) {
  NttDomainPoly out = [&] {
    detail::PauseCounting pause;
    return plan.forward(Poly(plan.ring()));
  }();
  const std::uint64_t m = plan.domain_modulus();
  const std::uint64_t mask = std::bit_ceil(m) - 1;
  std::mt19937_64 rng(seed);
  for (auto& v : out.values) {
    std::uint64_t x;
    do {
      x = rng() & mask;
    } while (x >= m);
    v = x;
  }
  return out;
}

namespace {

using nlohmann::json;

OperandProfile parse_profile(const json& j) {
  if (j.is_null()) return OperandProfile::full_full();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "full_full") return OperandProfile::full_full();
  if (kind == "full_small") {
    return OperandProfile::full_small(j.at("mu").get<std::uint64_t>());
  }
  if (kind == "matvec") {
    return OperandProfile::matvec(j.at("k").get<unsigned>(),
                                  j.at("mu").get<std::uint64_t>());
  }
  fail(ErrorCode::kParseError, "unknown operand profile '" + kind + "'");
}

EmbedStep parse_step(const json& j, const OperandProfile& profile) {
  const std::string kind = j.at("step").get<std::string>();
  if (kind == "ZeroPad") {
    return step::ZeroPad{j.at("n").get<std::size_t>(),
                         parse_form(j.value("form", std::string("x^n-1")))};
  }
  if (kind == "LiftModulus") {
    return step::LiftModulus{j.at("N").get<std::uint64_t>(), profile};
  }
  if (kind == "Good") {
    return step::Good{j.at("h").get<unsigned>(), j.at("k").get<unsigned>()};
  }
  if (kind == "Schonhage") {
    return step::Schonhage{j.at("m").get<std::size_t>(), j.at("n").get<std::size_t>()};
  }
  if (kind == "Nussbaumer") {
    return step::Nussbaumer{j.at("m").get<std::size_t>(),
                            j.at("n").get<std::size_t>()};
  }
  fail(ErrorCode::kParseError, "unknown embedding step '" + kind + "'");
}

Strategy parse_strategy(const json& j, const OperandProfile& profile) {
  const std::string kind = j.at("kind").get<std::string>();
  const unsigned beta = j.value("beta", 0u);
  if (kind == "Full") return strategy::Full{};
  if (kind == "Incomplete") return strategy::Incomplete{beta};
  if (kind == "Split") {
    return strategy::Split{j.at("alpha").get<unsigned>(),
                           j.value("variant", std::string("K")) == "Pt"
                               ? strategy::SplitKind::kPt
                               : strategy::SplitKind::kK};
  }
  if (kind == "HNtt") return strategy::HNtt{j.at("alpha").get<unsigned>(), beta};
  if (kind == "BigPrime") {
    return strategy::BigPrime{j.at("N").get<std::uint64_t>(), beta};
  }
  if (kind == "Rns") {
    return strategy::Rns{j.at("primes").get<std::vector<std::uint64_t>>(), beta};
  }
  if (kind == "Composite") {
    return strategy::Composite{j.at("primes").get<std::vector<std::uint64_t>>(),
                               beta};
  }
  if (kind == "Embed") {
    EmbedChain chain;
    for (const auto& s : j.at("chain")) chain.steps.push_back(parse_step(s, profile));
    return strategy::Embed{chain};
  }
  if (kind == "Trinomial") return strategy::Trinomial{};
  fail(ErrorCode::kParseError, "unknown strategy '" + kind + "'");
}

std::vector<Preset> load_registry() {
  if (const char* path = std::getenv("NTTKIT_PRESETS"); path && *path) {
    std::ifstream in(path);
    NTTKIT_REQUIRE(in.good(), ErrorCode::kParseError,
                   std::string("cannot read preset file ") + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return load_presets(buf.str());
  }
  return load_presets(detail::kBuiltinPresets);
}

}  // namespace

std::vector<Preset> load_presets(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParseError, std::string("preset registry: ") + e.what());
  }
  std::vector<Preset> out;
  try {
    for (const auto& p : doc.at("presets")) {
      const auto& r = p.at("ring");
      const RingSpec ring(parse_form(r.at("form").get<std::string>()),
                          r.at("n").get<std::size_t>(),
                          r.at("q").get<std::uint64_t>());
      const OperandProfile profile =
          parse_profile(p.contains("profile") ? p.at("profile") : json());
      out.push_back(Preset{p.at("name").get<std::string>(),
                           p.value("scheme", std::string()), ring,
                           NttPlan(ring, parse_strategy(p.at("strategy"), profile),
                                   profile)});
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, std::string("preset registry: ") + e.what());
  }
  return out;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> registry = load_registry();
  return registry;
}

const Preset& preset(const std::string& name) {
  for (const Preset& p : presets()) {
    if (p.name == name) return p;
  }
  fail(ErrorCode::kUnknownPreset, "unknown preset '" + name + "'");
}

}  // namespace nttkit
