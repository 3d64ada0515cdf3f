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

#include "nttkit/bigmod.hpp"

#include <numeric>
#include <string>

namespace nttkit {

namespace {

using u128 = unsigned __int128;

std::uint64_t saturate(u128 x) {
  const u128 top = ~std::uint64_t{0};
  return static_cast<std::uint64_t>(x > top ? top : x);
}

std::int64_t centered(Residue x, std::uint64_t q) {
  return 2 * x < q ? static_cast<std::int64_t>(x)
                   : static_cast<std::int64_t>(x) - static_cast<std::int64_t>(q);
}

Poly lift_poly(const Poly& a, const RingSpec& big_ring) {
  Poly out(big_ring);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    out.coeffs[i] = centered_lift(a.coeffs[i], a.ring.q(), big_ring.q());
  }
  return out;
}

void verify_fit(const Poly& a, const Poly& b, std::uint64_t big_n) {
  const __int128 half = static_cast<__int128>(big_n / 2);
  for (const __int128 c : exact_centered_product(a, b)) {
    NTTKIT_REQUIRE(c <= half && -c <= half, ErrorCode::kBoundTooSmall,
            "integer product coefficient exceeds N/2 for N=" +
                std::to_string(big_n));
  }
}

}  // namespace

std::uint64_t required_bound(std::uint64_t n, std::uint64_t q,
                             const OperandProfile& profile) {
  switch (profile.kind) {
    case OperandProfile::Kind::kFullFull:
      return saturate(static_cast<u128>(n) * q * q);
    case OperandProfile::Kind::kFullSmall:
      return saturate(static_cast<u128>(n) * q * profile.mu / 2);
    case OperandProfile::Kind::kMatvec:
      return saturate(static_cast<u128>(profile.k) * n * q * profile.mu / 2);
  }
  return 0;
}

void check_bound(std::uint64_t big_n, std::uint64_t n, std::uint64_t q,
                 const OperandProfile& profile) {
  // With q | N, reduction mod q after working mod N is exact for any size.
  if (big_n % q == 0) return;
  const std::uint64_t bound = required_bound(n, q, profile);
  NTTKIT_REQUIRE(big_n > bound, ErrorCode::kBoundTooSmall,
          "working modulus " + std::to_string(big_n) +
              " does not exceed the bound " + std::to_string(bound));
}

Residue centered_lift(Residue x, std::uint64_t q, std::uint64_t big_n) {
  const std::int64_t c = centered(x, q);
  const auto sn = static_cast<std::int64_t>(big_n);
  const std::int64_t r = c % sn;
  return static_cast<Residue>(r < 0 ? r + sn : r);
}

Residue centered_drop(Residue c, std::uint64_t big_n, std::uint64_t q) {
  const std::int64_t s = 2 * c > big_n ? static_cast<std::int64_t>(c) -
                                             static_cast<std::int64_t>(big_n)
                                       : static_cast<std::int64_t>(c);
  const auto sq = static_cast<std::int64_t>(q);
  const std::int64_t r = s % sq;
  return static_cast<Residue>(r < 0 ? r + sq : r);
}

RnsBasis::RnsBasis(std::vector<std::uint64_t> primes)
    : primes_(std::move(primes)), product_(1) {
  NTTKIT_REQUIRE(!primes_.empty(), ErrorCode::kParameterCondition,
          "empty RNS basis");
  u128 prod = 1;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    NTTKIT_REQUIRE(primes_[i] >= 2, ErrorCode::kParameterCondition,
            "basis entries must be >= 2");
    for (std::size_t j = 0; j < i; ++j) {
      NTTKIT_REQUIRE(std::gcd(primes_[i], primes_[j]) == 1, ErrorCode::kNotCoprime,
              std::to_string(primes_[i]) + " and " +
                  std::to_string(primes_[j]) + " are not coprime");
    }
    prod *= primes_[i];
    NTTKIT_REQUIRE(prod <= kMaxModulus, ErrorCode::kParameterCondition,
            "basis product exceeds 2^42");
  }
  product_ = static_cast<std::uint64_t>(prod);
}

std::vector<Residue> crt_residues(Residue x, const RnsBasis& basis) {
  std::vector<Residue> out;
  out.reserve(basis.primes().size());
  for (std::uint64_t p : basis.primes()) out.push_back(x % p);
  return out;
}

Residue crt_recombine(std::span<const Residue> residues, const RnsBasis& basis) {
  const auto& primes = basis.primes();
  NTTKIT_REQUIRE(residues.size() == primes.size(), ErrorCode::kLengthMismatch,
          "one residue per basis entry expected");
  const std::uint64_t big_n = basis.product();
  u128 acc = 0;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::uint64_t p = primes[i];
    const std::uint64_t rest = big_n / p;
    const Modulus mp(p);
    const Residue inv = mp.inv(rest % p);
    const Residue coef = static_cast<Residue>(
        static_cast<u128>(residues[i] % p) * inv % p);
    acc = (acc + static_cast<u128>(coef) * rest) % big_n;
  }
  return static_cast<Residue>(acc);
}

Residue find_principal_root_composite(std::uint64_t k, const RnsBasis& basis) {
  std::vector<Residue> roots;
  for (std::uint64_t p : basis.primes()) {
    NTTKIT_REQUIRE(is_prime(p), ErrorCode::kParameterCondition,
            std::to_string(p) + " is not prime");
    roots.push_back(find_root(k, Modulus(p), RootKind::kPrimitive));
  }
  return crt_recombine(roots, basis);
}

Residue find_principal_root_composite(std::uint64_t k, const Modulus& m) {
  std::vector<std::uint64_t> primes;
  for (const auto& [p, e] : factorize(m.value())) {
    NTTKIT_REQUIRE(e == 1, ErrorCode::kNoSuchRoot,
            std::to_string(m.value()) + " is not squarefree");
    primes.push_back(p);
  }
  return find_principal_root_composite(k, RnsBasis(primes));
}

std::vector<__int128> exact_centered_product(const Poly& a, const Poly& b) {
  NTTKIT_REQUIRE(a.ring == b.ring, ErrorCode::kRingMismatch,
          "operands live in different rings");
  const std::size_t n = a.ring.n();
  const std::uint64_t q = a.ring.q();
  std::vector<__int128> lin(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const __int128 x = centered(a.coeffs[i], q);
    for (std::size_t j = 0; j < n; ++j) {
      lin[i + j] += x * centered(b.coeffs[j], q);
    }
  }
  const RingForm form = a.ring.form();
  NTTKIT_REQUIRE(form == RingForm::kXnMinus1 || form == RingForm::kXnPlus1,
          ErrorCode::kFormMismatch, "lifting needs x^n - 1 or x^n + 1");
  std::vector<__int128> out(lin.begin(), lin.begin() + n);
  for (std::size_t k = n; k < lin.size(); ++k) {
    out[k - n] += form == RingForm::kXnMinus1 ? lin[k] : -lin[k];
  }
  return out;
}

Poly lifted_multiply(const Poly& a, const Poly& b, const TransformPlan& plan,
                     const LiftOptions& options) {
  NTTKIT_REQUIRE(a.ring == b.ring, ErrorCode::kRingMismatch,
          "operands live in different rings");
  const std::uint64_t big_n = plan.ring().q();
  NTTKIT_REQUIRE(plan.ring() == a.ring.with_modulus(big_n), ErrorCode::kRingMismatch,
          "plan ring does not match the operand ring");
  check_bound(big_n, a.ring.n(), a.ring.q(), options.profile);
  if (options.verify_exact) verify_fit(a, b, big_n);
  const Poly c = ntt_multiply(lift_poly(a, plan.ring()),
                              lift_poly(b, plan.ring()), plan);
  Poly out(a.ring);
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    out.coeffs[i] = centered_drop(c.coeffs[i], big_n, a.ring.q());
  }
  return out;
}

namespace {

TransformPlan plan_over(const RingSpec& ring, std::uint64_t modulus,
                        unsigned beta) {
  try {
    return TransformPlan(ring.with_modulus(modulus), beta);
  } catch (const NttError& e) {
    if (e.code() == ErrorCode::kNoSuchRoot) {
      fail(ErrorCode::kParameterCondition,
           "modulus " + std::to_string(modulus) +
               " has no root of unity of the needed order for n=" +
               std::to_string(ring.n()) + ", beta=" + std::to_string(beta));
    }
    throw;
  }
}

}  // namespace

Poly bigprime_multiply(const Poly& a, const Poly& b, std::uint64_t big_n,
                       unsigned beta, const LiftOptions& options) {
  NTTKIT_REQUIRE(is_prime(big_n), ErrorCode::kParameterCondition,
          std::to_string(big_n) + " is not prime");
  check_bound(big_n, a.ring.n(), a.ring.q(), options.profile);
  return lifted_multiply(a, b, plan_over(a.ring, big_n, beta), options);
}

Poly rns_multiply(const Poly& a, const Poly& b,
                  std::span<const TransformPlan> plans, const RnsBasis& basis,
                  const LiftOptions& options) {
  NTTKIT_REQUIRE(a.ring == b.ring, ErrorCode::kRingMismatch,
          "operands live in different rings");
  NTTKIT_REQUIRE(plans.size() == basis.primes().size(), ErrorCode::kLengthMismatch,
          "one plan per basis prime expected");
  const std::uint64_t big_n = basis.product();
  check_bound(big_n, a.ring.n(), a.ring.q(), options.profile);
  if (options.verify_exact) verify_fit(a, b, big_n);
  const std::size_t n = a.ring.n();
  std::vector<std::vector<Residue>> parts;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const TransformPlan& plan = plans[i];
    NTTKIT_REQUIRE(plan.ring() == a.ring.with_modulus(basis.primes()[i]),
            ErrorCode::kRingMismatch, "plan ring does not match basis prime");
    parts.push_back(ntt_multiply(lift_poly(a, plan.ring()),
                                 lift_poly(b, plan.ring()), plan)
                        .coeffs);
  }
  Poly out(a.ring);
  std::vector<Residue> r(plans.size());
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < plans.size(); ++i) r[i] = parts[i][k];
    out.coeffs[k] = centered_drop(crt_recombine(r, basis), big_n, a.ring.q());
  }
  return out;
}

Poly rns_multiply(const Poly& a, const Poly& b, const RnsBasis& basis,
                  unsigned beta, const LiftOptions& options) {
  check_bound(basis.product(), a.ring.n(), a.ring.q(), options.profile);
  std::vector<TransformPlan> plans;
  for (std::uint64_t p : basis.primes()) {
    NTTKIT_REQUIRE(is_prime(p), ErrorCode::kParameterCondition,
            std::to_string(p) + " is not prime");
    plans.push_back(plan_over(a.ring, p, beta));
  }
  return rns_multiply(a, b, plans, basis, options);
}

Poly composite_multiply(const Poly& a, const Poly& b, const RnsBasis& basis,
                        unsigned beta, const LiftOptions& options) {
  for (std::uint64_t p : basis.primes()) {
    NTTKIT_REQUIRE(is_prime(p), ErrorCode::kParameterCondition,
            std::to_string(p) + " is not prime");
  }
  check_bound(basis.product(), a.ring.n(), a.ring.q(), options.profile);
  return lifted_multiply(a, b, plan_over(a.ring, basis.product(), beta),
                         options);
}

}  // namespace nttkit
