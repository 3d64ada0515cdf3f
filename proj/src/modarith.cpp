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

#include "nttkit/modarith.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

#include "nttkit/bigmod.hpp"

namespace nttkit {

Modulus::Modulus(std::uint64_t value)
    : m_(value),
      half_up_((value + 1) / 2),
      inv_(1.0 / static_cast<double>(value)) {
  NTTKIT_REQUIRE(value >= 2 && value <= kMaxModulus, ErrorCode::kParameterCondition,
          "modulus must lie in [2, 2^42], got " + std::to_string(value));
}

Residue Modulus::pow(Residue base, std::uint64_t exp) const noexcept {
  Residue result = 1 % m_;
  base %= m_;
  while (exp != 0) {
    if ((exp & 1) != 0) result = mul(result, base);
    exp >>= 1;
    if (exp != 0) base = mul(base, base);
  }
  return result;
}

Residue Modulus::inv(Residue a) const {
  std::int64_t r0 = static_cast<std::int64_t>(m_);
  std::int64_t r1 = static_cast<std::int64_t>(a % m_);
  std::int64_t t0 = 0;
  std::int64_t t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  NTTKIT_REQUIRE(r0 == 1, ErrorCode::kNotInvertible,
          std::to_string(a) + " has no inverse modulo " + std::to_string(m_));
  return reduce_signed(t0);
}

Residue mod_mul(Residue a, Residue b, const Modulus& m) { return m.mul(a, b); }

Residue mod_pow(Residue base, std::uint64_t exp, const Modulus& m) {
  return m.pow(base, exp);
}

Residue mod_inv(Residue a, const Modulus& m) { return m.inv(a); }

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e != 0) {
    if ((e & 1) != 0) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all n < 3.3e24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_primitive_root(Residue psi, std::uint64_t k, const Modulus& m) {
  detail::PauseCounting pause;
  NTTKIT_REQUIRE(k >= 1, ErrorCode::kParameterCondition, "root order must be >= 1");
  if (psi >= m.value()) return false;
  if (m.pow(psi, k) != 1) return false;
  // psi^k = 1 makes psi a unit, so its order divides k; it equals k unless it
  // divides some k/p.
  for (const auto& [p, e] : factorize(k)) {
    if (m.pow(psi, k / p) == 1) return false;
  }
  return true;
}

bool is_principal_root(Residue psi, std::uint64_t k, const Modulus& m) {
  detail::PauseCounting pause;
  NTTKIT_REQUIRE(k >= 1, ErrorCode::kParameterCondition, "root order must be >= 1");
  if (psi >= m.value()) return false;
  if (m.pow(psi, k) != 1) return false;
  Residue w = 1;
  for (std::uint64_t l = 1; l < k; ++l) {
    w = m.mul(w, psi);  // psi^l
    // sum * (w - 1) = w^k - 1 = 0, so the sum vanishes whenever w - 1 is a
    // unit; only the remaining l need the explicit summation.
    if (w != 1 && std::gcd(w - 1, m.value()) == 1) continue;
    Residue sum = 0;
    Residue term = 1;
    for (std::uint64_t j = 0; j < k; ++j) {
      sum = m.add(sum, term);
      term = m.mul(term, w);
    }
    if (sum != 0) return false;
  }
  return true;
}

Residue find_root(std::uint64_t k, const Modulus& m, RootKind kind) {
  detail::PauseCounting pause;
  NTTKIT_REQUIRE(k >= 1, ErrorCode::kParameterCondition, "root order must be >= 1");
  const std::uint64_t q = m.value();
  if (!is_prime(q)) {
    // Primitive and principal coincide for the CRT-lifted root.
    (void)kind;
    return find_principal_root_composite(k, m);
  }
  NTTKIT_REQUIRE((q - 1) % k == 0, ErrorCode::kNoSuchRoot,
          "no " + std::to_string(k) + "-th root of unity modulo " +
              std::to_string(q));
  if (k == 1) return 1;
  // Any element of exact order k generates the cyclic subgroup of order k;
  // its generators are h^j with gcd(j, k) = 1, and the smallest of those is
  // the smallest residue of order k.
  Residue h = 0;
  for (Residue x = 2; x < q; ++x) {
    const Residue c = m.pow(x, (q - 1) / k);
    if (is_primitive_root(c, k, m)) {
      h = c;
      break;
    }
  }
  Residue best = h;
  Residue cur = 1;
  for (std::uint64_t j = 1; j < k; ++j) {
    cur = m.mul(cur, h);
    if (std::gcd(j, k) == 1) best = std::min(best, cur);
  }
  return best;
}

unsigned log2_exact(std::uint64_t n) {
  NTTKIT_REQUIRE(is_power_of_two(n), ErrorCode::kParameterCondition,
          std::to_string(n) + " is not a power of two");
  unsigned l = 0;
  while ((std::uint64_t{1} << l) < n) ++l;
  return l;
}

std::uint64_t bitrev(std::uint64_t b, std::uint64_t n) {
  const unsigned bits = log2_exact(n);
  std::uint64_t r = 0;
  for (unsigned i = 0; i < bits; ++i) {
    r = (r << 1) | ((b >> i) & 1);
  }
  return r;
}

TwiddleTable::TwiddleTable(Residue root, std::uint64_t order, const Modulus& m,
                           StorageOrder storage, bool inverse)
    : m_(m), root_(root), order_(order), storage_(storage), inverse_(inverse) {
  detail::PauseCounting pause;
  NTTKIT_REQUIRE(order >= 1, ErrorCode::kParameterCondition, "table order must be >= 1");
  const bool ok = is_prime(m.value()) ? is_primitive_root(root, order, m)
                                      : is_principal_root(root, order, m);
  NTTKIT_REQUIRE(ok, ErrorCode::kInvalidRoot,
          std::to_string(root) + " is not a valid " + std::to_string(order) +
              "-th root of unity modulo " + std::to_string(m.value()));
  if (storage == StorageOrder::kBitReversed) {
    NTTKIT_REQUIRE(is_power_of_two(order), ErrorCode::kParameterCondition,
            "bit-reversed storage needs a power-of-two order");
  }
  const Residue base = inverse ? m.inv(root) : root;
  std::vector<Residue> natural(order);
  Residue cur = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    natural[i] = cur;
    cur = m.mul_reference(cur, base);
  }
  if (storage == StorageOrder::kNatural) {
    powers_ = std::move(natural);
    return;
  }
  powers_.resize(order);
  slot_.resize(order);
  for (std::uint64_t i = 0; i < order; ++i) {
    const std::uint64_t e = bitrev(i, order);
    powers_[i] = natural[e];
    slot_[e] = static_cast<std::uint32_t>(i);
  }
}

TwiddleTable build_twiddles(Residue root, std::uint64_t k, const Modulus& m,
                            StorageOrder storage, bool inverse) {
  return TwiddleTable(root, k, m, storage, inverse);
}

}  // namespace nttkit
