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

// Exact modular arithmetic for moduli up to 2^42, root-of-unity discovery,
// bit reversal and twiddle tables. Residues are canonical unsigned values in
// [0, m); all products go through a double-width intermediate.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nttkit/errors.hpp"

namespace nttkit {

using Residue = std::uint64_t;

inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 42;

/// Counts modular operations performed on the current thread while attached
/// through ScopedOpCounter. Transform counts are bumped by the transform
/// entry points, not by the arithmetic.
struct OpCounter {
  std::uint64_t mults = 0;
  std::uint64_t adds = 0;
  std::uint64_t subs = 0;
  std::uint64_t forward_transforms = 0;
  std::uint64_t inverse_transforms = 0;

  void reset() { *this = OpCounter{}; }
};

namespace detail {
inline thread_local OpCounter* active_counter = nullptr;

inline void count_mul() {
  if (active_counter != nullptr) ++active_counter->mults;
}
inline void count_add() {
  if (active_counter != nullptr) ++active_counter->adds;
}
inline void count_sub() {
  if (active_counter != nullptr) ++active_counter->subs;
}

/// Detaches any counter for the guard's lifetime, for setup work that must
/// not show up in operation counts.
class PauseCounting {
 public:
  PauseCounting() : previous_(active_counter) { active_counter = nullptr; }
  ~PauseCounting() { active_counter = previous_; }
  PauseCounting(const PauseCounting&) = delete;
  PauseCounting& operator=(const PauseCounting&) = delete;

 private:
  OpCounter* previous_;
};
}  // namespace detail

/// Attaches a counter to the calling thread for the lifetime of the guard.
/// Guards nest; the previous counter is restored on destruction.
class ScopedOpCounter {
 public:
  explicit ScopedOpCounter(OpCounter& counter)
      : previous_(detail::active_counter) {
    detail::active_counter = &counter;
  }
  ~ScopedOpCounter() { detail::active_counter = previous_; }
  ScopedOpCounter(const ScopedOpCounter&) = delete;
  ScopedOpCounter& operator=(const ScopedOpCounter&) = delete;

 private:
  OpCounter* previous_;
};

class Modulus {
 public:
  explicit Modulus(std::uint64_t value);

  std::uint64_t value() const noexcept { return m_; }

  Residue reduce(std::uint64_t x) const noexcept { return x % m_; }
  Residue reduce_signed(std::int64_t x) const noexcept {
    const std::int64_t r = x % static_cast<std::int64_t>(m_);
    return static_cast<Residue>(r < 0 ? r + static_cast<std::int64_t>(m_) : r);
  }

  Residue add(Residue a, Residue b) const noexcept {
    detail::count_add();
    return add_raw(a, b);
  }
  Residue sub(Residue a, Residue b) const noexcept {
    detail::count_sub();
    return sub_raw(a, b);
  }
  Residue neg(Residue a) const noexcept {
    detail::count_sub();
    return a == 0 ? 0 : m_ - a;
  }

  /// a*b mod m using a precomputed floating-point reciprocal to estimate the
  /// quotient; the remainder is corrected exactly.
  Residue mul(Residue a, Residue b) const noexcept {
    detail::count_mul();
    return mul_raw(a, b);
  }

  /// a*b mod m by 128-bit division. Baseline for mul().
  Residue mul_reference(Residue a, Residue b) const noexcept {
    detail::count_mul();
    return static_cast<Residue>(
        (static_cast<unsigned __int128>(a) * b) % m_);
  }

  /// x/2 mod m for odd m: (x >> 1) + odd(x) * (m + 1) / 2.
  Residue half(Residue x) const noexcept {
    detail::count_add();
    return half_raw(x);
  }

  // Uncounted forms for kernels that tally their own operations.
  Residue add_raw(Residue a, Residue b) const noexcept {
    const Residue s = a + b;
    return s >= m_ ? s - m_ : s;
  }
  Residue sub_raw(Residue a, Residue b) const noexcept {
    return a >= b ? a - b : a + m_ - b;
  }
  Residue mul_raw(Residue a, Residue b) const noexcept {
    const auto q = static_cast<std::uint64_t>(static_cast<double>(a) *
                                              static_cast<double>(b) * inv_);
    auto r = static_cast<std::int64_t>(a * b - q * m_);
    const auto sm = static_cast<std::int64_t>(m_);
    if (r < 0) {
      r += sm;
    } else if (r >= sm) {
      r -= sm;
    }
    return static_cast<Residue>(r);
  }
  Residue half_raw(Residue x) const noexcept {
    return (x >> 1) + ((x & 1) != 0 ? half_up_ : 0);
  }

  Residue pow(Residue base, std::uint64_t exp) const noexcept;

  /// Throws NotInvertible when gcd(a, m) != 1.
  Residue inv(Residue a) const;

  friend bool operator==(const Modulus& a, const Modulus& b) noexcept {
    return a.m_ == b.m_;
  }

 private:
  std::uint64_t m_;
  std::uint64_t half_up_;
  double inv_;
};

Residue mod_mul(Residue a, Residue b, const Modulus& m);
Residue mod_pow(Residue base, std::uint64_t exp, const Modulus& m);
Residue mod_inv(Residue a, const Modulus& m);

enum class RootKind { kPrimitive, kPrincipal };

bool is_prime(std::uint64_t n);

/// Prime factorisation by trial division, ascending primes with exponents.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

bool is_primitive_root(Residue psi, std::uint64_t k, const Modulus& m);
bool is_principal_root(Residue psi, std::uint64_t k, const Modulus& m);

/// Smallest residue of exact order k for prime m. Composite squarefree m is
/// handled by CRT-lifting per-prime roots (see bigmod.hpp).
Residue find_root(std::uint64_t k, const Modulus& m, RootKind kind);

inline bool is_power_of_two(std::uint64_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

/// log2 of a power of two.
unsigned log2_exact(std::uint64_t n);

/// Reverses the log2(n)-bit expansion of b.
std::uint64_t bitrev(std::uint64_t b, std::uint64_t n);

enum class StorageOrder { kNatural, kBitReversed };

/// Powers root^0 .. root^(k-1) (or of root^-1 when inverse), laid out either
/// naturally or permuted by bitrev_k. Immutable once built.
class TwiddleTable {
 public:
  TwiddleTable(Residue root, std::uint64_t order, const Modulus& m,
               StorageOrder storage, bool inverse);

  const Modulus& modulus() const noexcept { return m_; }
  Residue root() const noexcept { return root_; }
  std::uint64_t order() const noexcept { return order_; }
  StorageOrder storage_order() const noexcept { return storage_; }
  bool inverse() const noexcept { return inverse_; }

  /// Raw storage, powers()[0] == 1.
  std::span<const Residue> powers() const noexcept { return powers_; }

  /// root^(+-e) for any e, independent of storage order.
  Residue power(std::uint64_t e) const noexcept {
    e %= order_;
    return storage_ == StorageOrder::kNatural ? powers_[e]
                                              : powers_[slot_[e]];
  }

 private:
  Modulus m_;
  Residue root_;
  std::uint64_t order_;
  StorageOrder storage_;
  bool inverse_;
  std::vector<Residue> powers_;
  std::vector<std::uint32_t> slot_;
};

TwiddleTable build_twiddles(Residue root, std::uint64_t k, const Modulus& m,
                            StorageOrder storage, bool inverse);

}  // namespace nttkit
