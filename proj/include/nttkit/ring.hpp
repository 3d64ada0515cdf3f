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
#include <string>
#include <vector>

#include "nttkit/modarith.hpp"

namespace nttkit {

enum class RingForm {
  kXnMinus1,        // x^n - 1
  kXnPlus1,         // x^n + 1
  kTrinomial,       // x^n - x^(n/2) + 1, n = 3 * 2^e
  kXnMinusXMinus1,  // x^n - x - 1
  kGeneral,         // explicit monic modulus polynomial
};

/// Quotient ring Z_q[x]/(phi(x)) with deg phi = n.
class RingSpec {
 public:
  RingSpec(RingForm form, std::size_t n, std::uint64_t q);
  /// phi given low-to-high, length n + 1, leading coefficient 1.
  static RingSpec general(std::vector<Residue> phi, std::uint64_t q);

  static RingSpec cyclic(std::size_t n, std::uint64_t q) {
    return {RingForm::kXnMinus1, n, q};
  }
  static RingSpec negacyclic(std::size_t n, std::uint64_t q) {
    return {RingForm::kXnPlus1, n, q};
  }

  RingForm form() const noexcept { return form_; }
  std::size_t n() const noexcept { return n_; }
  const Modulus& modulus() const noexcept { return q_; }
  std::uint64_t q() const noexcept { return q_.value(); }

  /// Coefficients of phi, low-to-high, length n + 1.
  const std::vector<Residue>& phi() const noexcept { return phi_; }

  /// Same ring shape over another coefficient modulus.
  RingSpec with_modulus(std::uint64_t q) const;

  std::string describe() const;

  friend bool operator==(const RingSpec& a, const RingSpec& b) {
    return a.form_ == b.form_ && a.n_ == b.n_ && a.q_ == b.q_ &&
           a.phi_ == b.phi_;
  }

 private:
  RingSpec(RingForm form, std::size_t n, Modulus q, std::vector<Residue> phi)
      : form_(form), n_(n), q_(q), phi_(std::move(phi)) {}

  RingForm form_;
  std::size_t n_;
  Modulus q_;
  std::vector<Residue> phi_;
};

std::string form_token(RingForm form);
/// Inverse of form_token for the named forms; throws ParseError.
RingForm parse_form(const std::string& token);

/// Element of a RingSpec: exactly n canonical coefficients.
struct Poly {
  Poly(RingSpec ring_in, std::vector<Residue> coeffs_in);
  explicit Poly(RingSpec ring_in);

  static Poly from_signed(RingSpec ring, const std::vector<std::int64_t>& c);

  RingSpec ring;
  std::vector<Residue> coeffs;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.ring == b.ring && a.coeffs == b.coeffs;
  }
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);

}  // namespace nttkit
