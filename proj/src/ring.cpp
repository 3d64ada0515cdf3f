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

#include "nttkit/ring.hpp"

#include <sstream>

namespace nttkit {

namespace {

std::vector<Residue> phi_for(RingForm form, std::size_t n, const Modulus& q) {
  std::vector<Residue> phi(n + 1, 0);
  phi[n] = 1;
  const Residue minus_one = q.value() - 1;
  switch (form) {
    case RingForm::kXnMinus1:
      phi[0] = minus_one;
      break;
    case RingForm::kXnPlus1:
      phi[0] = 1;
      break;
    case RingForm::kTrinomial:
      phi[0] = 1;
      phi[n / 2] = minus_one;
      break;
    case RingForm::kXnMinusXMinus1:
      phi[0] = minus_one;
      phi[1] = minus_one;
      break;
    case RingForm::kGeneral:
      break;
  }
  return phi;
}

}  // namespace

RingSpec::RingSpec(RingForm form, std::size_t n, std::uint64_t q)
    : form_(form), n_(n), q_(q) {
  NTTKIT_REQUIRE(n >= 1, ErrorCode::kParameterCondition, "ring degree must be >= 1");
  NTTKIT_REQUIRE(form != RingForm::kGeneral, ErrorCode::kParameterCondition,
          "general rings are built with RingSpec::general");
  if (form == RingForm::kTrinomial) {
    bool ok = n % 3 == 0 && n >= 6 && is_power_of_two(n / 3);
    NTTKIT_REQUIRE(ok, ErrorCode::kParameterCondition,
            "trinomial ring needs n = 3 * 2^e with e >= 1");
  }
  if (form == RingForm::kXnMinusXMinus1) {
    NTTKIT_REQUIRE(n >= 2, ErrorCode::kParameterCondition,
            "x^n - x - 1 needs n >= 2");
  }
  phi_ = phi_for(form, n, q_);
}

RingSpec RingSpec::general(std::vector<Residue> phi, std::uint64_t q) {
  const Modulus m(q);
  NTTKIT_REQUIRE(phi.size() >= 2, ErrorCode::kParameterCondition,
          "modulus polynomial must have degree >= 1");
  for (auto& c : phi) c = m.reduce(c);
  NTTKIT_REQUIRE(phi.back() == 1, ErrorCode::kParameterCondition,
          "modulus polynomial must be monic");
  const std::size_t n = phi.size() - 1;
  return RingSpec(RingForm::kGeneral, n, m, std::move(phi));
}

RingSpec RingSpec::with_modulus(std::uint64_t q) const {
  if (form_ == RingForm::kGeneral) return general(phi_, q);
  return RingSpec(form_, n_, q);
}

std::string form_token(RingForm form) {
  switch (form) {
    case RingForm::kXnMinus1: return "x^n-1";
    case RingForm::kXnPlus1: return "x^n+1";
    case RingForm::kTrinomial: return "x^n-x^n/2+1";
    case RingForm::kXnMinusXMinus1: return "x^n-x-1";
    case RingForm::kGeneral: return "general";
  }
  return "?";
}

RingForm parse_form(const std::string& token) {
  for (RingForm f : {RingForm::kXnMinus1, RingForm::kXnPlus1, RingForm::kTrinomial,
                     RingForm::kXnMinusXMinus1}) {
    if (token == form_token(f)) return f;
  }
  fail(ErrorCode::kParseError, "unknown ring form '" + token + "'");
}

std::string RingSpec::describe() const {
  std::ostringstream os;
  if (form_ == RingForm::kGeneral) {
    os << "general:";
    for (std::size_t i = 0; i < phi_.size(); ++i) {
      os << (i ? "," : "") << phi_[i];
    }
  } else {
    os << form_token(form_);
  }
  os << " n=" << n_ << " q=" << q_.value();
  return os.str();
}

Poly::Poly(RingSpec ring_in, std::vector<Residue> coeffs_in)
    : ring(std::move(ring_in)), coeffs(std::move(coeffs_in)) {
  NTTKIT_REQUIRE(coeffs.size() <= ring.n(), ErrorCode::kLengthMismatch,
          "more coefficients than the ring degree");
  coeffs.resize(ring.n(), 0);
  for (auto& c : coeffs) c = ring.modulus().reduce(c);
}

Poly::Poly(RingSpec ring_in)
    : ring(std::move(ring_in)), coeffs(ring.n(), 0) {}

Poly Poly::from_signed(RingSpec ring, const std::vector<std::int64_t>& c) {
  Poly p(std::move(ring));
  NTTKIT_REQUIRE(c.size() <= p.coeffs.size(), ErrorCode::kLengthMismatch,
          "more coefficients than the ring degree");
  for (std::size_t i = 0; i < c.size(); ++i) {
    p.coeffs[i] = p.ring.modulus().reduce_signed(c[i]);
  }
  return p;
}

Poly operator+(const Poly& a, const Poly& b) {
  NTTKIT_REQUIRE(a.ring == b.ring, ErrorCode::kRingMismatch, "adding across rings");
  Poly c(a.ring);
  const Modulus& m = a.ring.modulus();
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    c.coeffs[i] = m.add(a.coeffs[i], b.coeffs[i]);
  }
  return c;
}

Poly operator-(const Poly& a, const Poly& b) {
  NTTKIT_REQUIRE(a.ring == b.ring, ErrorCode::kRingMismatch,
          "subtracting across rings");
  Poly c(a.ring);
  const Modulus& m = a.ring.modulus();
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    c.coeffs[i] = m.sub(a.coeffs[i], b.coeffs[i]);
  }
  return c;
}

}  // namespace nttkit
