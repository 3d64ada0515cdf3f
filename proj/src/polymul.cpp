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

#include "nttkit/polymul.hpp"

#include <algorithm>
#include <string>

namespace nttkit {

namespace {

using u128 = unsigned __int128;

void require_same_modulus(const Poly& a, const Poly& b) {
  NTTKIT_REQUIRE(a.ring.q() == b.ring.q(), ErrorCode::kModulusMismatch,
          "operands use different coefficient moduli");
}

// Signed-free oracle accumulation: positive and negative 128-bit sums.
Poly wrapped_oracle(const Poly& a, const Poly& b, bool negate_wrap) {
  const std::size_t n = a.ring.n();
  const std::uint64_t q = a.ring.q();
  std::vector<u128> pos(n, 0);
  std::vector<u128> neg(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const u128 p = static_cast<u128>(a.coeffs[i]) * b.coeffs[j];
      const std::size_t k = i + j;
      if (k < n) {
        pos[k] += p;
      } else if (negate_wrap) {
        neg[k - n] += p;
      } else {
        pos[k - n] += p;
      }
    }
  }
  Poly c(a.ring);
  for (std::size_t k = 0; k < n; ++k) {
    const auto p = static_cast<std::uint64_t>(pos[k] % q);
    const auto s = static_cast<std::uint64_t>(neg[k] % q);
    c.coeffs[k] = p >= s ? p - s : p + q - s;
  }
  return c;
}

}  // namespace

std::vector<Residue> schoolbook_linear(const Poly& a, const Poly& b) {
  require_same_modulus(a, b);
  const std::size_t na = a.coeffs.size();
  const std::size_t nb = b.coeffs.size();
  const std::uint64_t q = a.ring.q();
  std::vector<u128> acc(na + nb - 1, 0);
  for (std::size_t i = 0; i < na; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < nb; ++j) {
      acc[i + j] += static_cast<u128>(a.coeffs[i]) * b.coeffs[j];
    }
  }
  std::vector<Residue> out(acc.size());
  for (std::size_t k = 0; k < acc.size(); ++k) {
    out[k] = static_cast<Residue>(acc[k] % q);
  }
  return out;
}

Poly schoolbook_cyclic(const Poly& a, const Poly& b) {
  require_same_modulus(a, b);
  NTTKIT_REQUIRE(a.ring == b.ring && a.ring.form() == RingForm::kXnMinus1,
          ErrorCode::kFormMismatch, "cyclic oracle needs two x^n - 1 operands");
  return wrapped_oracle(a, b, false);
}

Poly schoolbook_nwc(const Poly& a, const Poly& b) {
  require_same_modulus(a, b);
  NTTKIT_REQUIRE(a.ring == b.ring && a.ring.form() == RingForm::kXnPlus1,
          ErrorCode::kFormMismatch,
          "negacyclic oracle needs two x^n + 1 operands");
  return wrapped_oracle(a, b, true);
}

Poly schoolbook_multiply(const Poly& a, const Poly& b) {
  NTTKIT_REQUIRE(a.ring == b.ring, ErrorCode::kRingMismatch,
          "operands live in different rings");
  if (a.ring.form() == RingForm::kXnMinus1) return schoolbook_cyclic(a, b);
  if (a.ring.form() == RingForm::kXnPlus1) return schoolbook_nwc(a, b);
  // Long division by the monic phi, on its own arithmetic.
  std::vector<Residue> c = schoolbook_linear(a, b);
  const std::size_t n = a.ring.n();
  const std::uint64_t q = a.ring.q();
  const auto& phi = a.ring.phi();
  for (std::size_t k = c.size(); k-- > n;) {
    const Residue lead = c[k];
    if (lead == 0) continue;
    c[k] = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto t = static_cast<Residue>(static_cast<u128>(lead) * phi[i] % q);
      Residue& d = c[k - n + i];
      d = d >= t ? d - t : d + q - t;
    }
  }
  c.resize(n);
  return Poly(a.ring, std::move(c));
}

Poly reduce_mod_phi(std::span<const Residue> c, const RingSpec& ring) {
  const Modulus& m = ring.modulus();
  const std::size_t n = ring.n();
  std::vector<Residue> r(c.begin(), c.end());
  for (auto& x : r) x = m.reduce(x);
  if (r.size() < n) r.resize(n, 0);
  const auto& phi = ring.phi();
  std::vector<std::size_t> taps;
  for (std::size_t i = 0; i < n; ++i) {
    if (phi[i] != 0) taps.push_back(i);
  }
  for (std::size_t k = r.size(); k-- > n;) {
    const Residue lead = r[k];
    if (lead == 0) continue;
    r[k] = 0;
    // x^k = x^(k-n) * (x^n) and x^n = -sum phi_i x^i.
    for (std::size_t i : taps) {
      r[k - n + i] = m.sub(r[k - n + i], m.mul(lead, phi[i]));
    }
  }
  r.resize(n);
  return Poly(ring, std::move(r));
}

void basecase_mul_into(std::span<const Residue> u, std::span<const Residue> v,
                       Residue gamma, const Modulus& m, bool karatsuba,
                       std::span<Residue> out, std::span<Residue> scratch,
                       bool accumulate) {
  const std::size_t w = u.size();
  NTTKIT_REQUIRE(v.size() == w && out.size() == w && scratch.size() >= 3 * w,
          ErrorCode::kLengthMismatch, "leaf operands differ in length");
  if (w == 1) {
    const Residue p = m.mul(u[0], v[0]);
    out[0] = accumulate ? m.add(out[0], p) : p;
    return;
  }
  std::span<Residue> full = scratch.subspan(0, 2 * w - 1);
  std::fill(full.begin(), full.end(), 0);
  if (!karatsuba) {
    for (std::size_t i = 0; i < w; ++i) {
      for (std::size_t j = 0; j < w; ++j) {
        full[i + j] = m.add(full[i + j], m.mul(u[i], v[j]));
      }
    }
  } else {
    std::span<Residue> diag = scratch.subspan(2 * w - 1, w);
    for (std::size_t i = 0; i < w; ++i) {
      diag[i] = m.mul(u[i], v[i]);
      full[2 * i] = m.add(full[2 * i], diag[i]);
    }
    for (std::size_t i = 0; i < w; ++i) {
      for (std::size_t j = i + 1; j < w; ++j) {
        Residue t = m.mul(m.add(u[i], u[j]), m.add(v[i], v[j]));
        t = m.sub(m.sub(t, diag[i]), diag[j]);
        full[i + j] = m.add(full[i + j], t);
      }
    }
  }
  for (std::size_t k = 2 * w - 2; k >= w; --k) {
    full[k - w] = m.add(full[k - w], m.mul(full[k], gamma));
  }
  for (std::size_t i = 0; i < w; ++i) {
    out[i] = accumulate ? m.add(out[i], full[i]) : full[i];
  }
}

std::vector<Residue> basecase_mul(std::span<const Residue> u,
                                  std::span<const Residue> v, Residue gamma,
                                  const Modulus& m, bool karatsuba) {
  NTTKIT_REQUIRE(u.size() == v.size() && !u.empty(), ErrorCode::kLengthMismatch,
          "leaf operands differ in length");
  std::vector<Residue> out(u.size());
  std::vector<Residue> scratch(3 * u.size());
  basecase_mul_into(u, v, gamma, m, karatsuba, out, scratch);
  return out;
}

NttDomainPoly pointwise_mul(const NttDomainPoly& a, const NttDomainPoly& b,
                            const TwiddleTable& forward_table, bool karatsuba) {
  NTTKIT_REQUIRE(a.spec == b.spec && a.ring == b.ring &&
              a.leaf_degree == b.leaf_degree,
          ErrorCode::kSpecMismatch,
          "pointwise product of values from different transforms");
  NTTKIT_REQUIRE(forward_table.modulus() == a.ring.modulus(),
          ErrorCode::kModulusMismatch, "table modulus differs from the ring");
  const Modulus& m = a.ring.modulus();
  const std::size_t n = a.values.size();
  const std::size_t w = a.leaf_degree;
  NttDomainPoly c{std::vector<Residue>(n), a.spec, a.ring, w};
  std::vector<Residue> scratch(3 * w);
  const std::span<const Residue> av(a.values);
  const std::span<const Residue> bv(b.values);
  for (std::size_t k = 0; k < n / w; ++k) {
    const Residue gamma = w == 1 ? 0 : leaf_gamma(forward_table, a.spec, n, k);
    basecase_mul_into(av.subspan(k * w, w), bv.subspan(k * w, w), gamma, m,
                      karatsuba, std::span(c.values).subspan(k * w, w),
                      scratch);
  }
  return c;
}

NttDomainPoly domain_add(const NttDomainPoly& a, const NttDomainPoly& b) {
  NTTKIT_REQUIRE(a.spec == b.spec && a.ring == b.ring, ErrorCode::kSpecMismatch,
          "adding values from different transforms");
  NttDomainPoly c = a;
  const Modulus& m = a.ring.modulus();
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    c.values[i] = m.add(a.values[i], b.values[i]);
  }
  return c;
}

NttDomainPoly domain_sub(const NttDomainPoly& a, const NttDomainPoly& b) {
  NTTKIT_REQUIRE(a.spec == b.spec && a.ring == b.ring, ErrorCode::kSpecMismatch,
          "subtracting values from different transforms");
  NttDomainPoly c = a;
  const Modulus& m = a.ring.modulus();
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    c.values[i] = m.sub(a.values[i], b.values[i]);
  }
  return c;
}

namespace {

ConvKind conv_for(const RingSpec& ring) {
  NTTKIT_REQUIRE(ring.form() == RingForm::kXnMinus1 ||
              ring.form() == RingForm::kXnPlus1,
          ErrorCode::kFormMismatch,
          "transform plans need x^n - 1 or x^n + 1, got " + ring.describe());
  return ring.form() == RingForm::kXnMinus1 ? ConvKind::kCyclic
                                            : ConvKind::kNegacyclic;
}

IndexOrder flip(IndexOrder o) {
  return o == IndexOrder::kNatural ? IndexOrder::kBitReversed
                                   : IndexOrder::kNatural;
}

TransformSpec make_spec(const RingSpec& ring, unsigned beta, Direction d,
                        Butterfly b, IndexOrder in,
                        const TransformOptions& o) {
  TransformSpec s{conv_for(ring), b, d, in, flip(in), beta};
  if (s.conv == ConvKind::kNegacyclic) s.psi = o.psi;
  s.scaling = o.scaling;
  s.validate();
  return s;
}

}  // namespace

TransformPlan::TransformPlan(const RingSpec& ring, unsigned beta,
                             const TransformOptions& options)
    : ring_(ring),
      forward_spec_(make_spec(ring, beta, Direction::kForward,
                              options.forward_butterfly, options.forward_in,
                              options)),
      inverse_spec_(make_spec(ring, beta, Direction::kInverse,
                              options.inverse_butterfly, options.inverse_in,
                              options)),
      forward_table_(make_transform_table(forward_spec_, ring.n(),
                                          ring.modulus(), false)),
      inverse_table_(make_transform_table(inverse_spec_, ring.n(),
                                          ring.modulus(), true)),
      karatsuba_(options.karatsuba_leaves) {}

NttDomainPoly TransformPlan::forward(const Poly& a) const {
  NTTKIT_REQUIRE(a.ring == ring_, ErrorCode::kRingMismatch,
          "operand ring " + a.ring.describe() + " differs from the plan ring " +
              ring_.describe());
  if (forward_spec_.in_order == IndexOrder::kNatural) {
    return ntt_forward(a, forward_table_, forward_spec_);
  }
  Poly r = a;
  reorder_in_place(r.coeffs, std::size_t{1} << beta());
  return ntt_forward(r, forward_table_, forward_spec_);
}

Poly TransformPlan::inverse(const NttDomainPoly& a_hat) const {
  Poly out = [&] {
    if (a_hat.spec.out_order == inverse_spec_.in_order) {
      return ntt_inverse(a_hat, inverse_table_, inverse_spec_);
    }
    NttDomainPoly r = a_hat;
    reorder_in_place(r.values, r.leaf_degree);
    r.spec.out_order = flip(r.spec.out_order);
    return ntt_inverse(r, inverse_table_, inverse_spec_);
  }();
  if (inverse_spec_.out_order == IndexOrder::kBitReversed) {
    reorder_in_place(out.coeffs, std::size_t{1} << beta());
  }
  return out;
}

NttDomainPoly TransformPlan::pointwise(const NttDomainPoly& a,
                                       const NttDomainPoly& b) const {
  NTTKIT_REQUIRE(a.spec == forward_spec_, ErrorCode::kSpecMismatch,
          "values were not produced by this plan");
  return pointwise_mul(a, b, forward_table_, karatsuba_);
}

Poly ntt_multiply(const Poly& a, const Poly& b, const TransformPlan& plan) {
  return plan.inverse(plan.pointwise(plan.forward(a), plan.forward(b)));
}

}  // namespace nttkit
