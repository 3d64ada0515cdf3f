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

#include "nttkit/splitting.hpp"

#include <string>

namespace nttkit {

RingSpec split_ring(const RingSpec& parent, unsigned alpha) {
  NTTKIT_REQUIRE(parent.form() == RingForm::kXnMinus1 ||
                     parent.form() == RingForm::kXnPlus1,
                 ErrorCode::kFormMismatch,
                 "splitting needs x^n - 1 or x^n + 1, got " + parent.describe());
  const std::size_t parts = std::size_t{1} << alpha;
  NTTKIT_REQUIRE(alpha < 20 && parent.n() % parts == 0 && parent.n() / parts >= 1,
                 ErrorCode::kBadAlpha,
                 "2^" + std::to_string(alpha) + " does not divide n=" +
                     std::to_string(parent.n()));
  return RingSpec(parent.form(), parent.n() / parts, parent.q());
}

SplitPoly split(const Poly& a, unsigned alpha) {
  const RingSpec small = split_ring(a.ring, alpha);
  const std::size_t k = std::size_t{1} << alpha;
  SplitPoly s{std::vector<Poly>(k, Poly(small)), alpha, a.ring};
  for (std::size_t l = 0; l < a.coeffs.size(); ++l) {
    s.parts[l % k].coeffs[l / k] = a.coeffs[l];
  }
  return s;
}

Poly unsplit(const SplitPoly& s) {
  const std::size_t k = std::size_t{1} << s.alpha;
  NTTKIT_REQUIRE(s.parts.size() == k, ErrorCode::kBadAlpha,
                 "part count does not match alpha");
  Poly a(s.parent);
  for (std::size_t l = 0; l < a.coeffs.size(); ++l) {
    a.coeffs[l] = s.parts[l % k].coeffs[l / k];
  }
  return a;
}

Poly shift_by_y(const Poly& part) {
  const std::size_t m = part.coeffs.size();
  Poly out(part.ring);
  const Residue top = part.coeffs[m - 1];
  out.coeffs[0] =
      part.ring.form() == RingForm::kXnPlus1 ? part.ring.modulus().neg(top) : top;
  for (std::size_t j = 1; j < m; ++j) out.coeffs[j] = part.coeffs[j - 1];
  return out;
}

namespace {

TransformPlan inner_plan(const RingSpec& parent, unsigned alpha, unsigned beta,
                         bool karatsuba) {
  const RingSpec small = split_ring(parent, alpha);
  TransformOptions o;
  o.karatsuba_leaves = karatsuba;
  try {
    return TransformPlan(small, beta, o);
  } catch (const NttError& e) {
    if (e.code() == ErrorCode::kNoSuchRoot) {
      fail(ErrorCode::kParameterCondition,
           "q=" + std::to_string(parent.q()) + " lacks the roots for alpha=" +
               std::to_string(alpha) + ", beta=" + std::to_string(beta) +
               " at n=" + std::to_string(parent.n()));
    }
    throw;
  }
}

}  // namespace

SplitPlan::SplitPlan(const RingSpec& parent, unsigned alpha, unsigned beta,
                     bool karatsuba_leaves)
    : parent_(parent),
      alpha_(alpha),
      inner_(inner_plan(parent, alpha, beta, karatsuba_leaves)) {
  if (alpha_ > 0) {
    Poly y(inner_.ring());
    if (y.coeffs.size() > 1) {
      y.coeffs[1] = 1;
    } else {
      y = shift_by_y(Poly(inner_.ring(), {1}));
    }
    y_hat_ = inner_.forward(y);
  }
}

Poly SplitPlan::ptntt(const Poly& a, const Poly& b) const {
  NTTKIT_REQUIRE(a.ring == parent_ && b.ring == parent_,
                 ErrorCode::kRingMismatch, "operands are not in the plan ring");
  if (alpha_ == 0) return ntt_multiply(a, b, inner_);
  const std::size_t k = std::size_t{1} << alpha_;
  const SplitPoly sa = split(a, alpha_);
  const SplitPoly sb = split(b, alpha_);
  std::vector<NttDomainPoly> ah, ad, bh;
  for (std::size_t l = 0; l < k; ++l) {
    ah.push_back(inner_.forward(sa.parts[l]));
    // ad[l] is the transform of y * a_l; index 0 is unused.
    ad.push_back(l == 0 ? ah[0] : inner_.forward(shift_by_y(sa.parts[l])));
    bh.push_back(inner_.forward(sb.parts[l]));
  }
  SplitPoly out{{}, alpha_, parent_};
  for (std::size_t i = 0; i < k; ++i) {
    std::optional<NttDomainPoly> acc;
    auto add = [&](const NttDomainPoly& x, const NttDomainPoly& y) {
      NttDomainPoly p = inner_.pointwise(x, y);
      acc = acc ? domain_add(*acc, p) : std::move(p);
    };
    for (std::size_t l = 0; l <= i; ++l) add(ah[l], bh[i - l]);
    for (std::size_t l = i + 1; l < k; ++l) add(ad[l], bh[k + i - l]);
    out.parts.push_back(inner_.inverse(*acc));
  }
  return unsplit(out);
}

Poly SplitPlan::kntt(const Poly& a, const Poly& b) const {
  NTTKIT_REQUIRE(a.ring == parent_ && b.ring == parent_,
                 ErrorCode::kRingMismatch, "operands are not in the plan ring");
  if (alpha_ == 0) return ntt_multiply(a, b, inner_);
  const std::size_t k = std::size_t{1} << alpha_;
  const SplitPoly sa = split(a, alpha_);
  const SplitPoly sb = split(b, alpha_);
  std::vector<NttDomainPoly> ah, bh, diag;
  for (std::size_t l = 0; l < k; ++l) {
    ah.push_back(inner_.forward(sa.parts[l]));
    bh.push_back(inner_.forward(sb.parts[l]));
  }
  for (std::size_t l = 0; l < k; ++l) {
    diag.push_back(inner_.pointwise(ah[l], bh[l]));
  }
  // p[s] = sum over i + j = s of ah[i] * bh[j].
  std::vector<std::optional<NttDomainPoly>> p(2 * k - 1);
  auto add = [&](std::size_t s, NttDomainPoly v) {
    p[s] = p[s] ? domain_add(*p[s], v) : std::move(v);
  };
  for (std::size_t i = 0; i < k; ++i) add(2 * i, diag[i]);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      NttDomainPoly t = inner_.pointwise(domain_add(ah[i], ah[j]),
                                         domain_add(bh[i], bh[j]));
      add(i + j, domain_sub(domain_sub(t, diag[i]), diag[j]));
    }
  }
  SplitPoly out{{}, alpha_, parent_};
  for (std::size_t s = 0; s < k; ++s) {
    NttDomainPoly c = *p[s];
    if (s + k < 2 * k - 1) {
      c = domain_add(c, inner_.pointwise(*y_hat_, *p[s + k]));
    }
    out.parts.push_back(inner_.inverse(c));
  }
  return unsplit(out);
}

Poly ptntt_multiply(const Poly& a, const Poly& b, unsigned alpha) {
  return SplitPlan(a.ring, alpha).ptntt(a, b);
}

Poly kntt_multiply(const Poly& a, const Poly& b, unsigned alpha) {
  return SplitPlan(a.ring, alpha).kntt(a, b);
}

Poly hntt_multiply(const Poly& a, const Poly& b, unsigned alpha,
                   unsigned beta) {
  return SplitPlan(a.ring, alpha, beta, true).kntt(a, b);
}

}  // namespace nttkit
