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

#include "nttkit/embed.hpp"

#include <algorithm>
#include <sstream>
#include <string>

namespace nttkit {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t rev_index(std::size_t x, std::size_t count) {
  return static_cast<std::size_t>(bitrev(x, count));
}

// out = t^e * in in t^len + 1.
void rotate_into(const Residue* in, Residue* out, std::size_t len,
                 std::size_t e, const Modulus& m) {
  e %= 2 * len;
  const bool flip = e >= len;
  if (flip) e -= len;
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t d = i + e;
    const bool wraps = d >= len;
    out[wraps ? d - len : d] = (wraps != flip) ? m.neg(in[i]) : in[i];
  }
}

std::vector<Residue> schoolbook_negacyclic(std::span<const Residue> u,
                                           std::span<const Residue> v,
                                           const Modulus& m) {
  const std::size_t len = u.size();
  std::vector<Residue> out(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = 0; j < len; ++j) {
      const Residue p = m.mul(u[i], v[j]);
      const std::size_t k = i + j;
      if (k < len) {
        out[k] = m.add(out[k], p);
      } else {
        out[k - len] = m.sub(out[k - len], p);
      }
    }
  }
  return out;
}

// Product of two length-2mn negacyclic vectors: elements of y^(2n) + 1
// indexed by x-degree, cyclic length-2n transform in x with root y^2.
std::vector<Residue> nussbaumer_core(std::span<const Residue> a,
                                     std::span<const Residue> b,
                                     std::size_t m, std::size_t n,
                                     const Modulus& mod) {
  const std::size_t len = 2 * n;    // element length
  const std::size_t count = 2 * n;  // transform length
  std::vector<Residue> ea(count * len, 0), eb(count * len, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < len; ++j) {
      ea[i * len + j] = a[i + m * j];
      eb[i * len + j] = b[i + m * j];
    }
  }
  detail::ring_transform(ea, count, len, 2, false, mod);
  detail::ring_transform(eb, count, len, 2, false, mod);
  std::span<const Residue> sa(ea), sb(eb);
  for (std::size_t i = 0; i < count; ++i) {
    const auto p = negacyclic_product(sa.subspan(i * len, len),
                                      sb.subspan(i * len, len), mod);
    std::copy(p.begin(), p.end(), ea.begin() + i * len);
  }
  detail::ring_transform(ea, count, len, 2, true, mod);
  // x^t = x^(t mod m) * y^(t / m).
  std::vector<Residue> out(2 * m * n, 0);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t i = t % m;
    const std::size_t s = t / m;
    for (std::size_t j = 0; j < len; ++j) {
      const Residue c = ea[t * len + j];
      if (c == 0) continue;
      std::size_t e = (j + s) % (2 * len);
      const bool negate = e >= len;
      if (negate) e -= len;
      Residue& d = out[i + m * e];
      d = negate ? mod.sub(d, c) : mod.add(d, c);
    }
  }
  return out;
}

using InnerProduct = std::vector<Residue> (*)(std::span<const Residue>,
                                              std::span<const Residue>,
                                              const Modulus&,
                                              const step::Nussbaumer*);

std::vector<Residue> inner_product(std::span<const Residue> u,
                                   std::span<const Residue> v,
                                   const Modulus& mod,
                                   const step::Nussbaumer* shape) {
  if (shape == nullptr) return negacyclic_product(u, v, mod);
  return nussbaumer_core(u, v, shape->m, shape->n, mod);
}

// Product of two length-2mn cyclic vectors: chunks of m in x^(2m) + 1,
// cyclic length-2n transform with root x^(2m/n).
std::vector<Residue> schonhage_core(std::span<const Residue> a,
                                    std::span<const Residue> b, std::size_t m,
                                    std::size_t n, const Modulus& mod,
                                    const step::Nussbaumer* inner) {
  const std::size_t len = 2 * m;
  const std::size_t count = 2 * n;
  std::vector<Residue> ea(count * len, 0), eb(count * len, 0);
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t t = 0; t < m; ++t) {
      ea[j * len + t] = a[m * j + t];
      eb[j * len + t] = b[m * j + t];
    }
  }
  const std::size_t root_exp = 2 * m / n;
  detail::ring_transform(ea, count, len, root_exp, false, mod);
  detail::ring_transform(eb, count, len, root_exp, false, mod);
  std::span<const Residue> sa(ea), sb(eb);
  for (std::size_t j = 0; j < count; ++j) {
    const auto p = inner_product(sa.subspan(j * len, len),
                                 sb.subspan(j * len, len), mod, inner);
    std::copy(p.begin(), p.end(), ea.begin() + j * len);
  }
  detail::ring_transform(ea, count, len, root_exp, true, mod);
  const std::size_t total = 2 * m * n;
  std::vector<Residue> out(total, 0);
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t t = 0; t < len; ++t) {
      Residue& d = out[(m * j + t) % total];
      d = mod.add(d, ea[j * len + t]);
    }
  }
  return out;
}

void check_schonhage_shape(std::size_t total, std::size_t m, std::size_t n,
                           const Modulus& mod) {
  NTTKIT_REQUIRE(m >= 1 && n >= 1 && 2 * m * n == total,
                 ErrorCode::kBadShape,
                 "2*m*n must equal the ring length " + std::to_string(total));
  NTTKIT_REQUIRE(is_power_of_two(m) && is_power_of_two(n),
                 ErrorCode::kBadShape, "m and n must be powers of two");
  NTTKIT_REQUIRE(n <= 2 * m, ErrorCode::kShapeCondition,
                 "Schonhage needs n <= 2m");
  NTTKIT_REQUIRE(mod.value() % 2 == 1, ErrorCode::kParameterCondition,
                 "Schonhage needs an odd modulus");
}

void check_nussbaumer_shape(std::size_t total, std::size_t m, std::size_t n,
                            const Modulus& mod) {
  NTTKIT_REQUIRE(m >= 1 && n >= 1 && 2 * m * n == total,
                 ErrorCode::kBadShape,
                 "2*m*n must equal the ring length " + std::to_string(total));
  NTTKIT_REQUIRE(is_power_of_two(m) && is_power_of_two(n),
                 ErrorCode::kBadShape, "m and n must be powers of two");
  NTTKIT_REQUIRE(n >= m, ErrorCode::kShapeCondition,
                 "Nussbaumer needs n >= m");
  NTTKIT_REQUIRE(mod.value() % 2 == 1, ErrorCode::kParameterCondition,
                 "Nussbaumer needs an odd modulus");
}

}  // namespace

namespace detail {

void ring_transform(std::span<Residue> data, std::size_t count,
                    std::size_t len, std::size_t root_exp, bool inverse,
                    const Modulus& m) {
  const unsigned levels = log2_exact(count);
  std::vector<Residue> tmp(len);
  const std::size_t period = 2 * len;
  auto elem = [&](std::size_t i) { return data.data() + i * len; };
  if (!inverse) {
    for (unsigned t = 0; t < levels; ++t) {
      const std::size_t half = count >> (t + 1);
      for (std::size_t g = 0; g < (std::size_t{1} << t); ++g) {
        const std::size_t e = rev_index(2 * g, count) * root_exp % period;
        for (std::size_t j = 0; j < half; ++j) {
          Residue* u = elem(g * 2 * half + j);
          Residue* v = elem(g * 2 * half + j + half);
          rotate_into(v, tmp.data(), len, e, m);
          for (std::size_t l = 0; l < len; ++l) {
            v[l] = m.sub(u[l], tmp[l]);
            u[l] = m.add(u[l], tmp[l]);
          }
        }
      }
    }
    return;
  }
  for (unsigned r = 0; r < levels; ++r) {
    const unsigned t = levels - 1 - r;
    const std::size_t half = count >> (t + 1);
    for (std::size_t g = 0; g < (std::size_t{1} << t); ++g) {
      const std::size_t e =
          (period - rev_index(2 * g, count) * root_exp % period) % period;
      for (std::size_t j = 0; j < half; ++j) {
        Residue* u = elem(g * 2 * half + j);
        Residue* v = elem(g * 2 * half + j + half);
        for (std::size_t l = 0; l < len; ++l) {
          tmp[l] = m.sub(u[l], v[l]);
          u[l] = m.add(u[l], v[l]);
        }
        rotate_into(tmp.data(), v, len, e, m);
      }
    }
  }
  const Residue scale = m.inv(m.reduce(count));
  for (auto& x : data) x = m.mul(x, scale);
}

}  // namespace detail

std::pair<std::size_t, std::size_t> nussbaumer_shape(std::size_t len) {
  NTTKIT_REQUIRE(is_power_of_two(len) && len >= 4, ErrorCode::kBadShape,
                 "negacyclic length must be a power of two >= 4");
  const unsigned lg = log2_exact(len / 2);
  const std::size_t m = std::size_t{1} << (lg / 2);
  return {m, len / (2 * m)};
}

std::vector<Residue> negacyclic_product(std::span<const Residue> u,
                                        std::span<const Residue> v,
                                        const Modulus& m) {
  NTTKIT_REQUIRE(u.size() == v.size(), ErrorCode::kLengthMismatch,
                 "operand lengths differ");
  if (u.size() <= 8) return schoolbook_negacyclic(u, v, m);
  const auto [sm, sn] = nussbaumer_shape(u.size());
  return nussbaumer_core(u, v, sm, sn, m);
}

std::size_t good_index(unsigned h, unsigned k, std::size_t i, std::size_t j) {
  const std::size_t p = std::size_t{1} << k;
  const std::size_t total = h * p;
  // l = ((2^k)^-1 mod h) 2^k i + (h^-1 mod 2^k) h j mod h 2^k.
  const std::size_t inv_p = h == 1 ? 0 : Modulus(h).inv(p % h);
  const std::size_t inv_h = p == 1 ? 0 : Modulus(p).inv(h % p);
  return (inv_p * p * i + inv_h * h * j) % total;
}

GoodLayout good_map(const Poly& a, unsigned h, unsigned k) {
  const std::size_t p = std::size_t{1} << k;
  NTTKIT_REQUIRE(h % 2 == 1 && a.coeffs.size() == h * p, ErrorCode::kBadShape,
                 "Good's mapping needs odd h and length h*2^k, got h=" +
                     std::to_string(h) + " k=" + std::to_string(k) +
                     " length " + std::to_string(a.coeffs.size()));
  GoodLayout out{h, k, std::vector<std::vector<Residue>>(h, std::vector<Residue>(p))};
  for (std::size_t l = 0; l < h * p; ++l) {
    out.matrix[l % h][l % p] = a.coeffs[l];
  }
  return out;
}

Poly good_unmap(const GoodLayout& layout, const RingSpec& ring) {
  const std::size_t p = std::size_t{1} << layout.k;
  NTTKIT_REQUIRE(ring.n() == layout.h * p && layout.matrix.size() == layout.h,
                 ErrorCode::kBadShape, "layout does not fit the ring");
  Poly out(ring);
  for (std::size_t i = 0; i < layout.h; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      out.coeffs[good_index(layout.h, layout.k, i, j)] = layout.matrix[i][j];
    }
  }
  return out;
}

namespace {

Poly good_with_plan(const Poly& a, const Poly& b, unsigned h, unsigned k,
                    const TransformPlan& rows) {
  const Modulus& mod = a.ring.modulus();
  const std::size_t p = std::size_t{1} << k;
  GoodLayout la = good_map(a, h, k);
  GoodLayout lb = good_map(b, h, k);
  std::vector<NttDomainPoly> ra, rb;
  for (unsigned i = 0; i < h; ++i) {
    ra.push_back(rows.forward(Poly(rows.ring(), la.matrix[i])));
    rb.push_back(rows.forward(Poly(rows.ring(), lb.matrix[i])));
  }
  // Column j: cyclic product of length h.
  std::vector<NttDomainPoly> rc = ra;
  for (auto& r : rc) std::fill(r.values.begin(), r.values.end(), 0);
  for (std::size_t j = 0; j < p; ++j) {
    for (unsigned i1 = 0; i1 < h; ++i1) {
      for (unsigned i2 = 0; i2 < h; ++i2) {
        Residue& d = rc[(i1 + i2) % h].values[j];
        d = mod.add(d, mod.mul(ra[i1].values[j], rb[i2].values[j]));
      }
    }
  }
  for (unsigned i = 0; i < h; ++i) la.matrix[i] = rows.inverse(rc[i]).coeffs;
  return good_unmap(la, a.ring);
}

TransformPlan good_rows_plan(unsigned k, const Modulus& mod) {
  try {
    return TransformPlan(RingSpec::cyclic(std::size_t{1} << k, mod.value()), 0);
  } catch (const NttError& e) {
    if (e.code() == ErrorCode::kNoSuchRoot) {
      fail(ErrorCode::kParameterCondition,
           "modulus " + std::to_string(mod.value()) + " is not 1 mod 2^" +
               std::to_string(k));
    }
    throw;
  }
}

}  // namespace

Poly good_multiply(const Poly& a, const Poly& b, unsigned h, unsigned k) {
  NTTKIT_REQUIRE(a.ring == b.ring, ErrorCode::kRingMismatch,
                 "operands live in different rings");
  NTTKIT_REQUIRE(a.ring.form() == RingForm::kXnMinus1, ErrorCode::kFormMismatch,
                 "Good's trick works in x^n - 1");
  return good_with_plan(a, b, h, k, good_rows_plan(k, a.ring.modulus()));
}

Poly good_multiply(const Poly& a, const Poly& b, unsigned h, unsigned k,
                   std::uint64_t inner_modulus, const LiftOptions& lift) {
  if (inner_modulus == a.ring.q()) return good_multiply(a, b, h, k);
  EmbedChain chain{{step::LiftModulus{inner_modulus, lift.profile},
                    step::Good{h, k}}};
  return EmbedPlan(a.ring, chain).multiply(a, b);
}

Poly schonhage_multiply(const Poly& a, const Poly& b, std::size_t m,
                        std::size_t n) {
  NTTKIT_REQUIRE(a.ring == b.ring, ErrorCode::kRingMismatch,
                 "operands live in different rings");
  NTTKIT_REQUIRE(a.ring.form() == RingForm::kXnMinus1, ErrorCode::kFormMismatch,
                 "Schonhage's trick works in x^n - 1");
  check_schonhage_shape(a.ring.n(), m, n, a.ring.modulus());
  return Poly(a.ring,
              schonhage_core(a.coeffs, b.coeffs, m, n, a.ring.modulus(), nullptr));
}

Poly nussbaumer_multiply(const Poly& a, const Poly& b, std::size_t m,
                         std::size_t n) {
  NTTKIT_REQUIRE(a.ring == b.ring, ErrorCode::kRingMismatch,
                 "operands live in different rings");
  NTTKIT_REQUIRE(a.ring.form() == RingForm::kXnPlus1, ErrorCode::kFormMismatch,
                 "Nussbaumer's trick works in x^n + 1");
  check_nussbaumer_shape(a.ring.n(), m, n, a.ring.modulus());
  return Poly(a.ring, nussbaumer_core(a.coeffs, b.coeffs, m, n, a.ring.modulus()));
}

std::string EmbedChain::describe() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& s : steps) {
    if (!first) os << " -> ";
    first = false;
    std::visit(Overloaded{
                   [&](const step::ZeroPad& p) {
                     os << "ZeroPad(" << p.n << ", " << form_token(p.form) << ")";
                   },
                   [&](const step::LiftModulus& l) { os << "Lift(" << l.big_n << ")"; },
                   [&](const step::Good& g) {
                     os << "Good(h=" << g.h << ", k=" << g.k << ")";
                   },
                   [&](const step::Schonhage& s) {
                     os << "Schonhage(m=" << s.m << ", n=" << s.n << ")";
                   },
                   [&](const step::Nussbaumer& s) {
                     os << "Nussbaumer(m=" << s.m << ", n=" << s.n << ")";
                   },
               },
               s);
  }
  return os.str();
}

EmbedPlan::EmbedPlan(const RingSpec& source, EmbedChain chain)
    : source_(source), chain_(std::move(chain)), working_(source) {
  // Order: [ZeroPad] [LiftModulus] [Good | Schonhage [Nussbaumer] | Nussbaumer]
  std::size_t i = 0;
  const auto& steps = chain_.steps;
  auto mismatch = [&](const std::string& why) {
    fail(ErrorCode::kChainMismatch, chain_.describe() + ": " + why);
  };
  if (i < steps.size() && std::holds_alternative<step::ZeroPad>(steps[i])) {
    pad_ = std::get<step::ZeroPad>(steps[i++]);
  }
  if (i < steps.size() && std::holds_alternative<step::LiftModulus>(steps[i])) {
    lift_ = std::get<step::LiftModulus>(steps[i++]);
  }
  if (i < steps.size() && !std::holds_alternative<step::ZeroPad>(steps[i]) &&
      !std::holds_alternative<step::LiftModulus>(steps[i])) {
    multiplier_ = steps[i++];
  }
  if (i < steps.size() && multiplier_ &&
      std::holds_alternative<step::Schonhage>(*multiplier_) &&
      std::holds_alternative<step::Nussbaumer>(steps[i])) {
    inner_ = std::get<step::Nussbaumer>(steps[i++]);
  }
  if (i != steps.size()) mismatch("steps out of order");

  if (pad_) {
    if (pad_->form != RingForm::kXnMinus1 && pad_->form != RingForm::kXnPlus1) {
      mismatch("padding target must be x^n - 1 or x^n + 1");
    }
    NTTKIT_REQUIRE(pad_->n + 1 >= 2 * source.n(), ErrorCode::kPadTooSmall,
                   "padded length " + std::to_string(pad_->n) +
                       " is below 2n - 1 = " + std::to_string(2 * source.n() - 1));
    working_ = RingSpec(pad_->form, pad_->n, source.q());
  } else if (source.form() != RingForm::kXnMinus1 &&
             source.form() != RingForm::kXnPlus1) {
    mismatch("ring " + source.describe() + " needs a ZeroPad step first");
  }
  if (lift_) {
    check_bound(lift_->big_n, source.n(), source.q(), lift_->profile);
    working_ = working_.with_modulus(lift_->big_n);
  }
  const Modulus& mod = working_.modulus();
  if (!multiplier_) {
    try {
      transform_.emplace(working_, 0);
    } catch (const NttError& e) {
      if (e.code() != ErrorCode::kNoSuchRoot) throw;
      fail(ErrorCode::kParameterCondition,
           "working ring " + working_.describe() + " has no full transform");
    }
    return;
  }
  std::visit(
      Overloaded{
          [&](const step::Good& g) {
            if (working_.form() != RingForm::kXnMinus1) {
              mismatch("Good's trick needs a cyclic working ring");
            }
            if (g.h * (std::size_t{1} << g.k) != working_.n()) {
              mismatch("h*2^k differs from the working length");
            }
            NTTKIT_REQUIRE(g.h % 2 == 1, ErrorCode::kBadShape, "h must be odd");
            transform_.emplace(good_rows_plan(g.k, mod));
          },
          [&](const step::Schonhage& s) {
            if (working_.form() != RingForm::kXnMinus1) {
              mismatch("Schonhage's trick needs a cyclic working ring");
            }
            if (2 * s.m * s.n != working_.n()) {
              mismatch("2mn differs from the working length");
            }
            check_schonhage_shape(working_.n(), s.m, s.n, mod);
            if (inner_) check_nussbaumer_shape(2 * s.m, inner_->m, inner_->n, mod);
          },
          [&](const step::Nussbaumer& s) {
            if (working_.form() != RingForm::kXnPlus1) {
              mismatch("Nussbaumer's trick needs a negacyclic working ring");
            }
            if (2 * s.m * s.n != working_.n()) {
              mismatch("2mn differs from the working length");
            }
            check_nussbaumer_shape(working_.n(), s.m, s.n, mod);
          },
          [&](const auto&) { mismatch("unexpected step"); },
      },
      *multiplier_);
}

Poly EmbedPlan::embed(const Poly& a) const {
  NTTKIT_REQUIRE(a.ring == source_, ErrorCode::kRingMismatch,
                 "operand ring " + a.ring.describe() + " differs from " +
                     source_.describe());
  Poly out(working_);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    out.coeffs[i] = lift_ ? centered_lift(a.coeffs[i], source_.q(), lift_->big_n)
                          : a.coeffs[i];
  }
  return out;
}

Poly EmbedPlan::multiply_working(const Poly& a, const Poly& b) const {
  if (!multiplier_) return ntt_multiply(a, b, *transform_);
  const Modulus& mod = working_.modulus();
  return std::visit(
      Overloaded{
          [&](const step::Good& g) {
            return good_with_plan(a, b, g.h, g.k, *transform_);
          },
          [&](const step::Schonhage& s) {
            return Poly(working_,
                        schonhage_core(a.coeffs, b.coeffs, s.m, s.n, mod,
                                       inner_ ? &*inner_ : nullptr));
          },
          [&](const step::Nussbaumer& s) {
            return Poly(working_,
                        nussbaumer_core(a.coeffs, b.coeffs, s.m, s.n, mod));
          },
          [&](const auto&) -> Poly {
            fail(ErrorCode::kChainMismatch, "unexpected step");
          },
      },
      *multiplier_);
}

Poly EmbedPlan::recover(const Poly& c) const {
  std::vector<Residue> v = c.coeffs;
  if (lift_) {
    for (auto& x : v) x = centered_drop(x, lift_->big_n, source_.q());
  }
  if (!pad_) return Poly(source_, std::move(v));
  return reduce_mod_phi(v, source_);
}

Poly EmbedPlan::multiply(const Poly& a, const Poly& b) const {
  return recover(multiply_working(embed(a), embed(b)));
}

Poly zero_pad_multiply(const Poly& a, const Poly& b, std::size_t padded_n,
                       const EmbedChain& tail) {
  EmbedChain chain{{step::ZeroPad{padded_n, RingForm::kXnMinus1}}};
  chain.steps.insert(chain.steps.end(), tail.steps.begin(), tail.steps.end());
  return general_phi_multiply(a, b, chain);
}

Poly general_phi_multiply(const Poly& a, const Poly& b,
                          const EmbedChain& chain) {
  NTTKIT_REQUIRE(a.ring == b.ring, ErrorCode::kRingMismatch,
                 "operands live in different rings");
  return EmbedPlan(a.ring, chain).multiply(a, b);
}

}  // namespace nttkit
