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

#include "nttkit/transforms.hpp"

#include <string>

namespace nttkit {

namespace {

std::uint32_t reverse32(std::uint32_t v) {
  v = ((v >> 1) & 0x55555555u) | ((v & 0x55555555u) << 1);
  v = ((v >> 2) & 0x33333333u) | ((v & 0x33333333u) << 2);
  v = ((v >> 4) & 0x0F0F0F0Fu) | ((v & 0x0F0F0F0Fu) << 4);
  v = ((v >> 8) & 0x00FF00FFu) | ((v & 0x00FF00FFu) << 8);
  return (v >> 16) | (v << 16);
}

// Reverses the low `bits` bits of x.
std::size_t rev_bits(std::size_t x, unsigned bits) {
  if (bits == 0) return 0;
  return reverse32(static_cast<std::uint32_t>(x)) >> (32 - bits);
}

std::string order_tag(IndexOrder o) {
  return o == IndexOrder::kNatural ? "no" : "bo";
}

struct NullObserver {
  static constexpr bool kActive = false;
  void butterfly(const ButterflyEvent&) {}
  void stage(unsigned, unsigned, std::span<const Residue>) {}
};

struct ForwardingObserver {
  static constexpr bool kActive = true;
  TransformObserver* target;
  void butterfly(const ButterflyEvent& e) { target->on_butterfly(e); }
  void stage(unsigned s, unsigned l, std::span<const Residue> v) {
    target->on_stage(s, l, v);
  }
};

struct Shape {
  std::size_t blocks;  // n / 2^beta
  std::size_t width;   // 2^beta
  unsigned levels;     // log2(blocks)
};

enum class PairOp { kCt, kGs, kCtHalf, kGsHalf };

// One stage of the tree at `level`: pairs of logical blocks (x, x + m) with
// m = blocks >> (level + 1), grouped in runs of 2m. When `relabeled`, logical
// block x lives at physical block bitrev(x). Twiddle exponents come either
// from the group index (tree flows) or from the offset inside the group
// (twisted flows).
template <PairOp kOp, class Obs, class GroupExp, class OffsetExp>
void run_stage_op(std::span<Residue> x, const Shape& s, const TwiddleTable& tw,
                  unsigned stage, unsigned level, bool relabeled, bool by_group,
                  GroupExp group_exp, OffsetExp offset_exp, Obs& obs) {
  const Modulus& m = tw.modulus();
  const std::size_t half = s.blocks >> (level + 1);
  const std::size_t groups = std::size_t{1} << level;
  const std::size_t w = s.width;
  for (std::size_t g = 0; g < groups; ++g) {
    std::uint64_t exp = by_group ? group_exp(g) : 0;
    Residue z = by_group ? tw.power(exp) : 0;
    for (std::size_t j = 0; j < half; ++j) {
      if (!by_group) {
        exp = offset_exp(j);
        z = tw.power(exp);
      }
      const std::size_t lx = g * 2 * half + j;
      const std::size_t pa = relabeled ? rev_bits(lx, s.levels) : lx;
      const std::size_t pb = relabeled ? rev_bits(lx + half, s.levels) : lx + half;
      Residue* a = x.data() + pa * w;
      Residue* b = x.data() + pb * w;
      for (std::size_t l = 0; l < w; ++l) {
        const Residue u = a[l];
        const Residue v = b[l];
        if constexpr (kOp == PairOp::kCt) {
          const Residue t = m.mul_raw(v, z);
          a[l] = m.add_raw(u, t);
          b[l] = m.sub_raw(u, t);
        } else if constexpr (kOp == PairOp::kGs) {
          a[l] = m.add_raw(u, v);
          b[l] = m.mul_raw(m.sub_raw(u, v), z);
        } else if constexpr (kOp == PairOp::kCtHalf) {
          const Residue t = m.mul_raw(v, z);
          a[l] = m.half_raw(m.add_raw(u, t));
          b[l] = m.half_raw(m.sub_raw(u, t));
        } else {
          a[l] = m.half_raw(m.add_raw(u, v));
          b[l] = m.half_raw(m.mul_raw(m.sub_raw(u, v), z));
        }
      }
      if constexpr (Obs::kActive) {
        obs.butterfly(ButterflyEvent{stage, level, pa, pb, exp, z});
      }
    }
  }
  // Every lane did one multiplication, one addition and one subtraction;
  // the halving forms add two halvings, counted as additions.
  if (OpCounter* c = detail::active_counter) {
    const std::uint64_t lanes = groups * half * w;
    const bool halving = kOp == PairOp::kCtHalf || kOp == PairOp::kGsHalf;
    c->mults += lanes;
    c->adds += lanes * (halving ? 3 : 1);
    c->subs += lanes;
  }
  if constexpr (Obs::kActive) obs.stage(stage, level, x);
}

template <class Obs, class GroupExp, class OffsetExp>
void run_stage(std::span<Residue> x, const Shape& s, const TwiddleTable& tw,
               unsigned stage, unsigned level, bool relabeled, bool by_group,
               GroupExp group_exp, OffsetExp offset_exp, PairOp op, Obs& obs) {
  switch (op) {
    case PairOp::kCt:
      return run_stage_op<PairOp::kCt>(x, s, tw, stage, level, relabeled,
                                       by_group, group_exp, offset_exp, obs);
    case PairOp::kGs:
      return run_stage_op<PairOp::kGs>(x, s, tw, stage, level, relabeled,
                                       by_group, group_exp, offset_exp, obs);
    case PairOp::kCtHalf:
      return run_stage_op<PairOp::kCtHalf>(x, s, tw, stage, level, relabeled,
                                           by_group, group_exp, offset_exp, obs);
    case PairOp::kGsHalf:
      return run_stage_op<PairOp::kGsHalf>(x, s, tw, stage, level, relabeled,
                                           by_group, group_exp, offset_exp, obs);
  }
}

template <class Obs>
void run_transform(std::span<Residue> x, const TwiddleTable& tw,
                   const TransformSpec& spec, Obs& obs) {
  const std::size_t n = x.size();
  const Shape s{n >> spec.beta, std::size_t{1} << spec.beta,
                log2_exact(n >> spec.beta)};
  const Modulus& m = tw.modulus();
  const std::uint64_t order = tw.order();
  const bool merged_nwc =
      spec.conv == ConvKind::kNegacyclic && spec.psi == PsiMode::kMerged;
  const bool separate_nwc =
      spec.conv == ConvKind::kNegacyclic && spec.psi == PsiMode::kSeparate;
  // Exponent of the cyclic root omega (order `blocks`) in table units.
  const std::uint64_t omega_step = order / s.blocks;
  const auto logical = [&](std::size_t k, IndexOrder o) {
    return o == IndexOrder::kBitReversed ? rev_bits(k, s.levels) : k;
  };
  const auto tree_exp = [&](unsigned level) {
    return [&, level](std::size_t g) -> std::uint64_t {
      if (merged_nwc) return rev_bits((std::size_t{1} << level) + g, s.levels);
      return rev_bits(2 * g, s.levels) * omega_step;
    };
  };
  const auto twist_exp = [&](unsigned level) {
    return [&, level](std::size_t j) -> std::uint64_t {
      return (static_cast<std::uint64_t>(j) << level) * omega_step;
    };
  };
  const auto scale_blocks = [&](auto factor_of) {
    for (std::size_t k = 0; k < s.blocks; ++k) {
      const Residue f = factor_of(k);
      for (std::size_t l = 0; l < s.width; ++l) {
        x[k * s.width + l] = m.mul(x[k * s.width + l], f);
      }
    }
  };

  if (spec.direction == Direction::kForward) {
    if (separate_nwc) {
      scale_blocks([&](std::size_t k) {
        return tw.power(logical(k, spec.in_order));
      });
    }
    const bool relabeled = spec.in_order == IndexOrder::kBitReversed;
    const bool ct = spec.butterfly == Butterfly::kCooleyTukey;
    for (unsigned t = 0; t < s.levels; ++t) {
      run_stage(x, s, tw, t, t, relabeled, ct, tree_exp(t), twist_exp(t),
                ct ? PairOp::kCt : PairOp::kGs, obs);
    }
    return;
  }

  const bool halving = spec.scaling == Scaling::kPerLevelHalving;
  const bool relabeled = spec.in_order == IndexOrder::kNatural;
  const bool gs = spec.butterfly == Butterfly::kGentlemanSande;
  const PairOp op = gs ? (halving ? PairOp::kGsHalf : PairOp::kGs)
                       : (halving ? PairOp::kCtHalf : PairOp::kCt);
  for (unsigned i = 0; i < s.levels; ++i) {
    const unsigned t = s.levels - 1 - i;
    run_stage(x, s, tw, i, t, relabeled, gs, tree_exp(t), twist_exp(t), op,
              obs);
  }
  if (!halving) {
    const Residue scale = m.inv(m.reduce(s.blocks));
    scale_blocks([&](std::size_t) { return scale; });
  }
  if (separate_nwc) {
    scale_blocks([&](std::size_t k) {
      return tw.power(logical(k, spec.out_order));
    });
  }
}

void check_length(std::size_t n, const TransformSpec& spec) {
  NTTKIT_REQUIRE(is_power_of_two(n), ErrorCode::kParameterCondition,
          "transform length " + std::to_string(n) + " is not a power of two");
  NTTKIT_REQUIRE(n == 1 || spec.beta < log2_exact(n), ErrorCode::kParameterCondition,
          "beta must be below log2(n)");
}

}  // namespace

void TransformSpec::validate() const {
  NTTKIT_REQUIRE(in_order != out_order, ErrorCode::kSpecViolation,
          "input and output orderings must differ");
  if (conv == ConvKind::kNegacyclic && psi == PsiMode::kMerged) {
    if (direction == Direction::kForward) {
      NTTKIT_REQUIRE(butterfly == Butterfly::kCooleyTukey, ErrorCode::kSpecViolation,
              "merged negacyclic forward transform needs CT butterflies");
    } else {
      NTTKIT_REQUIRE(butterfly == Butterfly::kGentlemanSande,
              ErrorCode::kSpecViolation,
              "merged negacyclic inverse transform needs GS butterflies");
    }
  }
  NTTKIT_REQUIRE(conv == ConvKind::kNegacyclic || psi == PsiMode::kMerged,
          ErrorCode::kSpecViolation, "separate psi mode is negacyclic only");
}

std::string TransformSpec::name() const {
  std::string s = direction == Direction::kForward ? "NTT" : "INTT";
  if (conv == ConvKind::kNegacyclic) {
    s += psi == PsiMode::kMerged ? "^psi" : "^psi-sep";
  }
  s += butterfly == Butterfly::kCooleyTukey ? "[CT," : "[GS,";
  s += order_tag(in_order) + "->" + order_tag(out_order) + "]";
  if (beta != 0) s += "(beta=" + std::to_string(beta) + ")";
  if (scaling == Scaling::kPerLevelHalving) s += "(halving)";
  return s;
}

std::vector<TransformSpec> standard_variants(unsigned beta) {
  std::vector<TransformSpec> out;
  const IndexOrder orders[] = {IndexOrder::kNatural, IndexOrder::kBitReversed};
  for (Direction d : {Direction::kForward, Direction::kInverse}) {
    for (Butterfly b : {Butterfly::kCooleyTukey, Butterfly::kGentlemanSande}) {
      for (IndexOrder in : orders) {
        const IndexOrder out_o = in == IndexOrder::kNatural
                                     ? IndexOrder::kBitReversed
                                     : IndexOrder::kNatural;
        out.push_back({ConvKind::kCyclic, b, d, in, out_o, beta});
      }
    }
  }
  for (IndexOrder in : orders) {
    const IndexOrder out_o = in == IndexOrder::kNatural
                                 ? IndexOrder::kBitReversed
                                 : IndexOrder::kNatural;
    out.push_back({ConvKind::kNegacyclic, Butterfly::kCooleyTukey,
                   Direction::kForward, in, out_o, beta});
    out.push_back({ConvKind::kNegacyclic, Butterfly::kGentlemanSande,
                   Direction::kInverse, in, out_o, beta});
  }
  return out;
}

std::vector<std::pair<TransformSpec, TransformSpec>> standard_pairings(
    unsigned beta) {
  std::vector<std::pair<TransformSpec, TransformSpec>> out;
  const auto all = standard_variants(beta);
  for (const auto& f : all) {
    if (f.direction != Direction::kForward) continue;
    for (const auto& i : all) {
      if (i.direction == Direction::kInverse && i.conv == f.conv) {
        out.emplace_back(f, i);
      }
    }
  }
  return out;
}

std::uint64_t table_order(const TransformSpec& spec, std::size_t n) {
  const std::uint64_t blocks = n >> spec.beta;
  return spec.conv == ConvKind::kCyclic ? blocks : 2 * blocks;
}

StorageOrder preferred_storage(const TransformSpec& spec) {
  const bool tree = (spec.direction == Direction::kForward) ==
                    (spec.butterfly == Butterfly::kCooleyTukey);
  return tree ? StorageOrder::kBitReversed : StorageOrder::kNatural;
}

TwiddleTable make_transform_table(const TransformSpec& spec, std::size_t n,
                                  const Modulus& m, bool inverse) {
  check_length(n, spec);
  const std::uint64_t k = table_order(spec, n);
  const Residue root = find_root(k, m, RootKind::kPrimitive);
  return build_twiddles(root, k, m, preferred_storage(spec), inverse);
}

Residue leaf_gamma(const TwiddleTable& forward_table,
                   const TransformSpec& forward_spec, std::size_t n,
                   std::size_t block) {
  NTTKIT_REQUIRE(!forward_table.inverse(), ErrorCode::kSpecMismatch,
          "leaf constants come from the forward table");
  const std::size_t blocks = n >> forward_spec.beta;
  const unsigned levels = log2_exact(blocks);
  const std::size_t idx = forward_spec.out_order == IndexOrder::kBitReversed
                              ? rev_bits(block, levels)
                              : block;
  if (forward_spec.conv == ConvKind::kNegacyclic) {
    return forward_table.power(2 * idx + 1);
  }
  return forward_table.power(idx * (forward_table.order() / blocks));
}

std::pair<Residue, Residue> butterfly_ct(Residue u, Residue v, Residue w,
                                         const Modulus& m) {
  const Residue t = m.mul(v, w);
  return {m.add(u, t), m.sub(u, t)};
}

std::pair<Residue, Residue> butterfly_gs(Residue u, Residue v, Residue w,
                                         const Modulus& m) {
  return {m.add(u, v), m.mul(m.sub(u, v), w)};
}

std::pair<Residue, Residue> butterfly_gs_half(Residue u, Residue v, Residue w,
                                              const Modulus& m) {
  NTTKIT_REQUIRE(m.value() % 2 == 1, ErrorCode::kParameterCondition,
          "halving needs an odd modulus");
  return {m.half(m.add(u, v)), m.half(m.mul(m.sub(u, v), w))};
}

void transform_in_place(std::span<Residue> values, const TwiddleTable& table,
                        const TransformSpec& spec, TransformObserver* observer) {
  spec.validate();
  const std::size_t n = values.size();
  check_length(n, spec);
  NTTKIT_REQUIRE(table.order() == table_order(spec, n), ErrorCode::kOrderMismatch,
          "twiddle table order " + std::to_string(table.order()) +
              " does not fit n=" + std::to_string(n) +
              ", beta=" + std::to_string(spec.beta));
  NTTKIT_REQUIRE(table.inverse() == (spec.direction == Direction::kInverse),
          ErrorCode::kOrderMismatch,
          "forward transforms need a forward table and vice versa");
  if (spec.scaling == Scaling::kPerLevelHalving) {
    NTTKIT_REQUIRE(table.modulus().value() % 2 == 1, ErrorCode::kParameterCondition,
            "halving needs an odd modulus");
  }
  if (detail::active_counter != nullptr) {
    auto& c = *detail::active_counter;
    ++(spec.direction == Direction::kForward ? c.forward_transforms
                                             : c.inverse_transforms);
  }
  if (n == 1) return;
  if (observer == nullptr) {
    NullObserver obs;
    run_transform(values, table, spec, obs);
  } else {
    ForwardingObserver obs{observer};
    run_transform(values, table, spec, obs);
  }
}

void reorder_in_place(std::span<Residue> values, std::size_t block) {
  NTTKIT_REQUIRE(block >= 1 && values.size() % block == 0,
          ErrorCode::kLengthMismatch, "block size must divide the length");
  const std::size_t blocks = values.size() / block;
  const unsigned bits = log2_exact(blocks);
  for (std::size_t i = 0; i < blocks; ++i) {
    const std::size_t j = rev_bits(i, bits);
    if (i < j) {
      for (std::size_t l = 0; l < block; ++l) {
        std::swap(values[i * block + l], values[j * block + l]);
      }
    }
  }
}

std::vector<Residue> reorder(std::span<const Residue> values,
                             ReorderDirection /*direction*/,
                             std::size_t block) {
  std::vector<Residue> out(values.begin(), values.end());
  reorder_in_place(out, block);
  return out;
}

NttDomainPoly ntt_forward(const Poly& a, const TwiddleTable& table,
                          const TransformSpec& spec) {
  NTTKIT_REQUIRE(spec.direction == Direction::kForward, ErrorCode::kSpecViolation,
          "ntt_forward needs a forward spec");
  const RingForm want = spec.conv == ConvKind::kCyclic ? RingForm::kXnMinus1
                                                        : RingForm::kXnPlus1;
  NTTKIT_REQUIRE(a.ring.form() == want, ErrorCode::kFormMismatch,
          "ring " + a.ring.describe() + " does not match the transform kind");
  NTTKIT_REQUIRE(a.ring.modulus() == table.modulus(), ErrorCode::kModulusMismatch,
          "table modulus differs from the ring modulus");
  NttDomainPoly out{a.coeffs, spec, a.ring, std::size_t{1} << spec.beta};
  transform_in_place(out.values, table, spec);
  return out;
}

Poly ntt_inverse(const NttDomainPoly& a_hat, const TwiddleTable& inverse_table,
                 const TransformSpec& spec) {
  NTTKIT_REQUIRE(spec.direction == Direction::kInverse, ErrorCode::kSpecViolation,
          "ntt_inverse needs an inverse spec");
  spec.validate();
  NTTKIT_REQUIRE(a_hat.spec.conv == spec.conv && a_hat.spec.beta == spec.beta &&
              a_hat.spec.psi == spec.psi,
          ErrorCode::kSpecMismatch,
          spec.name() + " cannot invert " + a_hat.spec.name());
  NTTKIT_REQUIRE(a_hat.spec.out_order == spec.in_order, ErrorCode::kSpecMismatch,
          "domain ordering does not match the inverse input ordering");
  NTTKIT_REQUIRE(a_hat.ring.modulus() == inverse_table.modulus(),
          ErrorCode::kRingMismatch, "table modulus differs from the ring");
  Poly out(a_hat.ring, a_hat.values);
  transform_in_place(out.coeffs, inverse_table, spec);
  return out;
}

}  // namespace nttkit
