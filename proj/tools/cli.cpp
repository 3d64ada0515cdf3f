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

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nttkit/errors.hpp"
#include "nttkit/planner.hpp"
#include "nttkit/polyfile.hpp"
#include "nttkit/polymul.hpp"
#include "nttkit/transforms.hpp"

#ifndef NTTKIT_VERSION
#define NTTKIT_VERSION "0.0.0"
#endif

namespace nttkit::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string preset;
  std::string form = "x^n+1";
  std::size_t n = 0;
  std::uint64_t q = 0;
  std::optional<unsigned> beta;
  std::optional<unsigned> alpha;
  std::string strategy;
  int trials = 100;
  std::uint64_t seed = 1;
  bool trace = false;
  bool pretty = false;
  bool allow_bigmod = false;
  std::string file_a;
  std::string file_b;
  std::string output;
};

void add_ring_options(CLI::App* sub, Options& o) {
  sub->add_option("--preset", o.preset, "Scheme preset name");
  sub->add_option("--form", o.form, "Ring form: x^n-1, x^n+1, x^n-x^n/2+1, x^n-x-1");
  sub->add_option("-n", o.n, "Ring degree");
  sub->add_option("-q", o.q, "Coefficient modulus");
  sub->add_option("--beta", o.beta, "Levels cropped from the transform");
  sub->add_option("--alpha", o.alpha, "Splitting rounds");
  sub->add_option("--strategy", o.strategy,
                  "full, incomplete, split-pt, split-k, hntt, bigprime, rns, "
                  "composite, pad, good, schonhage, trinomial");
  sub->add_flag("--allow-bigmod", o.allow_bigmod,
                "Allow lifting to a larger working modulus");
  sub->add_flag("--pretty", o.pretty, "Human-readable output");
}

unsigned thread_count() {
  if (const char* env = std::getenv("NTTKIT_THREADS"); env && *env) {
    const int v = std::atoi(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

struct Resolved {
  std::optional<std::string> preset;
  RingSpec ring;
  NttPlan plan;
};

NttPlan plan_for(const RingSpec& ring, const Options& o) {
  PlanPreferences prefs;
  prefs.allow_bigmod = o.allow_bigmod;
  prefs.alpha = o.alpha;
  prefs.beta = o.beta;
  const RingClass cls = classify(ring);
  const unsigned deficit = cls.deficit;
  const std::string& s = o.strategy;
  if (s.empty()) return make_plan(ring, prefs);
  if (s == "full") return NttPlan(ring, strategy::Full{});
  if (s == "incomplete") {
    return NttPlan(ring, strategy::Incomplete{o.beta.value_or(deficit)});
  }
  if (s == "split-pt" || s == "split-k") {
    return NttPlan(ring, strategy::Split{o.alpha.value_or(deficit),
                                         s == "split-pt" ? strategy::SplitKind::kPt
                                                         : strategy::SplitKind::kK});
  }
  if (s == "hntt") {
    const unsigned alpha = o.alpha.value_or(0);
    return NttPlan(ring, strategy::HNtt{alpha, o.beta.value_or(
                                                   alpha >= deficit ? 0 : deficit - alpha)});
  }
  if (s == "trinomial") return NttPlan(ring, strategy::Trinomial{});
  if (s == "bigprime") prefs.unfriendly = PlanPreferences::Unfriendly::kBigPrime;
  else if (s == "rns") prefs.unfriendly = PlanPreferences::Unfriendly::kRns;
  else if (s == "composite") prefs.unfriendly = PlanPreferences::Unfriendly::kComposite;
  else if (s == "pad") prefs.embedding = PlanPreferences::Embedding::kPad;
  else if (s == "good") prefs.embedding = PlanPreferences::Embedding::kGood;
  else if (s == "schonhage") prefs.embedding = PlanPreferences::Embedding::kSchonhage;
  else fail(ErrorCode::kNoStrategy, "unknown strategy '" + s + "'");
  return make_plan(ring, prefs);
}

Resolved resolve(const Options& o) {
  if (!o.preset.empty()) {
    const Preset& p = preset(o.preset);
    return {p.name, p.ring, p.plan};
  }
  if (o.n == 0 || o.q == 0) {
    throw CLI::ValidationError("ring", "give --preset or both -n and -q");
  }
  const RingSpec ring(parse_form(o.form), o.n, o.q);
  return {std::nullopt, ring, plan_for(ring, o)};
}

Json header(const std::string& command, const Resolved& r) {
  Json j;
  j["command"] = command;
  j["version"] = NTTKIT_VERSION;
  j["preset"] = r.preset ? Json(*r.preset) : Json(nullptr);
  j["ring"] = r.ring.describe();
  j["strategy"] = r.plan.describe();
  return j;
}

Json ops_json(const OpCounter& c) {
  return Json{{"mults", c.mults}, {"adds", c.adds}, {"subs", c.subs}};
}

Poly uniform(const RingSpec& ring, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, ring.q() - 1);
  std::vector<Residue> c(ring.n());
  for (auto& x : c) x = dist(rng);
  return Poly(ring, std::move(c));
}

// Second operand shaped by the plan's operand profile.
Poly profiled(const NttPlan& plan, std::mt19937_64& rng) {
  const OperandProfile& p = plan.profile();
  if (p.kind == OperandProfile::Kind::kFullFull) return uniform(plan.ring(), rng);
  const auto half = static_cast<std::int64_t>(p.mu / 2);
  std::uniform_int_distribution<std::int64_t> dist(-half, half);
  std::vector<std::int64_t> c(plan.ring().n());
  for (auto& x : c) x = dist(rng);
  return Poly::from_signed(plan.ring(), c);
}

int emit(std::ostream& out, const Json& report, bool pretty,
         const std::string& pretty_text, int status) {
  if (pretty) {
    out << pretty_text;
  } else {
    out << report.dump() << "\n";
  }
  return status;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Resolved r = resolve(o);
  const std::size_t trials = static_cast<std::size_t>(std::max(o.trials, 0));
  std::mt19937_64 rng(o.seed);
  std::vector<std::pair<Poly, Poly>> inputs;
  inputs.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Poly a = uniform(r.ring, rng);
    Poly b = profiled(r.plan, rng);
    inputs.emplace_back(std::move(a), std::move(b));
  }
  const unsigned workers =
      std::max(1u, std::min<unsigned>(thread_count(), static_cast<unsigned>(trials)));
  std::vector<OpCounter> counters(workers);
  std::vector<char> ok(trials, 0);
  auto work = [&](unsigned w) {
    for (std::size_t t = w; t < trials; t += workers) {
      Poly c(r.ring);
      {
        ScopedOpCounter scope(counters[w]);
        c = r.plan.multiply(inputs[t].first, inputs[t].second);
      }
      ok[t] = c == schoolbook_multiply(inputs[t].first, inputs[t].second);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  OpCounter total;
  for (const auto& c : counters) {
    total.mults += c.mults;
    total.adds += c.adds;
    total.subs += c.subs;
  }
  const auto passed = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
  const bool pass = passed == trials;
  Json j = header("verify", r);
  j["trials"] = trials;
  j["seed"] = o.seed;
  j["passed"] = passed;
  j["verdict"] = pass ? "pass" : "fail";
  j["ops"] = ops_json(total);
  std::ostringstream text;
  text << "verify " << (r.preset ? *r.preset : r.ring.describe()) << ": "
       << (pass ? "pass" : "FAIL") << " (" << passed << "/" << trials
       << " trials)\n  strategy  " << r.plan.describe() << "\n  mults     "
       << total.mults << "\n";
  return emit(out, j, o.pretty, text.str(), pass ? kExitPass : kExitMismatch);
}

int cmd_count_ops(const Options& o, std::ostream& out) {
  const Resolved r = resolve(o);
  const auto specs = r.plan.transform_specs();
  NTTKIT_REQUIRE(specs && r.plan.has_domain() &&
                     !std::holds_alternative<strategy::Trinomial>(r.plan.strategy()),
                 ErrorCode::kNoStrategy,
                 r.plan.describe() + " has no single radix-2 transform stage");
  const RingSpec domain = r.ring.with_modulus(r.plan.domain_modulus());
  const unsigned beta = specs->first.beta;
  const std::uint64_t n = domain.n();
  const std::uint64_t levels = log2_exact(n) - beta;
  const std::uint64_t half = n / 2 * levels;

  std::mt19937_64 rng(o.seed);
  const Poly a = uniform(domain, rng);
  auto measure = [&](const TransformOptions& opts) {
    const TransformPlan tp(domain, beta, opts);
    OpCounter f, i;
    NttDomainPoly a_hat = [&] {
      ScopedOpCounter scope(f);
      return tp.forward(a);
    }();
    {
      ScopedOpCounter scope(i);
      (void)tp.inverse(a_hat);
    }
    return std::make_pair(f.mults, i.mults);
  };
  Json rows = Json::array();
  bool pass = true;
  std::ostringstream text;
  text << "count-ops " << domain.describe() << " beta=" << beta << "\n";
  auto row = [&](const std::string& name, std::uint64_t got, std::uint64_t want) {
    pass = pass && got == want;
    rows.push_back({{"transform", name}, {"mults", got}, {"expected", want}});
    text << "  " << std::left << std::setw(22) << name << std::right << std::setw(8)
         << got << "  expected " << want << (got == want ? "" : "  MISMATCH") << "\n";
  };
  const auto merged = measure(TransformOptions{});
  row("forward", merged.first, half);
  row("inverse", merged.second, half + n);
  if (domain.form() == RingForm::kXnPlus1 && beta == 0) {
    TransformOptions sep;
    sep.psi = PsiMode::kSeparate;
    const auto s = measure(sep);
    row("forward-separate-psi", s.first, half + n);
    row("inverse-separate-psi", s.second, half + 2 * n);
  }
  Json j = header("count-ops", r);
  j["domain_ring"] = domain.describe();
  j["beta"] = beta;
  j["counts"] = rows;
  j["verdict"] = pass ? "pass" : "fail";
  return emit(out, j, o.pretty, text.str(), pass ? kExitPass : kExitMismatch);
}

int cmd_bench(const Options& o, std::ostream& out) {
  const Resolved r = resolve(o);
  const std::size_t trials = static_cast<std::size_t>(std::max(o.trials, 1));
  std::mt19937_64 rng(o.seed);
  const Poly a = uniform(r.ring, rng);
  const Poly b = profiled(r.plan, rng);
  using Clock = std::chrono::steady_clock;
  auto median_ns = [&](auto&& fn) {
    std::vector<std::int64_t> samples;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto start = Clock::now();
      const Poly c = fn();
      const auto stop = Clock::now();
      if (c.coeffs.empty()) std::abort();
      samples.push_back(
          std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
    }
    std::nth_element(samples.begin(), samples.begin() + samples.size() / 2,
                     samples.end());
    return samples[samples.size() / 2];
  };
  const auto plan_ns = median_ns([&] { return r.plan.multiply(a, b); });
  const auto school_ns = median_ns([&] { return schoolbook_multiply(a, b); });
  const bool faster = plan_ns < school_ns;
  Json j = header("bench", r);
  j["trials"] = trials;
  j["median_ns"] = {{"plan", plan_ns}, {"schoolbook", school_ns}};
  j["speedup"] = static_cast<double>(school_ns) / static_cast<double>(plan_ns);
  j["plan_faster"] = faster;
  std::ostringstream text;
  text << "bench " << (r.preset ? *r.preset : r.ring.describe()) << " (" << trials
       << " trials, median)\n  " << std::left << std::setw(40) << r.plan.describe()
       << std::right << std::setw(12) << plan_ns << " ns\n  " << std::left
       << std::setw(40) << "schoolbook" << std::right << std::setw(12) << school_ns
       << " ns\n";
  return emit(out, j, o.pretty, text.str(), kExitPass);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("file", "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_mul(const Options& o, std::ostream& out) {
  Poly a = [&] {
    try {
      return parse_poly(read_file(o.file_a));
    } catch (const NttError& e) {
      fail(e.code(), o.file_a + ": " + e.what());
    }
  }();
  Poly b = [&] {
    try {
      return parse_poly(read_file(o.file_b));
    } catch (const NttError& e) {
      fail(e.code(), o.file_b + ": " + e.what());
    }
  }();
  NTTKIT_REQUIRE(a.ring == b.ring, ErrorCode::kIncompatibleRings,
                 a.ring.describe() + " vs " + b.ring.describe());
  std::optional<NttPlan> plan;
  if (!o.preset.empty()) {
    const Preset& p = preset(o.preset);
    NTTKIT_REQUIRE(p.ring == a.ring, ErrorCode::kIncompatibleRings,
                   "preset " + p.name + " uses " + p.ring.describe());
    plan.emplace(p.plan);
  } else {
    plan.emplace(plan_for(a.ring, o));
  }
  const std::string product = format_poly(plan->multiply(a, b));
  if (o.output.empty()) {
    out << product;
    return kExitPass;
  }
  std::ofstream f(o.output);
  f << product;
  if (!f) throw CLI::ValidationError("output", "cannot write " + o.output);
  Json j;
  j["command"] = "mul";
  j["version"] = NTTKIT_VERSION;
  j["ring"] = a.ring.describe();
  j["strategy"] = plan->describe();
  j["output"] = o.output;
  return emit(out, j, o.pretty, "wrote " + o.output + "\n", kExitPass);
}

class TraceObserver : public TransformObserver {
 public:
  void on_butterfly(const ButterflyEvent& e) override {
    if (stages_.size() <= e.stage) {
      stages_.resize(e.stage + 1,
                     Json{{"stage", 0}, {"level", 0}, {"butterflies", Json::array()}});
    }
    Json& s = stages_[e.stage];
    s["stage"] = e.stage;
    s["level"] = e.level;
    s["butterflies"].push_back(
        {{"pair", {e.first, e.second}}, {"exponent", e.exponent}, {"twiddle", e.twiddle}});
  }
  const std::vector<Json>& stages() const { return stages_; }

 private:
  std::vector<Json> stages_;
};

int cmd_plan(const Options& o, std::ostream& out) {
  const Resolved r = resolve(o);
  const RingClass cls = classify(r.ring);
  Json j = header("plan", r);
  j["class"] = cls.describe();
  j["summary"] = cls.describe() + " → " + r.plan.describe();
  j["checks"] = r.plan.checks();
  std::ostringstream text;
  text << r.ring.describe() << "\n  " << cls.describe() << " → " << r.plan.describe()
       << "\n";
  for (const auto& c : r.plan.checks()) text << "  check: " << c << "\n";
  if (const auto specs = r.plan.transform_specs()) {
    j["transform"] = {{"forward", specs->first.name()}, {"inverse", specs->second.name()}};
    text << "  forward: " << specs->first.name() << "\n  inverse: "
         << specs->second.name() << "\n";
  }
  if (o.trace) {
    const auto specs = r.plan.transform_specs();
    NTTKIT_REQUIRE(specs && r.plan.has_domain() && r.ring.n() <= 16,
                   ErrorCode::kParameterCondition,
                   "--trace needs a single transform stage and n <= 16");
    const RingSpec domain = r.ring.with_modulus(r.plan.domain_modulus());
    const TransformPlan tp(domain, specs->first.beta);
    std::vector<Residue> values(domain.n(), 0);
    TraceObserver obs;
    transform_in_place(values, tp.forward_table(), tp.forward_spec(), &obs);
    j["trace"] = obs.stages();
    for (const Json& s : obs.stages()) {
      text << "  stage " << s["stage"].get<unsigned>() << " (level "
           << s["level"].get<unsigned>() << "):";
      for (const Json& b : s["butterflies"]) {
        text << " (" << b["pair"][0].get<std::size_t>() << ","
             << b["pair"][1].get<std::size_t>() << ";e="
             << b["exponent"].get<std::uint64_t>() << ")";
      }
      text << "\n";
    }
  }
  return emit(out, j, o.pretty, text.str(), kExitPass);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"nttkit: NTT-based polynomial multiplication toolkit", "nttkit"};
  app.set_version_flag("--version", std::string(NTTKIT_VERSION));
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "Check a plan against the schoolbook oracle");
  add_ring_options(verify, o);
  verify->add_option("--trials", o.trials, "Random products to check");
  verify->add_option("--seed", o.seed, "RNG seed");

  auto* count = app.add_subcommand("count-ops", "Count transform multiplications");
  add_ring_options(count, o);
  count->add_option("--seed", o.seed, "RNG seed");

  auto* bench = app.add_subcommand("bench", "Median wall time against schoolbook");
  add_ring_options(bench, o);
  bench->add_option("--trials", o.trials, "Timed repetitions");
  bench->add_option("--seed", o.seed, "RNG seed");

  auto* mul = app.add_subcommand("mul", "Multiply two polynomial files");
  add_ring_options(mul, o);
  mul->add_option("a", o.file_a, "First operand file")->required();
  mul->add_option("b", o.file_b, "Second operand file")->required();
  mul->add_option("-o,--output", o.output, "Product file (default: stdout)");

  auto* plan = app.add_subcommand("plan", "Show the classification and chosen plan");
  add_ring_options(plan, o);
  plan->add_flag("--trace", o.trace, "Per-level butterfly schedule (n <= 16)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }
  try {
    if (*verify) return cmd_verify(o, out);
    if (*count) return cmd_count_ops(o, out);
    if (*bench) return cmd_bench(o, out);
    if (*mul) return cmd_mul(o, out);
    if (*plan) return cmd_plan(o, out);
  } catch (const NttError& e) {
    err << "nttkit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::Error& e) {
    err << "nttkit: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace nttkit::cli
