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

#include <gtest/gtest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nttkit/polyfile.hpp"

namespace nttkit {
namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "nttkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

nlohmann::json report(const Result& r) { return nlohmann::json::parse(r.out); }

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("nttkit_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

TEST(CliTest, PlanSummary) {
  const Result r = run({"plan", "--preset", "kyber"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(report(r)["summary"], "PartialFriendly(1) → Incomplete(β=1)");
  const Result t = run({"plan", "-n", "8", "-q", "17", "--trace"});
  ASSERT_EQ(t.status, 0) << t.err;
  EXPECT_EQ(report(t)["trace"].size(), 3u);
  EXPECT_EQ(report(t)["trace"][0]["butterflies"].size(), 4u);
  EXPECT_EQ(run({"plan", "-n", "64", "-q", "257", "--trace"}).status, 2);
}

TEST(CliTest, VerifyPresets) {
  const Result d = run({"verify", "--preset", "dilithium", "--trials", "100"});
  EXPECT_EQ(d.status, 0) << d.err;
  EXPECT_EQ(report(d)["verdict"], "pass");
  EXPECT_EQ(report(d)["passed"], 100);
  const Result s = run({"verify", "--preset", "saber-m4", "--trials", "50"});
  EXPECT_EQ(s.status, 0) << s.err;
  EXPECT_EQ(report(s)["verdict"], "pass");
}

TEST(CliTest, VerifyErrors) {
  const Result bad = run({"verify", "--form", "x^n+1", "-n", "256", "-q", "3328"});
  EXPECT_EQ(bad.status, 2);
  EXPECT_NE(bad.err.find("NoStrategy"), std::string::npos);
  const Result lifted = run({"verify", "--form", "x^n+1", "-n", "256", "-q", "3328",
                             "--allow-bigmod", "--trials", "5"});
  EXPECT_EQ(lifted.status, 0) << lifted.err;
  EXPECT_EQ(run({"verify", "--preset", "kyber-r9"}).status, 2);
  EXPECT_EQ(run({"verify"}).status, 2);
  EXPECT_EQ(run({"frobnicate"}).status, 2);
  const Result cond = run({"verify", "-n", "256", "-q", "3329", "--strategy", "full"});
  EXPECT_EQ(cond.status, 2);
  EXPECT_NE(cond.err.find("3329 = 1 mod 512"), std::string::npos) << cond.err;
}

TEST(CliTest, Deterministic) {
  const std::vector<std::string> args = {"verify", "--preset", "kyber", "--trials",
                                         "20", "--seed", "9"};
  const Result a = run(args);
  const Result b = run(args);
  ::setenv("NTTKIT_THREADS", "3", 1);
  const Result c = run(args);
  ::unsetenv("NTTKIT_THREADS");
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(CliTest, CountOps) {
  const Result r8 = run({"count-ops", "-n", "8", "-q", "17"});
  ASSERT_EQ(r8.status, 0) << r8.err;
  const auto c8 = report(r8)["counts"];
  EXPECT_EQ(c8[0]["mults"], 12);
  EXPECT_EQ(c8[1]["mults"], 20);
  EXPECT_EQ(c8[2]["mults"], 20);
  EXPECT_EQ(c8[3]["mults"], 28);
  const Result r256 = run({"count-ops", "--preset", "kyber-r1"});
  const auto c256 = report(r256)["counts"];
  EXPECT_EQ(c256[0]["mults"], 1024);
  EXPECT_EQ(c256[1]["mults"], 1280);
  const Result b1 = run({"count-ops", "-n", "256", "-q", "7681", "--strategy",
                         "incomplete", "--beta", "1"});
  EXPECT_EQ(report(b1)["counts"][0]["mults"], 896);
  EXPECT_EQ(run({"count-ops", "--preset", "ntru-701"}).status, 2);
}

TEST(CliTest, Bench) {
  const Result r = run({"bench", "--preset", "dilithium", "--trials", "15"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(report(r)["plan_faster"].get<bool>());
}

TEST(CliTest, MulFiles) {
  TempDir dir;
  const std::string a = dir.write(
      "a.txt", "# operand\nring x^n+1 n=8 q=17\n1 2 3 4\n5 6 7 16  # tail\n");
  const std::string one = dir.write("one.txt", "ring x^n+1 n=8 q=17\n1 0 0 0 0 0 0 0\n");
  const Result r = run({"mul", a, one});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "ring x^n+1 n=8 q=17\n1 2 3 4 5 6 7 16\n");
  EXPECT_EQ(run({"mul", a, one, "-o", dir.path("c.txt")}).status, 0);
  std::ifstream in(dir.path("c.txt"));
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), r.out);

  const std::string other = dir.write("b.txt", "ring x^n-1 n=8 q=17\n1 0 0 0 0 0 0 0\n");
  const Result mismatch = run({"mul", a, other});
  EXPECT_EQ(mismatch.status, 2);
  EXPECT_NE(mismatch.err.find("IncompatibleRings"), std::string::npos);
  const std::string broken = dir.write("bad.txt", "ring x^n+1 n=8 q=17\n1 2 x 4\n");
  const Result parse = run({"mul", broken, one});
  EXPECT_EQ(parse.status, 2);
  EXPECT_NE(parse.err.find("line 2, column 5"), std::string::npos) << parse.err;
}

TEST(PolyFileTest, RoundTripAndErrors) {
  const Poly p(RingSpec(RingForm::kXnMinusXMinus1, 20, 4591),
               std::vector<Residue>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14,
                                    15, 16, 17, 18, 4590});
  EXPECT_EQ(parse_poly(format_poly(p)), p);
  EXPECT_EQ(format_poly(parse_poly(format_poly(p))), format_poly(p));
  auto where = [](const std::string& text) {
    try {
      parse_poly(text);
    } catch (const NttError& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParseError);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(where("").find("line 1, column 1"), std::string::npos);
  EXPECT_NE(where("ring x^n+2 n=4 q=17\n").find("line 1, column 6"), std::string::npos);
  EXPECT_NE(where("ring x^n+1 n=4 q=17\n1 2 17 0\n").find("line 2, column 5"),
            std::string::npos);
  EXPECT_NE(where("ring x^n+1 n=4 q=17\n1 2 3\n").find("expected 4"),
            std::string::npos);
  EXPECT_NE(where("ring x^n+1 n=4 q=17\n1 2 3 4 5\n").find("line 2, column 9"),
            std::string::npos);
  EXPECT_NE(where("ring x^n+1 n=4 p=17\n").find("column 16"), std::string::npos);
}

}  // namespace
}  // namespace nttkit
