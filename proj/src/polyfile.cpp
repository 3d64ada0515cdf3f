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

#include "nttkit/polyfile.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <vector>

namespace nttkit {

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

[[noreturn]] void parse_fail(std::size_t line, std::size_t column,
                             const std::string& what) {
  fail(ErrorCode::kParseError, "line " + std::to_string(line) + ", column " +
                                   std::to_string(column) + ": " + what);
}

std::uint64_t parse_uint(const Token& t, std::size_t offset = 0) {
  const char* first = t.text.data() + offset;
  const char* last = t.text.data() + t.text.size();
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    parse_fail(t.line, t.column + offset,
               "expected a non-negative integer, got '" + t.text.substr(offset) + "'");
  }
  return v;
}

}  // namespace

Poly parse_poly(const std::string& text) {
  std::vector<std::vector<Token>> lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) {
      raw.resize(hash);
    }
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      const std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i > start) tokens.push_back({raw.substr(start, i - start), line_no, start + 1});
    }
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  if (lines.empty()) parse_fail(line_no + 1, 1, "missing ring header");
  const auto& header = lines.front();
  if (header[0].text != "ring" || header.size() != 4) {
    parse_fail(header[0].line, header[0].column,
               "expected 'ring <form> n=<int> q=<int>'");
  }
  RingForm form;
  try {
    form = parse_form(header[1].text);
  } catch (const NttError&) {
    parse_fail(header[1].line, header[1].column,
               "unknown ring form '" + header[1].text + "'");
  }
  auto keyed = [&](const Token& t, const std::string& key) {
    if (t.text.rfind(key + "=", 0) != 0) {
      parse_fail(t.line, t.column, "expected " + key + "=<int>");
    }
    return parse_uint(t, key.size() + 1);
  };
  const std::uint64_t n = keyed(header[2], "n");
  const std::uint64_t q = keyed(header[3], "q");
  std::optional<RingSpec> ring;
  try {
    ring.emplace(form, n, q);
  } catch (const NttError& e) {
    parse_fail(header[0].line, header[0].column, e.what());
  }
  std::vector<Residue> coeffs;
  Token last = header.back();
  for (std::size_t l = 1; l < lines.size(); ++l) {
    for (const Token& t : lines[l]) {
      const std::uint64_t v = parse_uint(t);
      if (v >= q) {
        parse_fail(t.line, t.column,
                   "coefficient " + t.text + " is not below q=" + std::to_string(q));
      }
      if (coeffs.size() == n) parse_fail(t.line, t.column, "more than n coefficients");
      coeffs.push_back(v);
      last = t;
    }
  }
  if (coeffs.size() != n) {
    parse_fail(last.line, last.column + last.text.size(),
               "expected " + std::to_string(n) + " coefficients, got " +
                   std::to_string(coeffs.size()));
  }
  return Poly(*ring, std::move(coeffs));
}

std::string format_poly(const Poly& p) {
  NTTKIT_REQUIRE(p.ring.form() != RingForm::kGeneral, ErrorCode::kFormMismatch,
                 "the file format names the ring form; general rings have none");
  std::ostringstream os;
  os << "ring " << form_token(p.ring.form()) << " n=" << p.ring.n()
     << " q=" << p.ring.q() << "\n";
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    os << p.coeffs[i] << ((i + 1) % 16 == 0 || i + 1 == p.coeffs.size() ? "\n" : " ");
  }
  return os.str();
}

}  // namespace nttkit
