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

// Text format for polynomials:
//
//   ring <form> n=<int> q=<int>
//   <coefficients, whitespace separated, ascending degree>
//
// '#' starts a comment that runs to the end of the line. Coefficients are
// canonical residues in [0, q).

#include <string>

#include "nttkit/ring.hpp"

namespace nttkit {

/// Throws ParseError with line and column on malformed input.
Poly parse_poly(const std::string& text);
std::string format_poly(const Poly& p);

}  // namespace nttkit
