// Copyright 2026 The invset Authors
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

#include <cstdint>
#include <optional>
#include <string_view>

#include "invset/cli/problem.hpp"

namespace invset::cli {

inline constexpr int kEx4Blocks = 10;
inline constexpr double kEx4EntryBound = 1.25;
inline constexpr int kEx4MaxDraws = 10000;

// A = [[1.2, 1], [0, 1.2]], B = (0.5, 0.3), Ω = unit box, U = {|u| <= 2}.
ProblemFile example1();
// Example 1 with the singular A = [[1.2, 1], [0, 0]].
ProblemFile example2();
// Example 1 with X = {-10 <= x1 <= 5, -1 <= x2 <= 2}.
ProblemFile example3();
// Ten decoupled 2-state/1-input blocks with entries uniform in ±1.25, redrawn
// until every eigenvalue of each A_i has modulus > 1 and (A_i, B_i) is controllable.
// Ω = unit box in R^20, U = 2·unit box in R^10.
ProblemFile example4(std::uint64_t seed);

// id ∈ {ex1, ex2, ex3, ex4}; ex4 requires a seed. Throws InputError otherwise.
ProblemFile generate_example(std::string_view id, std::optional<std::uint64_t> seed);

}  // namespace invset::cli
