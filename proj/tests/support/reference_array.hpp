// Copyright 2026 The hybridmul Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "hybridmul/datapath.hpp"

namespace hybridmul::testing {

/// Straight-line, word-wide model of the carry-save array with no freezing.
/// Every node group (bus, a, b, cin, sum, cout) is kept as one word per row
/// so a transition count is a popcount of XORs. Used as the oracle for
/// evaluate().
class ReferenceArray {
 public:
  explicit ReferenceArray(const Geometry& g);

  struct Step {
    std::uint64_t product = 0;
    std::uint64_t toggles = 0;
    std::vector<std::uint64_t> per_row;  // rows, then the final adder
  };

  Step evaluate(const ArrayInput& input);

  /// Node vector in the ArrayState layout.
  std::vector<std::uint8_t> nodes() const;

 private:
  struct Group {
    std::uint64_t words[6] = {0, 0, 0, 0, 0, 0};  // bus, a, b, cin, sum, cout
  };
  Geometry g_;
  std::vector<Group> rows_;
  Group cpa_;
};

}  // namespace hybridmul::testing
