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
#include <string>
#include <utility>
#include <vector>

#include "hybridmul/bitnum.hpp"

namespace hybridmul {

enum class Arch { Conventional, Booth, Hybrid };

std::string to_string(Arch arch);
Arch parse_arch(std::string_view name);

// ---------------------------------------------------------------------------
// Hybrid encoding
// ---------------------------------------------------------------------------

enum class CategoryKind { Zero, A, B, C, D, E, F, Split };

std::string to_string(CategoryKind kind);

/// Hybrid encoding category of a multiplier together with the positions
/// that parameterize its shift/add recipe. Positions are 1-indexed from the
/// LSB. Which fields are meaningful depends on `kind`:
///   B: i (the single set bit)
///   C: i (the upper set bit; the lower one is position 1)
///   D: i (lower set bit), j (gap to the upper set bit)
///   E, F: i < j < k (absolute positions of the three set bits)
struct Category {
  CategoryKind kind = CategoryKind::Zero;
  unsigned i = 0;
  unsigned j = 0;
  unsigned k = 0;

  friend bool operator==(const Category&, const Category&) = default;
};

Category classify(const Word& multiplier);

struct Step {
  enum class Op { ShiftLeft, AddM };
  Op op = Op::ShiftLeft;
  unsigned amount = 0;  // shift distance; unused for AddM

  static Step shl(unsigned k) { return {Op::ShiftLeft, k}; }
  static Step add_m() { return {Op::AddM, 0}; }

  friend bool operator==(const Step&, const Step&) = default;
};

struct HybridPlan {
  Category category;
  std::vector<Step> steps;
  unsigned add_count = 0;
  unsigned pp_count = 0;
  unsigned multiplier_width = 0;
};

/// Shift/add recipe for a multiplier with at most three set bits.
/// Throws Error for Split multipliers.
HybridPlan hybrid_plan(const Word& multiplier);

/// Runs the recipe on a multiplicand. The running value starts at M; every
/// AddM adds the original M back in. Zero plans yield zero.
Word execute_plan(const HybridPlan& plan, const Word& multiplicand);

/// One step per line: "SHL 4", "ADD M".
std::string format_plan(const HybridPlan& plan);

struct SplitWord {
  Word hi;
  Word lo;
};

/// Halves an even-width multiplier. Throws Error on odd widths.
SplitWord split(const Word& multiplier);

// ---------------------------------------------------------------------------
// Radix-4 Booth recoding
// ---------------------------------------------------------------------------

struct BoothDigits {
  std::vector<int> digits;     // LSB first, each in [-2, 2]
  unsigned recoded_width = 0;  // even; operand zero-extended to this width

  /// Sum of digits[k] * 4^k.
  std::int64_t value() const;
};

/// Zero-extended width an unsigned operand needs so its radix-4 recoding
/// is non-negative: the smallest even width >= operand width whose top bit
/// is clear for `value`.
unsigned booth_recoded_width(const Word& operand);

/// Digit count of the widest recoding produced for `width`-bit operands.
unsigned booth_max_digits(unsigned width);

BoothDigits booth_recode(const Word& operand);

/// "+1 -2 +1 -2": MSB-first rendering.
std::string format_booth(const BoothDigits& digits);

// ---------------------------------------------------------------------------
// Partial products
// ---------------------------------------------------------------------------

struct PPRow {
  enum class Kind {
    Plain,  // unsigned term: bits << weight
    Booth,  // signed radix-4 term: (negate ? -1 : 1) * bits << weight
  };
  Word bits;
  unsigned weight = 0;
  bool negate = false;
  bool is_zero = true;
  Kind kind = Kind::Plain;
};

struct PPMatrix {
  std::vector<PPRow> rows;
  unsigned operand_width = 0;

  unsigned nonzero_rows() const;

  /// Weighted signed sum of all rows, modulo 2^64. Exact whenever the true
  /// product is below 2^64, which always holds for operands up to 32 bits.
  std::uint64_t sum() const;
};

PPMatrix conventional_pp(const Word& multiplicand, const Word& multiplier);
PPMatrix booth_pp(const Word& multiplicand, const BoothDigits& digits);

/// Terms the hybrid datapath feeds to its adder array: one shifted copy of
/// M per set multiplier bit, in plan order. Split multipliers contribute
/// the low half's rows, then the high half's rows shifted by half the
/// width; a half with more than three set bits is Booth-recoded.
PPMatrix hybrid_pp(const Word& multiplicand, const Word& multiplier);

// ---------------------------------------------------------------------------
// Top-level multiply with sign glue
// ---------------------------------------------------------------------------

struct OpCounts {
  std::uint64_t pp_count = 0;
  std::uint64_t add_count = 0;
  std::uint64_t shift_count = 0;

  OpCounts& operator+=(const OpCounts& o) {
    pp_count += o.pp_count;
    add_count += o.add_count;
    shift_count += o.shift_count;
    return *this;
  }
  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

/// Sign-magnitude product; magnitudes up to (2^32 - 1)^2 do not fit int64.
struct Product {
  int sign = +1;
  std::uint64_t magnitude = 0;

  std::string to_string() const;
  friend bool operator==(const Product&, const Product&) = default;
};

struct MultiplyOptions {
  /// Use the operand with fewer set bits as the multiplier.
  bool choose_sparser_multiplier = false;
};

struct MultiplyResult {
  Product product;
  OpCounts counts;
};

/// a * b on the chosen architecture. The core multiplies magnitudes; the
/// sign is applied afterwards. `b` is the multiplier unless options swap.
MultiplyResult multiply(const SignMag& a, const SignMag& b, Arch arch,
                        const MultiplyOptions& options = {});

/// Oracle: native multiply of sign-magnitude operands.
Product reference_product(const SignMag& a, const SignMag& b);

}  // namespace hybridmul
