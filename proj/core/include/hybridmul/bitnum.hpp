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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hybridmul {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

inline constexpr unsigned kMinOperandWidth = 4;
inline constexpr unsigned kMaxOperandWidth = 32;
inline constexpr unsigned kMaxWordWidth = 64;

/// Throws unless width is a legal operand width ([4, 32]).
void check_operand_width(unsigned width);

/// Lowest `width` bits set.
constexpr std::uint64_t low_mask(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

/// Fixed-width unsigned bit pattern. The value is always masked to the
/// width. Operands live in [4, 32] bits; intermediate words (products,
/// split halves, shifted multiplicands) may use any width in [1, 64].
class Word {
 public:
  constexpr Word() = default;
  Word(std::uint64_t bits, unsigned width);

  std::uint64_t bits() const { return bits_; }
  unsigned width() const { return width_; }

  /// Bit at 1-indexed position `pos` (position 1 is the LSB).
  bool bit(unsigned pos) const {
    return pos >= 1 && pos <= width_ && ((bits_ >> (pos - 1)) & 1U) != 0;
  }

  bool is_zero() const { return bits_ == 0; }

  /// Bits [lo, lo + count) as a new word of width `count`.
  Word slice(unsigned lo, unsigned count) const;

  /// Same value, wider (or equal) width.
  Word zero_extend(unsigned width) const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::uint64_t bits_ = 0;
  unsigned width_ = 1;
};

unsigned popcount(const Word& w);

/// Ascending 1-indexed positions of the set bits.
std::vector<unsigned> one_positions(const Word& w);

/// Exact left shift; the result widens by `k` bits instead of truncating.
Word shift_left(const Word& w, unsigned k);

/// Exact sum of two words; the result is one bit wider than the wider input.
Word add(const Word& a, const Word& b);

struct SignMag {
  int sign = +1;  // +1 or -1; zero magnitude always carries +1
  Word magnitude;

  std::int64_t to_signed() const;

  friend bool operator==(const SignMag&, const SignMag&) = default;
};

/// Throws OverflowError when |v| >= 2^width.
SignMag to_sign_magnitude(std::int64_t v, unsigned width);

enum class Radix { Binary, Decimal, Hex };

/// Verilog-style sized literal, e.g. "8'b00100010", "8'd34", "8'h22".
std::string to_string(const Word& w, Radix radix = Radix::Binary);

/// "0b00100010" with exactly width digits.
std::string to_binary_string(const Word& w);

/// Parses sized literals ("8'b00100010", "8'd34", "8'h22"), prefixed
/// literals ("0b0010" takes its width from the digit count, "0x22" from
/// four bits per digit) and plain decimals. Plain decimals need
/// `default_width`; 0 means "none given".
Word parse_word(std::string_view text, unsigned default_width = 0);

}  // namespace hybridmul
