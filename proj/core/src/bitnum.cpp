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

#include "hybridmul/bitnum.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>

namespace hybridmul {

void check_operand_width(unsigned width) {
  if (width < kMinOperandWidth || width > kMaxOperandWidth) {
    throw Error("operand width " + std::to_string(width) + " outside [" +
                std::to_string(kMinOperandWidth) + ", " +
                std::to_string(kMaxOperandWidth) + "]");
  }
}

Word::Word(std::uint64_t bits, unsigned width) : bits_(bits & low_mask(width)), width_(width) {
  if (width < 1 || width > kMaxWordWidth) {
    throw Error("word width " + std::to_string(width) + " outside [1, 64]");
  }
}

Word Word::slice(unsigned lo, unsigned count) const {
  if (count == 0 || lo + count > width_) {
    throw Error("slice [" + std::to_string(lo) + ", " + std::to_string(lo + count) +
                ") out of range for width " + std::to_string(width_));
  }
  return Word(bits_ >> lo, count);
}

Word Word::zero_extend(unsigned width) const {
  if (width < width_) throw Error("zero_extend cannot narrow a word");
  return Word(bits_, width);
}

unsigned popcount(const Word& w) { return static_cast<unsigned>(std::popcount(w.bits())); }

std::vector<unsigned> one_positions(const Word& w) {
  std::vector<unsigned> out;
  for (std::uint64_t rest = w.bits(); rest != 0; rest &= rest - 1) {
    out.push_back(static_cast<unsigned>(std::countr_zero(rest)) + 1);
  }
  return out;
}

Word shift_left(const Word& w, unsigned k) {
  const unsigned width = w.width() + k;
  if (width > kMaxWordWidth) {
    throw OverflowError("shift by " + std::to_string(k) + " exceeds 64-bit words");
  }
  return Word(w.bits() << k, width);
}

Word add(const Word& a, const Word& b) {
  const unsigned width = std::min(std::max(a.width(), b.width()) + 1, kMaxWordWidth);
  const std::uint64_t sum = a.bits() + b.bits();
  if (sum < a.bits()) throw OverflowError("sum exceeds 64-bit words");
  return Word(sum, width);
}

std::int64_t SignMag::to_signed() const {
  if (magnitude.bits() > static_cast<std::uint64_t>(INT64_MAX)) {
    throw OverflowError("magnitude does not fit a signed 64-bit integer");
  }
  const auto m = static_cast<std::int64_t>(magnitude.bits());
  return sign < 0 ? -m : m;
}

SignMag to_sign_magnitude(std::int64_t v, unsigned width) {
  if (width < 1 || width > 63) throw Error("sign-magnitude width outside [1, 63]");
  const std::uint64_t mag =
      v < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
  if (mag > low_mask(width)) {
    throw OverflowError("|" + std::to_string(v) + "| does not fit " + std::to_string(width) +
                        " bits");
  }
  return SignMag{(v < 0) ? -1 : +1, Word(mag, width)};
}

namespace {

char digit_char(unsigned d) { return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10)); }

std::string binary_digits(const Word& w) {
  std::string s(w.width(), '0');
  for (unsigned p = 0; p < w.width(); ++p) {
    if (w.bit(p + 1)) s[w.width() - 1 - p] = '1';
  }
  return s;
}

std::string hex_digits(const Word& w) {
  const unsigned n = (w.width() + 3) / 4;
  std::string s(n, '0');
  for (unsigned i = 0; i < n; ++i) {
    s[n - 1 - i] = digit_char(static_cast<unsigned>((w.bits() >> (4 * i)) & 0xF));
  }
  return s;
}

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

std::uint64_t parse_digits(std::string_view digits, unsigned base, std::string_view whole) {
  std::string clean;
  for (char c : digits) {
    if (c != '_') clean.push_back(c);
  }
  if (clean.empty()) throw ParseError("no digits in '" + std::string(whole) + "'");
  std::uint64_t value = 0;
  for (char c : clean) {
    const int d = digit_value(c);
    if (d < 0 || static_cast<unsigned>(d) >= base) {
      throw ParseError("bad digit '" + std::string(1, c) + "' in '" + std::string(whole) + "'");
    }
    if (value > (~std::uint64_t{0} - static_cast<unsigned>(d)) / base) {
      throw ParseError("literal '" + std::string(whole) + "' exceeds 64 bits");
    }
    value = value * base + static_cast<unsigned>(d);
  }
  return value;
}

unsigned digit_count(std::string_view digits) {
  return static_cast<unsigned>(std::count_if(digits.begin(), digits.end(),
                                             [](char c) { return c != '_'; }));
}

Word sized(std::uint64_t value, unsigned width, std::string_view whole) {
  if (width < 1 || width > kMaxWordWidth) {
    throw ParseError("width out of range in '" + std::string(whole) + "'");
  }
  if ((value & ~low_mask(width)) != 0) {
    throw ParseError("value of '" + std::string(whole) + "' does not fit its width");
  }
  return Word(value, width);
}

}  // namespace

std::string to_string(const Word& w, Radix radix) {
  const std::string prefix = std::to_string(w.width());
  switch (radix) {
    case Radix::Binary:
      return prefix + "'b" + binary_digits(w);
    case Radix::Decimal:
      return prefix + "'d" + std::to_string(w.bits());
    case Radix::Hex:
      return prefix + "'h" + hex_digits(w);
  }
  return {};
}

std::string to_binary_string(const Word& w) { return "0b" + binary_digits(w); }

Word parse_word(std::string_view text, unsigned default_width) {
  const std::string_view whole = text;
  if (text.empty()) throw ParseError("empty word literal");

  if (const auto tick = text.find('\''); tick != std::string_view::npos) {
    unsigned width = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + tick, width);
    if (ec != std::errc{} || ptr != text.data() + tick) {
      throw ParseError("bad width in '" + std::string(whole) + "'");
    }
    if (tick + 1 >= text.size()) throw ParseError("missing radix in '" + std::string(whole) + "'");
    const char r = static_cast<char>(std::tolower(static_cast<unsigned char>(text[tick + 1])));
    const std::string_view digits = text.substr(tick + 2);
    unsigned base = 0;
    if (r == 'b') base = 2;
    else if (r == 'd') base = 10;
    else if (r == 'h') base = 16;
    else throw ParseError("unknown radix in '" + std::string(whole) + "'");
    return sized(parse_digits(digits, base, whole), width, whole);
  }

  if (text.size() > 2 && text[0] == '0' && (text[1] == 'b' || text[1] == 'B')) {
    const std::string_view digits = text.substr(2);
    const unsigned width = default_width != 0 ? default_width : digit_count(digits);
    return sized(parse_digits(digits, 2, whole), width, whole);
  }
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    const std::string_view digits = text.substr(2);
    const unsigned width = default_width != 0 ? default_width : 4 * digit_count(digits);
    return sized(parse_digits(digits, 16, whole), width, whole);
  }

  if (default_width == 0) {
    throw ParseError("decimal literal '" + std::string(whole) + "' needs an explicit width");
  }
  return sized(parse_digits(text, 10, whole), default_width, whole);
}

}  // namespace hybridmul
