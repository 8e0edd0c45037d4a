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

#include <gtest/gtest.h>

#include <random>

#include "hybridmul/bitnum.hpp"

namespace hm = hybridmul;
using hm::Word;

TEST(Popcount, Examples) {
  EXPECT_EQ(hm::popcount(Word(34, 8)), 2u);
  EXPECT_EQ(hm::popcount(Word(0, 8)), 0u);
  EXPECT_EQ(hm::popcount(Word(255, 8)), 8u);
}

TEST(OnePositions, OneIndexedFromLsb) {
  EXPECT_EQ(hm::one_positions(Word(34, 8)), (std::vector<unsigned>{2, 6}));
  EXPECT_EQ(hm::one_positions(Word(1, 8)), (std::vector<unsigned>{1}));
  EXPECT_EQ(hm::one_positions(Word(0b10101, 8)), (std::vector<unsigned>{1, 3, 5}));
  EXPECT_TRUE(hm::one_positions(Word(0, 8)).empty());
}

TEST(Word, MasksToWidth) {
  const Word w(0x1FF, 8);
  EXPECT_EQ(w.bits(), 0xFFu);
  EXPECT_EQ(w.width(), 8u);
  EXPECT_THROW(Word(1, 0), hm::Error);
  EXPECT_THROW(Word(1, 65), hm::Error);
  EXPECT_EQ(Word(~0ULL, 64).bits(), ~0ULL);
}

TEST(Word, BitQueries) {
  const Word w(34, 8);
  EXPECT_FALSE(w.bit(1));
  EXPECT_TRUE(w.bit(2));
  EXPECT_TRUE(w.bit(6));
  EXPECT_FALSE(w.bit(0));
  EXPECT_FALSE(w.bit(9));
}

TEST(Word, SliceAndExtend) {
  const Word w(0b11110001, 8);
  EXPECT_EQ(w.slice(0, 4), Word(0b0001, 4));
  EXPECT_EQ(w.slice(4, 4), Word(0b1111, 4));
  EXPECT_THROW((void)w.slice(6, 4), hm::Error);
  EXPECT_EQ(w.zero_extend(10), Word(0b11110001, 10));
  EXPECT_THROW((void)w.zero_extend(4), hm::Error);
}

TEST(OperandWidth, Range) {
  EXPECT_NO_THROW(hm::check_operand_width(4));
  EXPECT_NO_THROW(hm::check_operand_width(32));
  EXPECT_THROW(hm::check_operand_width(3), hm::Error);
  EXPECT_THROW(hm::check_operand_width(33), hm::Error);
}

TEST(ShiftLeft, Examples) {
  EXPECT_EQ(hm::shift_left(Word(65, 8), 4).bits(), 1040u);
  EXPECT_EQ(hm::shift_left(Word(65, 8), 4).width(), 12u);
  EXPECT_EQ(hm::shift_left(Word(65, 8), 0), Word(65, 8));
  EXPECT_EQ(hm::shift_left(Word(1105, 12), 1).bits(), 2210u);
  EXPECT_THROW((void)hm::shift_left(Word(1, 32), 33), hm::OverflowError);
}

TEST(ShiftLeft, NeverTruncates) {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 2000; ++n) {
    const unsigned width = 4 + static_cast<unsigned>(rng() % 29);
    const unsigned k = static_cast<unsigned>(rng() % (64 - width + 1));
    const Word w(rng(), width);
    const Word s = hm::shift_left(w, k);
    EXPECT_EQ(s.width(), width + k);
    EXPECT_EQ(s.bits(), w.bits() << k);
  }
}

TEST(Add, Widens) {
  const Word s = hm::add(Word(255, 8), Word(1, 8));
  EXPECT_EQ(s.bits(), 256u);
  EXPECT_EQ(s.width(), 9u);
}

TEST(Popcount, MatchesPositionCount) {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 2000; ++n) {
    const Word w(rng(), 4 + static_cast<unsigned>(rng() % 29));
    EXPECT_EQ(hm::popcount(w), hm::one_positions(w).size());
  }
}

TEST(SignMagnitude, Examples) {
  EXPECT_EQ(hm::to_sign_magnitude(-65, 8), (hm::SignMag{-1, Word(65, 8)}));
  EXPECT_EQ(hm::to_sign_magnitude(0, 8), (hm::SignMag{+1, Word(0, 8)}));
  EXPECT_EQ(hm::to_sign_magnitude(34, 8), (hm::SignMag{+1, Word(34, 8)}));
  EXPECT_THROW((void)hm::to_sign_magnitude(256, 8), hm::OverflowError);
  EXPECT_THROW((void)hm::to_sign_magnitude(-256, 8), hm::OverflowError);
  EXPECT_NO_THROW((void)hm::to_sign_magnitude(-255, 8));
}

TEST(SignMagnitude, RoundTripsWholeRange) {
  for (unsigned width : {4u, 6u, 8u}) {
    const std::int64_t lim = (std::int64_t{1} << width) - 1;
    for (std::int64_t v = -lim; v <= lim; ++v) {
      const hm::SignMag sm = hm::to_sign_magnitude(v, width);
      EXPECT_EQ(sm.to_signed(), v);
      if (sm.magnitude.is_zero()) EXPECT_EQ(sm.sign, +1);
    }
  }
  const hm::SignMag big = hm::to_sign_magnitude(-((std::int64_t{1} << 32) - 1), 32);
  EXPECT_EQ(big.to_signed(), -((std::int64_t{1} << 32) - 1));
}

TEST(Text, FormatsWithExplicitWidth) {
  EXPECT_EQ(hm::to_string(Word(34, 8)), "8'b00100010");
  EXPECT_EQ(hm::to_string(Word(34, 8), hm::Radix::Decimal), "8'd34");
  EXPECT_EQ(hm::to_string(Word(0xAB, 12), hm::Radix::Hex), "12'h0ab");
  EXPECT_EQ(hm::to_binary_string(Word(34, 8)), "0b00100010");
}

TEST(Text, Parses) {
  EXPECT_EQ(hm::parse_word("8'b00100010"), Word(34, 8));
  EXPECT_EQ(hm::parse_word("8'd34"), Word(34, 8));
  EXPECT_EQ(hm::parse_word("8'h22"), Word(34, 8));
  EXPECT_EQ(hm::parse_word("0b00100010"), Word(34, 8));
  EXPECT_EQ(hm::parse_word("0x22"), Word(34, 8));
  EXPECT_EQ(hm::parse_word("34", 8), Word(34, 8));
  EXPECT_THROW((void)hm::parse_word("34"), hm::ParseError);
  EXPECT_THROW((void)hm::parse_word("4'd34"), hm::ParseError);
  EXPECT_THROW((void)hm::parse_word("8'q1"), hm::ParseError);
  EXPECT_THROW((void)hm::parse_word("0b102"), hm::ParseError);
  EXPECT_THROW((void)hm::parse_word(""), hm::ParseError);
}

TEST(Text, RoundTrips) {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 500; ++n) {
    const Word w(rng(), 1 + static_cast<unsigned>(rng() % 64));
    for (auto radix : {hm::Radix::Binary, hm::Radix::Decimal, hm::Radix::Hex}) {
      EXPECT_EQ(hm::parse_word(hm::to_string(w, radix)), w);
    }
  }
}
