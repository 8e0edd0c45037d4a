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

#include "hybridmul/datapath.hpp"
#include "reference_array.hpp"

namespace hm = hybridmul;
using hm::Arch;
using hm::Word;
using hybridmul::testing::ReferenceArray;

namespace {

constexpr Arch kArchs[] = {Arch::Conventional, Arch::Booth, Arch::Hybrid};

hm::ArrayInput input_for(Arch arch, const hm::Geometry& g, std::uint64_t a, std::uint64_t b) {
  return hm::array_input(arch, g, Word(a, g.width), Word(b, g.width));
}

// Toggles of frozen rows, recomputed from node snapshots.
std::uint64_t frozen_row_toggles(const hm::ArrayState& before, const hm::ArrayState& after,
                                 const hm::FreezeMask& mask) {
  std::uint64_t t = 0;
  const hm::Geometry& g = after.geometry();
  for (unsigned r = 0; r < g.rows(); ++r) {
    if (!mask.rows[r]) continue;
    for (std::size_t i = after.row_base(r); i < after.row_base(r + 1); ++i) {
      t += before.nodes()[i] != after.nodes()[i] ? 1 : 0;
    }
  }
  return t;
}

}  // namespace

TEST(FullAdder, TruthTable) {
  for (int v = 0; v < 8; ++v) {
    const bool a = (v & 4) != 0;
    const bool b = (v & 2) != 0;
    const bool c = (v & 1) != 0;
    const hm::CellOutputs out = hm::full_adder(a, b, c);
    EXPECT_EQ(out.sum, ((a + b + c) & 1) != 0);
    EXPECT_EQ(out.cout, (a + b + c) >= 2);
  }
  EXPECT_EQ(hm::full_adder(true, true, false), (hm::CellOutputs{false, true}));
  EXPECT_EQ(hm::full_adder(false, false, false), (hm::CellOutputs{false, false}));
  EXPECT_EQ(hm::full_adder(true, true, true), (hm::CellOutputs{true, true}));
}

TEST(Geometry, RowCounts) {
  EXPECT_EQ(hm::geometry_for(Arch::Conventional, 8).rows(), 8u);
  EXPECT_EQ(hm::geometry_for(Arch::Booth, 8).rows(), 6u);
  EXPECT_EQ(hm::geometry_for(Arch::Hybrid, 8).rows(), 7u);
  EXPECT_EQ(hm::geometry_for(Arch::Conventional, 8).columns, 16u);
  const hm::Geometry conv = hm::geometry_for(Arch::Conventional, 8);
  EXPECT_EQ(conv.spans[0], (hm::ColumnSpan{0, 7}));
  EXPECT_EQ(conv.spans[1], (hm::ColumnSpan{1, 8}));
  EXPECT_EQ(conv.spans[7], (hm::ColumnSpan{7, 14}));
  EXPECT_THROW((void)hm::geometry_for(Arch::Hybrid, 3), hm::Error);
}

TEST(Geometry, NodeCountFixedPerShape) {
  for (Arch arch : kArchs) {
    for (unsigned w = 4; w <= 32; ++w) {
      const hm::Geometry g = hm::geometry_for(arch, w);
      const hm::ArrayState s(g);
      EXPECT_EQ(s.nodes().size(), hm::node_count(g));
      EXPECT_EQ(s.final_adder_base() + std::size_t{g.columns} * hm::node::kPerCell,
                hm::node_count(g));
    }
  }
}

TEST(Evaluate, MatchesReferenceFromReset) {
  // T1: 65 x 34 on the conventional array, first evaluation after reset.
  const hm::Geometry g = hm::geometry_for(Arch::Conventional, 8);
  ReferenceArray ref(g);
  const hm::ArrayInput in = input_for(Arch::Conventional, g, 65, 34);
  const ReferenceArray::Step expected = ref.evaluate(in);
  EXPECT_EQ(expected.product, 2210u);
  EXPECT_EQ(expected.toggles, 36u);

  hm::ArrayState state(g);
  const auto [bits, delta] = hm::evaluate(state, in, hm::FreezeMask::none(g));
  EXPECT_EQ(bits, 2210u);
  EXPECT_EQ(delta.total, expected.toggles);
  EXPECT_EQ(delta.per_row, expected.per_row);
  EXPECT_EQ(std::vector<std::uint8_t>(state.nodes().begin(), state.nodes().end()), ref.nodes());
}

TEST(Evaluate, MatchesReferenceOnStreams) {
  std::mt19937_64 rng(21);
  for (Arch arch : kArchs) {
    for (unsigned w : {4u, 5u, 8u, 11u, 16u, 32u}) {
      const hm::Geometry g = hm::geometry_for(arch, w);
      ReferenceArray ref(g);
      hm::ArrayState state(g);
      for (int n = 0; n < 300; ++n) {
        const std::uint64_t a = rng() >> (64 - w);
        std::uint64_t b = rng() >> (64 - w);
        if (n % 3 == 0) b &= rng() >> (64 - w);  // sparser multipliers too
        const hm::ArrayInput in = input_for(arch, g, a, b);
        const ReferenceArray::Step expected = ref.evaluate(in);
        const auto [bits, delta] = hm::evaluate(state, in, hm::FreezeMask::none(g));
        ASSERT_EQ(expected.product, a * b) << hm::to_string(arch) << " w" << w;
        ASSERT_EQ(bits, a * b) << hm::to_string(arch) << " w" << w << " " << a << "x" << b;
        ASSERT_EQ(delta.per_row, expected.per_row);
      }
      EXPECT_EQ(std::vector<std::uint8_t>(state.nodes().begin(), state.nodes().end()),
                ref.nodes());
    }
  }
}

TEST(Evaluate, RepeatedInputDoesNotToggle) {
  for (Arch arch : kArchs) {
    const hm::Geometry g = hm::geometry_for(arch, 8);
    hm::ArrayState state(g);
    const hm::ArrayInput in = input_for(arch, g, 65, 34);
    for (bool ssst : {false, true}) {
      const hm::FreezeMask mask = ssst ? hm::detect_freeze(in, g) : hm::FreezeMask::none(g);
      (void)hm::evaluate(state, in, mask);
      EXPECT_EQ(hm::evaluate(state, in, mask).second.total, 0u);
    }
  }
}

TEST(Evaluate, FullFreezeFromNonzeroStateIsSilent) {
  for (Arch arch : kArchs) {
    const hm::Geometry g = hm::geometry_for(arch, 8);
    hm::ArrayState state(g);
    (void)hm::evaluate(state, input_for(arch, g, 201, 173), hm::FreezeMask::none(g));
    const hm::ArrayInput zero = input_for(arch, g, 201, 0);
    const hm::FreezeMask mask = hm::detect_freeze(zero, g);
    EXPECT_EQ(mask.frozen_rows(), g.rows());
    EXPECT_EQ(mask.frozen_columns(), g.columns);
    const auto [bits, delta] = hm::evaluate(state, zero, mask);
    EXPECT_EQ(bits, 0u);
    EXPECT_EQ(delta.total, 0u);
  }
}

TEST(Evaluate, RejectsGeometryMismatch) {
  const hm::Geometry g = hm::geometry_for(Arch::Conventional, 8);
  hm::ArrayState state(g);
  hm::ArrayInput in = input_for(Arch::Conventional, g, 1, 1);
  in.buses.pop_back();
  EXPECT_THROW((void)hm::evaluate(state, in, hm::FreezeMask::none(g)), hm::GeometryError);
  const hm::PPMatrix wide = hm::conventional_pp(Word(3, 16), Word(3, 16));
  EXPECT_THROW((void)hm::row_buses(wide, g), hm::GeometryError);
  const hm::PPMatrix conv = hm::conventional_pp(Word(3, 8), Word(3, 8));
  EXPECT_THROW((void)hm::row_buses(conv, hm::geometry_for(Arch::Booth, 8)), hm::GeometryError);
}

TEST(DetectFreeze, Examples) {
  const hm::Geometry conv = hm::geometry_for(Arch::Conventional, 8);
  const hm::FreezeMask c = hm::detect_freeze(input_for(Arch::Conventional, conv, 65, 34), conv);
  EXPECT_EQ(c.frozen_rows(), 6u);
  EXPECT_FALSE(c.rows[1]);
  EXPECT_FALSE(c.rows[5]);

  // Hybrid: the category-D term pair occupies two rows and the rest freeze.
  const hm::Geometry hyb = hm::geometry_for(Arch::Hybrid, 8);
  const hm::FreezeMask h = hm::detect_freeze(input_for(Arch::Hybrid, hyb, 65, 34), hyb);
  EXPECT_EQ(h.frozen_rows(), hyb.rows() - 2);

  // A single shifted multiplicand: one active row.
  const hm::FreezeMask one = hm::detect_freeze(input_for(Arch::Hybrid, hyb, 65, 32), hyb);
  EXPECT_EQ(one.frozen_rows(), hyb.rows() - 1);

  const hm::FreezeMask none = hm::detect_freeze(input_for(Arch::Conventional, conv, 255, 255), conv);
  EXPECT_EQ(none.frozen_rows(), 0u);
}

TEST(DetectFreeze, ColumnsMatchFinalAdderInputs) {
  const hm::Geometry g = hm::geometry_for(Arch::Conventional, 8);
  // 1 x 1: only column 0 carries a summand bit.
  const hm::FreezeMask m = hm::detect_freeze(input_for(Arch::Conventional, g, 1, 1), g);
  EXPECT_FALSE(m.columns[0]);
  for (unsigned c = 1; c < g.columns; ++c) EXPECT_TRUE(m.columns[c]) << c;
}

TEST(Ssst, TransparentExhaustiveWidth6) {
  for (Arch arch : kArchs) {
    const hm::Geometry g = hm::geometry_for(arch, 6);
    hm::ArrayState gated(g);
    for (std::uint64_t a = 0; a < 64; ++a) {
      for (std::uint64_t b = 0; b < 64; ++b) {
        const hm::ArrayInput in = input_for(arch, g, a, b);
        const hm::ArrayState before = gated;
        const hm::FreezeMask mask = hm::detect_freeze(in, g);
        const auto [bits, delta] = hm::evaluate(gated, in, mask);
        ASSERT_EQ(bits, a * b) << hm::to_string(arch);
        for (unsigned r = 0; r < g.rows(); ++r) {
          if (mask.rows[r]) ASSERT_EQ(delta.per_row[r], 0u);
        }
        ASSERT_EQ(frozen_row_toggles(before, gated, mask), 0u);
      }
    }
  }
}

TEST(Ssst, TransparentSampledWidth8AndFrozenRowsSilent) {
  std::mt19937_64 rng(99);
  for (Arch arch : kArchs) {
    const hm::Geometry g = hm::geometry_for(arch, 8);
    hm::ArrayState gated(g);
    hm::ArrayState plain(g);
    for (int n = 0; n < 5000; ++n) {
      const std::uint64_t a = rng() >> 56;
      const std::uint64_t b = (rng() >> 56) & (n % 2 ? 0xFF : rng() >> 56);
      const hm::ArrayInput in = input_for(arch, g, a, b);
      const hm::ArrayState before = gated;
      const hm::FreezeMask mask = hm::detect_freeze(in, g);
      ASSERT_EQ(hm::evaluate(gated, in, mask).first, a * b);
      ASSERT_EQ(hm::evaluate(plain, in, hm::FreezeMask::none(g)).first, a * b);
      ASSERT_EQ(frozen_row_toggles(before, gated, mask), 0u);
    }
  }
}

TEST(Ssst, HammingSymmetry) {
  for (Arch arch : kArchs) {
    const hm::Geometry g = hm::geometry_for(arch, 8);
    const hm::ArrayInput x = input_for(arch, g, 65, 34);
    const hm::ArrayInput y = input_for(arch, g, 200, 77);
    const hm::FreezeMask none = hm::FreezeMask::none(g);
    hm::ArrayState s1(g);
    (void)hm::evaluate(s1, x, none);
    const std::uint64_t xy = hm::evaluate(s1, y, none).second.total;
    hm::ArrayState s2(g);
    (void)hm::evaluate(s2, y, none);
    const std::uint64_t yx = hm::evaluate(s2, x, none).second.total;
    EXPECT_EQ(xy, yx);
  }
}

TEST(SimulateStream, IdenticalPairsStopToggling) {
  const std::vector<hm::OperandPair> pairs(10, {65, 34});
  for (Arch arch : kArchs) {
    std::vector<std::uint64_t> totals;
    const hm::ToggleReport r = hm::simulate_stream(
        pairs, arch, 8, true, [&](std::size_t, const hm::ToggleDelta& d) { totals.push_back(d.total); });
    EXPECT_EQ(r.operations_simulated, 10u);
    EXPECT_GT(totals[0], 0u);
    for (std::size_t i = 1; i < totals.size(); ++i) EXPECT_EQ(totals[i], 0u);
    EXPECT_EQ(r.total_toggles, totals[0]);
  }
}

TEST(SimulateStream, SinglePairOrdering) {
  const std::vector<hm::OperandPair> pair = {{65, 34}};
  const auto conv = hm::simulate_stream(pair, Arch::Conventional, 8, false).total_toggles;
  const auto booth = hm::simulate_stream(pair, Arch::Booth, 8, false).total_toggles;
  const auto hyb = hm::simulate_stream(pair, Arch::Hybrid, 8, true).total_toggles;
  RecordProperty("conventional", std::to_string(conv));
  RecordProperty("booth", std::to_string(booth));
  RecordProperty("hybrid", std::to_string(hyb));
  EXPECT_LT(hyb, conv);
  EXPECT_LT(hyb, booth);
}

TEST(SimulateStream, SignedOperandsUseMagnitudes) {
  const std::vector<hm::OperandPair> pairs = {{-65, 34}, {65, -34}, {-255, -255}, {0, -7}};
  for (Arch arch : kArchs) {
    EXPECT_NO_THROW((void)hm::simulate_stream(pairs, arch, 8, true));
  }
  EXPECT_THROW((void)hm::simulate_stream({}, Arch::Hybrid, 8, true), hm::Error);
}

TEST(SimulateStream, ReportSumsPerRow) {
  std::mt19937_64 rng(4);
  std::vector<hm::OperandPair> pairs;
  for (int n = 0; n < 200; ++n) {
    pairs.emplace_back(static_cast<std::int64_t>(rng() >> 56), static_cast<std::int64_t>(rng() >> 56));
  }
  for (Arch arch : kArchs) {
    const hm::ToggleReport r = hm::simulate_stream(pairs, arch, 8, true);
    std::uint64_t s = 0;
    for (std::uint64_t t : r.per_row_toggles) s += t;
    EXPECT_EQ(s, r.total_toggles);
    EXPECT_EQ(r.per_row_toggles.size(), hm::geometry_for(arch, 8).rows() + 1);
  }
}
