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
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "hybridmul/bitnum.hpp"
#include "hybridmul/encoding.hpp"

namespace hybridmul {

class GeometryError : public Error {
 public:
  using Error::Error;
};

class MismatchError : public Error {
 public:
  MismatchError(const std::string& what, std::int64_t a, std::int64_t b)
      : Error(what), a_(a), b_(b) {}
  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }

 private:
  std::int64_t a_;
  std::int64_t b_;
};

struct CellOutputs {
  bool sum = false;
  bool cout = false;
  friend bool operator==(const CellOutputs&, const CellOutputs&) = default;
};

/// Carry is the majority of the inputs; sum is their odd parity.
constexpr CellOutputs full_adder(bool a, bool b, bool cin) {
  return {(!a && !b && cin) || (!a && b && !cin) || (a && !b && !cin) || (a && b && cin),
          (a && b) || (b && cin) || (cin && a)};
}

/// Columns [lo, hi] a carry-save row has cells for.
struct ColumnSpan {
  unsigned lo = 0;
  unsigned hi = 0;

  unsigned size() const { return hi - lo + 1; }
  std::uint64_t mask() const { return low_mask(hi + 1) & ~low_mask(lo); }
  friend bool operator==(const ColumnSpan&, const ColumnSpan&) = default;
};

/// Shape of the adder array: one carry-save row per partial-product bus,
/// followed by a ripple carry-propagate adder across all `columns` of the
/// 2 * width product. Row r adds its bus to the (sum, carry) pair coming
/// out of row r - 1; the pair entering row 0 is constant zero. A row only
/// has cells in its span: the columns its bus can reach, extended upward
/// to every column the incoming pair can reach. Outside the span the pair
/// passes through on wires.
struct Geometry {
  unsigned width = 0;
  unsigned columns = 0;
  std::vector<ColumnSpan> spans;  // one per row

  unsigned rows() const { return static_cast<unsigned>(spans.size()); }
  friend bool operator==(const Geometry&, const Geometry&) = default;
};

/// Array each architecture needs at `width`:
///   conventional: one row per multiplier bit, bus span [r, r + width)
///   booth: one row per recoded digit (span of a (width + 2)-bit signed
///     term at weight 2r) plus a full-width sign-correction row
///   hybrid: enough full-width rows for the worst split multiplier
Geometry geometry_for(Arch arch, unsigned width);

/// Node layout. Every row block holds the row's partial-product bus bits
/// (one per span column) followed by a/b/cin/sum/cout of each of its cells;
/// the final adder block holds a/b/cin/sum/cout of each column.
namespace node {
inline constexpr unsigned kA = 0;
inline constexpr unsigned kB = 1;
inline constexpr unsigned kCin = 2;
inline constexpr unsigned kSum = 3;
inline constexpr unsigned kCout = 4;
inline constexpr unsigned kPerCell = 5;
}  // namespace node

std::size_t node_count(const Geometry& g);

/// Per-row bypass flags (rows) and per-column bypass flags for the final
/// adder (columns).
struct FreezeMask {
  std::vector<bool> rows;
  std::vector<bool> columns;

  static FreezeMask none(const Geometry& g);
  std::size_t frozen_rows() const;
  std::size_t frozen_columns() const;
};

/// What the array sees for one multiplication: a bus per row plus the
/// left shift applied to the final adder's output.
struct ArrayInput {
  std::vector<std::uint64_t> buses;
  unsigned result_shift = 0;
};

/// Partial-product buses for each array row. Plain rows enter as
/// bits << (weight - result_shift). Booth rows use the sign-extension-free
/// form ((bits ^ s) | ~s << L) << weight with L = bits.width(); the
/// constants it needs (s << weight and -2^(L + weight) per nonzero Booth
/// row) are summed into a sign-correction bus on the last array row.
/// Throws GeometryError when the matrix does not fit.
ArrayInput row_buses(const PPMatrix& pp, const Geometry& g, unsigned result_shift = 0);

/// Array input an architecture produces for |a| x |b|. The hybrid datapath
/// adds its terms relative to the lowest one and shifts the sum back
/// afterwards, as its shift/add recipe does.
ArrayInput array_input(Arch arch, const Geometry& g, const Word& multiplicand,
                       const Word& multiplier);

/// Rows whose bus is all zero are bypassed; final-adder columns whose sum
/// and carry inputs are both zero (after the bypassed reduction) are
/// bypassed too.
FreezeMask detect_freeze(std::span<const std::uint64_t> buses, const Geometry& g);
FreezeMask detect_freeze(const ArrayInput& input, const Geometry& g);

struct ToggleDelta {
  std::uint64_t total = 0;
  std::vector<std::uint64_t> per_row;  // rows, then the final adder
  std::uint64_t frozen_cells = 0;
};

/// Mutable array state: the value of every counted node after the last
/// evaluation. Starts all zero.
class ArrayState {
 public:
  explicit ArrayState(const Geometry& g);

  const Geometry& geometry() const { return geometry_; }
  std::span<const std::uint8_t> nodes() const { return nodes_; }
  std::size_t row_base(unsigned row) const { return row_base_[row]; }
  std::size_t final_adder_base() const { return row_base_.back(); }

  void reset();

 private:
  friend std::pair<std::uint64_t, ToggleDelta> evaluate(ArrayState&, const ArrayInput&,
                                                        const FreezeMask&);
  Geometry geometry_;
  std::vector<std::size_t> row_base_;  // rows + 1 entries
  std::vector<std::uint8_t> nodes_;
};

/// Zero-delay evaluation of one input vector in topological order.
/// A frozen row keeps every node it owns and forwards its incoming
/// (sum, carry) pair unchanged. A frozen final-adder column keeps its
/// nodes, passes its carry-in straight to the product bit and emits a
/// zero carry. Returns the product bits (final adder output shifted by
/// result_shift, mod 2^columns) and the toggles.
std::pair<std::uint64_t, ToggleDelta> evaluate(ArrayState& state, const ArrayInput& input,
                                               const FreezeMask& mask);

/// Convenience: evaluate a raw partial-product matrix (no result shift).
std::pair<std::uint64_t, ToggleDelta> evaluate(ArrayState& state, const PPMatrix& pp,
                                               const FreezeMask& mask);

/// Partial products an architecture feeds its array for |a| x |b|.
PPMatrix array_pp(Arch arch, const Word& multiplicand, const Word& multiplier);

struct ToggleReport {
  std::uint64_t total_toggles = 0;
  std::vector<std::uint64_t> per_row_toggles;
  std::uint64_t frozen_cell_evaluations = 0;
  std::uint64_t operations_simulated = 0;
};

using OperandPair = std::pair<std::int64_t, std::int64_t>;
using ToggleObserver = std::function<void(std::size_t op_index, const ToggleDelta&)>;

/// Streams operand pairs through one array from the reset state. With
/// `ssst` set, each evaluation uses the detect_freeze mask. Every product
/// is checked against native multiplication; a mismatch throws
/// MismatchError.
ToggleReport simulate_stream(std::span<const OperandPair> inputs, Arch arch, unsigned width,
                             bool ssst, const ToggleObserver& observer = {});

}  // namespace hybridmul
