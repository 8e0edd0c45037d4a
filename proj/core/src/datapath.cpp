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

#include "hybridmul/datapath.hpp"

#include <algorithm>
#include <bit>

namespace hybridmul {

namespace {

unsigned hybrid_rows(unsigned width) {
  const unsigned half = (width + 1) / 2;
  const unsigned booth_half = half >= 4 ? booth_max_digits(half) : 0;
  const unsigned per_half = std::max(std::min(3U, half), booth_half);
  return std::max(3U, 2 * per_half) + (booth_half > 0 ? 1U : 0U);
}

bool bus_bit(std::uint64_t bus, unsigned c) { return ((bus >> c) & 1U) != 0; }

std::uint64_t majority(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return (a & b) | (b & c) | (c & a);
}

}  // namespace

Geometry geometry_for(Arch arch, unsigned width) {
  check_operand_width(width);
  Geometry g;
  g.width = width;
  g.columns = 2 * width;
  const unsigned top = g.columns - 1;

  std::vector<ColumnSpan> bus;
  switch (arch) {
    case Arch::Conventional:
      for (unsigned r = 0; r < width; ++r) bus.push_back({r, r + width - 1});
      break;
    case Arch::Booth: {
      const unsigned digits = booth_max_digits(width);
      for (unsigned r = 0; r < digits; ++r) {
        bus.push_back({std::min(2 * r, top), std::min(2 * r + width + 1, top)});
      }
      bus.push_back({0, top});
      break;
    }
    case Arch::Hybrid:
      bus.assign(hybrid_rows(width), ColumnSpan{0, top});
      break;
  }

  // Extend each span up to the highest column the incoming pair can reach.
  int reach = -1;
  for (const ColumnSpan& b : bus) {
    ColumnSpan span = b;
    span.hi = std::max<unsigned>(b.hi, reach < 0 ? 0U : static_cast<unsigned>(reach));
    g.spans.push_back(span);
    reach = static_cast<int>(std::min(span.hi + 1, top));
  }
  return g;
}

std::size_t node_count(const Geometry& g) {
  std::size_t n = std::size_t{g.columns} * node::kPerCell;
  for (const ColumnSpan& s : g.spans) n += std::size_t{s.size()} * (1 + node::kPerCell);
  return n;
}

FreezeMask FreezeMask::none(const Geometry& g) {
  return {std::vector<bool>(g.rows(), false), std::vector<bool>(g.columns, false)};
}

std::size_t FreezeMask::frozen_rows() const {
  return static_cast<std::size_t>(std::count(rows.begin(), rows.end(), true));
}

std::size_t FreezeMask::frozen_columns() const {
  return static_cast<std::size_t>(std::count(columns.begin(), columns.end(), true));
}

ArrayInput row_buses(const PPMatrix& pp, const Geometry& g, unsigned result_shift) {
  if (pp.operand_width != g.width) {
    throw GeometryError("partial products for width " + std::to_string(pp.operand_width) +
                        " on a width-" + std::to_string(g.width) + " array");
  }
  const bool has_booth = std::any_of(pp.rows.begin(), pp.rows.end(),
                                     [](const PPRow& r) { return r.kind == PPRow::Kind::Booth; });
  const std::size_t needed = pp.rows.size() + (has_booth ? 1 : 0);
  if (needed > g.rows()) {
    throw GeometryError(std::to_string(needed) + " partial-product rows on a " +
                        std::to_string(g.rows()) + "-row array");
  }

  const std::uint64_t mask = low_mask(g.columns);
  auto at = [](std::uint64_t v, unsigned weight) { return weight >= 64 ? 0 : v << weight; };

  ArrayInput in;
  in.result_shift = result_shift;
  in.buses.assign(g.rows(), 0);
  std::uint64_t correction = 0;
  for (std::size_t r = 0; r < pp.rows.size(); ++r) {
    const PPRow& row = pp.rows[r];
    if (row.is_zero) continue;
    if (row.weight < result_shift) {
      throw GeometryError("result shift exceeds a partial-product weight");
    }
    const unsigned weight = row.weight - result_shift;
    std::uint64_t bus = 0;
    if (row.kind == PPRow::Kind::Plain) {
      bus = at(row.bits.bits(), weight);
      if (row.negate || (bus & ~mask) != 0 || (bus >> weight) != row.bits.bits()) {
        throw GeometryError("plain partial-product row exceeds the array columns");
      }
    } else {
      const unsigned len = row.bits.width();
      const std::uint64_t s = row.negate ? 1 : 0;
      const std::uint64_t body = (row.bits.bits() ^ (s ? low_mask(len) : 0)) | ((s ^ 1) << len);
      bus = at(body, weight) & mask;
      correction += at(s, weight);
      correction -= at(1, len + weight);
    }
    if ((bus & ~g.spans[r].mask()) != 0) {
      throw GeometryError("partial-product row " + std::to_string(r) +
                          " reaches outside its array span");
    }
    in.buses[r] = bus;
  }
  if (has_booth) in.buses[g.rows() - 1] = correction & mask;
  return in;
}

ArrayInput array_input(Arch arch, const Geometry& g, const Word& multiplicand,
                       const Word& multiplier) {
  const PPMatrix pp = array_pp(arch, multiplicand, multiplier);
  unsigned shift = 0;
  if (arch == Arch::Hybrid) {
    unsigned lowest = ~0U;
    for (const PPRow& r : pp.rows) {
      if (!r.is_zero) lowest = std::min(lowest, r.weight);
    }
    if (lowest != ~0U) shift = lowest;
  }
  return row_buses(pp, g, shift);
}

FreezeMask detect_freeze(std::span<const std::uint64_t> buses, const Geometry& g) {
  if (buses.size() != g.rows()) throw GeometryError("bus count does not match array rows");
  FreezeMask m = FreezeMask::none(g);
  const std::uint64_t mask = low_mask(g.columns);
  std::uint64_t s = 0;
  std::uint64_t c = 0;
  for (unsigned r = 0; r < g.rows(); ++r) {
    if (buses[r] == 0) {
      m.rows[r] = true;
      continue;
    }
    const std::uint64_t span = g.spans[r].mask();
    const std::uint64_t a = s & span;
    const std::uint64_t b = c & span;
    s = (s & ~span) | (a ^ b ^ buses[r]);
    c = ((c & ~span) | (majority(a, b, buses[r]) << 1)) & mask;
  }
  for (unsigned col = 0; col < g.columns; ++col) {
    m.columns[col] = !bus_bit(s | c, col);
  }
  return m;
}

FreezeMask detect_freeze(const ArrayInput& input, const Geometry& g) {
  return detect_freeze(input.buses, g);
}

ArrayState::ArrayState(const Geometry& g) : geometry_(g), nodes_(node_count(g), 0) {
  if (g.columns == 0 || g.columns > 64) throw GeometryError("array columns outside [1, 64]");
  std::size_t base = 0;
  for (const ColumnSpan& s : g.spans) {
    if (s.lo > s.hi || s.hi >= g.columns) throw GeometryError("row span outside the array");
    row_base_.push_back(base);
    base += std::size_t{s.size()} * (1 + node::kPerCell);
  }
  row_base_.push_back(base);
}

void ArrayState::reset() { std::fill(nodes_.begin(), nodes_.end(), 0); }

std::pair<std::uint64_t, ToggleDelta> evaluate(ArrayState& state, const ArrayInput& input,
                                               const FreezeMask& mask) {
  const Geometry& g = state.geometry_;
  const std::span<const std::uint64_t> buses = input.buses;
  if (buses.size() != g.rows() || mask.rows.size() != g.rows() ||
      mask.columns.size() != g.columns) {
    throw GeometryError("buses or freeze mask do not match the array geometry");
  }
  const unsigned cols = g.columns;

  ToggleDelta delta;
  delta.per_row.assign(g.rows() + 1, 0);

  std::uint8_t* nodes = state.nodes_.data();
  auto set = [&](std::size_t idx, bool value, std::uint64_t& counter) {
    const auto v = static_cast<std::uint8_t>(value);
    if (nodes[idx] != v) {
      nodes[idx] = v;
      ++counter;
    }
  };

  // (sum, carry) pair flowing down the array; carry[c] enters column c.
  std::vector<std::uint8_t> sum(cols, 0);
  std::vector<std::uint8_t> carry(cols, 0);

  for (unsigned r = 0; r < g.rows(); ++r) {
    const ColumnSpan span = g.spans[r];
    if ((buses[r] & ~span.mask()) != 0) {
      throw GeometryError("bus of row " + std::to_string(r) + " reaches outside its span");
    }
    if (mask.rows[r]) {
      delta.frozen_cells += span.size();
      continue;
    }
    const std::size_t bus_base = state.row_base(r);
    const std::size_t cell_base = bus_base + span.size();
    std::uint64_t& counter = delta.per_row[r];
    // Carries land one column up, so walk the span from the top down.
    for (unsigned c = span.hi + 1; c-- > span.lo;) {
      const unsigned offset = c - span.lo;
      const bool pp_bit = bus_bit(buses[r], c);
      set(bus_base + offset, pp_bit, counter);
      const bool a = sum[c] != 0;
      const bool b = carry[c] != 0;
      const CellOutputs out = full_adder(a, b, pp_bit);
      const std::size_t cell = cell_base + std::size_t{offset} * node::kPerCell;
      set(cell + node::kA, a, counter);
      set(cell + node::kB, b, counter);
      set(cell + node::kCin, pp_bit, counter);
      set(cell + node::kSum, out.sum, counter);
      set(cell + node::kCout, out.cout, counter);
      sum[c] = out.sum;
      if (c + 1 < cols) carry[c + 1] = out.cout;
    }
    carry[span.lo] = 0;
  }

  const std::size_t base = state.final_adder_base();
  std::uint64_t& counter = delta.per_row[g.rows()];
  std::uint64_t product = 0;
  bool ripple = false;
  for (unsigned c = 0; c < cols; ++c) {
    if (mask.columns[c]) {
      ++delta.frozen_cells;
      if (ripple) product |= std::uint64_t{1} << c;
      ripple = false;
      continue;
    }
    const bool a = sum[c] != 0;
    const bool b = carry[c] != 0;
    const CellOutputs out = full_adder(a, b, ripple);
    const std::size_t cell = base + std::size_t{c} * node::kPerCell;
    set(cell + node::kA, a, counter);
    set(cell + node::kB, b, counter);
    set(cell + node::kCin, ripple, counter);
    set(cell + node::kSum, out.sum, counter);
    set(cell + node::kCout, out.cout, counter);
    if (out.sum) product |= std::uint64_t{1} << c;
    ripple = out.cout;
  }

  for (std::uint64_t t : delta.per_row) delta.total += t;
  const unsigned shift = input.result_shift;
  product = shift >= 64 ? 0 : (product << shift) & low_mask(cols);
  return {product, std::move(delta)};
}

std::pair<std::uint64_t, ToggleDelta> evaluate(ArrayState& state, const PPMatrix& pp,
                                               const FreezeMask& mask) {
  return evaluate(state, row_buses(pp, state.geometry()), mask);
}

PPMatrix array_pp(Arch arch, const Word& multiplicand, const Word& multiplier) {
  switch (arch) {
    case Arch::Conventional:
      return conventional_pp(multiplicand, multiplier);
    case Arch::Booth: {
      PPMatrix pp = booth_pp(multiplicand, booth_recode(multiplier));
      pp.operand_width = multiplier.width();
      return pp;
    }
    case Arch::Hybrid:
      return hybrid_pp(multiplicand, multiplier);
  }
  return {};
}

ToggleReport simulate_stream(std::span<const OperandPair> inputs, Arch arch, unsigned width,
                             bool ssst, const ToggleObserver& observer) {
  if (inputs.empty()) throw Error("simulate_stream needs at least one operand pair");
  const Geometry g = geometry_for(arch, width);
  ArrayState state(g);
  const FreezeMask no_freeze = FreezeMask::none(g);

  ToggleReport report;
  report.per_row_toggles.assign(g.rows() + 1, 0);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto [a, b] = inputs[i];
    const SignMag sa = to_sign_magnitude(a, width);
    const SignMag sb = to_sign_magnitude(b, width);
    const ArrayInput input = array_input(arch, g, sa.magnitude, sb.magnitude);
    const FreezeMask mask = ssst ? detect_freeze(input, g) : no_freeze;
    auto [bits, delta] = evaluate(state, input, mask);

    const std::uint64_t expected = sa.magnitude.bits() * sb.magnitude.bits();
    if (bits != expected) {
      throw MismatchError(to_string(arch) + " array: " + std::to_string(a) + " x " +
                              std::to_string(b) + " gave " + std::to_string(bits) +
                              ", expected " + std::to_string(expected),
                          a, b);
    }
    report.total_toggles += delta.total;
    report.frozen_cell_evaluations += delta.frozen_cells;
    for (std::size_t r = 0; r < delta.per_row.size(); ++r) {
      report.per_row_toggles[r] += delta.per_row[r];
    }
    ++report.operations_simulated;
    if (observer) observer(i, delta);
  }
  return report;
}

}  // namespace hybridmul
