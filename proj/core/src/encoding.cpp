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

#include "hybridmul/encoding.hpp"

#include <algorithm>
#include <cctype>

namespace hybridmul {

std::string to_string(Arch arch) {
  switch (arch) {
    case Arch::Conventional:
      return "conventional";
    case Arch::Booth:
      return "booth";
    case Arch::Hybrid:
      return "hybrid";
  }
  return {};
}

Arch parse_arch(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "conventional" || lower == "conv") return Arch::Conventional;
  if (lower == "booth") return Arch::Booth;
  if (lower == "hybrid") return Arch::Hybrid;
  throw Error("unknown architecture '" + std::string(name) + "'");
}

std::string to_string(CategoryKind kind) {
  switch (kind) {
    case CategoryKind::Zero:
      return "Zero";
    case CategoryKind::A:
      return "A";
    case CategoryKind::B:
      return "B";
    case CategoryKind::C:
      return "C";
    case CategoryKind::D:
      return "D";
    case CategoryKind::E:
      return "E";
    case CategoryKind::F:
      return "F";
    case CategoryKind::Split:
      return "Split";
  }
  return {};
}

Category classify(const Word& multiplier) {
  const std::vector<unsigned> pos = one_positions(multiplier);
  switch (pos.size()) {
    case 0:
      return {CategoryKind::Zero};
    case 1:
      if (pos[0] == 1) return {CategoryKind::A};
      return {CategoryKind::B, pos[0]};
    case 2:
      if (pos[0] == 1) return {CategoryKind::C, pos[1]};
      return {CategoryKind::D, pos[0], pos[1] - pos[0]};
    case 3:
      return {pos[0] == 1 ? CategoryKind::E : CategoryKind::F, pos[0], pos[1], pos[2]};
    default:
      return {CategoryKind::Split};
  }
}

HybridPlan hybrid_plan(const Word& multiplier) {
  HybridPlan plan;
  plan.category = classify(multiplier);
  plan.multiplier_width = multiplier.width();
  const Category& c = plan.category;
  switch (c.kind) {
    case CategoryKind::Zero:
      plan.pp_count = 0;
      break;
    case CategoryKind::A:
      break;
    case CategoryKind::B:
      plan.steps = {Step::shl(c.i - 1)};
      break;
    case CategoryKind::C:
      plan.steps = {Step::shl(c.i - 1), Step::add_m()};
      break;
    case CategoryKind::D:
      plan.steps = {Step::shl(c.j), Step::add_m(), Step::shl(c.i - 1)};
      break;
    case CategoryKind::E:
    case CategoryKind::F:
      // Both categories end with a shift by i - 1: for F (i > 1) that is
      // what makes the recipe equal M * multiplier.
      plan.steps = {Step::shl(c.k - c.j), Step::add_m(), Step::shl(c.j - c.i), Step::add_m(),
                    Step::shl(c.i - 1)};
      break;
    case CategoryKind::Split:
      throw Error("multiplier " + to_string(multiplier) +
                  " has more than three set bits; split it first");
  }
  if (c.kind != CategoryKind::Zero) plan.pp_count = 1;
  plan.add_count = static_cast<unsigned>(std::count_if(
      plan.steps.begin(), plan.steps.end(), [](const Step& s) { return s.op == Step::Op::AddM; }));
  return plan;
}

Word execute_plan(const HybridPlan& plan, const Word& multiplicand) {
  const unsigned out_width =
      std::min(multiplicand.width() + plan.multiplier_width, kMaxWordWidth);
  if (plan.category.kind == CategoryKind::Zero) return Word(0, out_width);
  Word acc = multiplicand;
  for (const Step& s : plan.steps) {
    acc = s.op == Step::Op::ShiftLeft ? shift_left(acc, s.amount) : add(acc, multiplicand);
  }
  if (acc.width() > out_width) acc = Word(acc.bits(), out_width);
  return acc.zero_extend(out_width);
}

std::string format_plan(const HybridPlan& plan) {
  std::string out;
  for (const Step& s : plan.steps) {
    out += s.op == Step::Op::ShiftLeft ? "SHL " + std::to_string(s.amount) : std::string("ADD M");
    out += '\n';
  }
  return out;
}

SplitWord split(const Word& multiplier) {
  if (multiplier.width() % 2 != 0) {
    throw Error("cannot split odd-width multiplier " + to_string(multiplier));
  }
  const unsigned half = multiplier.width() / 2;
  return {multiplier.slice(half, half), multiplier.slice(0, half)};
}

std::int64_t BoothDigits::value() const {
  std::int64_t v = 0;
  for (std::size_t k = digits.size(); k-- > 0;) v = v * 4 + digits[k];
  return v;
}

unsigned booth_recoded_width(const Word& operand) {
  unsigned w = operand.width() + (operand.width() % 2);
  if (operand.bit(w)) w += 2;
  return w;
}

unsigned booth_max_digits(unsigned width) { return width / 2 + 1; }

BoothDigits booth_recode(const Word& operand) {
  BoothDigits out;
  out.recoded_width = booth_recoded_width(operand);
  const std::uint64_t b = operand.bits();
  auto bit = [b](int idx) -> int { return idx < 0 || idx >= 64 ? 0 : int((b >> idx) & 1U); };
  for (unsigned k = 0; k < out.recoded_width / 2; ++k) {
    const int hi = bit(int(2 * k + 1));
    const int mid = bit(int(2 * k));
    const int lo = bit(int(2 * k) - 1);
    out.digits.push_back(-2 * hi + mid + lo);
  }
  return out;
}

std::string format_booth(const BoothDigits& digits) {
  std::string out;
  for (std::size_t k = digits.digits.size(); k-- > 0;) {
    const int d = digits.digits[k];
    if (!out.empty()) out += ' ';
    out += d > 0 ? "+" + std::to_string(d) : d < 0 ? std::to_string(d) : std::string("0");
  }
  return out;
}

unsigned PPMatrix::nonzero_rows() const {
  return static_cast<unsigned>(
      std::count_if(rows.begin(), rows.end(), [](const PPRow& r) { return !r.is_zero; }));
}

std::uint64_t PPMatrix::sum() const {
  std::uint64_t acc = 0;
  for (const PPRow& r : rows) {
    const std::uint64_t term = r.weight >= 64 ? 0 : r.bits.bits() << r.weight;
    acc += r.negate ? std::uint64_t{0} - term : term;
  }
  return acc;
}

PPMatrix conventional_pp(const Word& multiplicand, const Word& multiplier) {
  PPMatrix pp;
  pp.operand_width = multiplier.width();
  for (unsigned k = 0; k < multiplier.width(); ++k) {
    const bool on = multiplier.bit(k + 1);
    PPRow row;
    row.bits = on ? multiplicand : Word(0, multiplicand.width());
    row.weight = k;
    row.is_zero = row.bits.is_zero();
    pp.rows.push_back(row);
  }
  return pp;
}

PPMatrix booth_pp(const Word& multiplicand, const BoothDigits& digits) {
  PPMatrix pp;
  pp.operand_width = multiplicand.width();
  for (std::size_t k = 0; k < digits.digits.size(); ++k) {
    const int d = digits.digits[k];
    const unsigned mag = static_cast<unsigned>(d < 0 ? -d : d);
    PPRow row;
    row.kind = PPRow::Kind::Booth;
    row.bits = Word(multiplicand.bits() * mag, multiplicand.width() + 1);
    row.weight = static_cast<unsigned>(2 * k);
    row.negate = d < 0;
    row.is_zero = row.bits.is_zero();
    pp.rows.push_back(row);
  }
  return pp;
}

namespace {

// Terms of a plan, in the order the recipe adds them (highest first).
void append_plan_terms(const Word& multiplicand, const Word& multiplier, unsigned offset,
                       PPMatrix& pp) {
  const std::vector<unsigned> pos = one_positions(multiplier);
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
    PPRow row;
    row.bits = multiplicand;
    row.weight = *it - 1 + offset;
    row.is_zero = multiplicand.is_zero();
    pp.rows.push_back(row);
  }
}

void append_half(const Word& multiplicand, const Word& half, unsigned offset, PPMatrix& pp) {
  if (popcount(half) > 3) {
    for (PPRow row : booth_pp(multiplicand, booth_recode(half)).rows) {
      row.weight += offset;
      pp.rows.push_back(row);
    }
  } else {
    append_plan_terms(multiplicand, half, offset, pp);
  }
}

Word split_ready(const Word& multiplier) {
  return multiplier.width() % 2 == 0 ? multiplier : multiplier.zero_extend(multiplier.width() + 1);
}

struct CoreResult {
  std::uint64_t product = 0;
  OpCounts counts;
};

unsigned nonzero_shifts(const HybridPlan& plan) {
  return static_cast<unsigned>(std::count_if(plan.steps.begin(), plan.steps.end(), [](const Step& s) {
    return s.op == Step::Op::ShiftLeft && s.amount != 0;
  }));
}

CoreResult plan_core(const Word& multiplicand, const Word& multiplier) {
  const HybridPlan plan = hybrid_plan(multiplier);
  return {execute_plan(plan, multiplicand).bits(),
          {plan.pp_count, plan.add_count, nonzero_shifts(plan)}};
}

CoreResult booth_core(const Word& multiplicand, const Word& multiplier) {
  const BoothDigits digits = booth_recode(multiplier);
  const std::uint64_t n = digits.digits.size();
  return {booth_pp(multiplicand, digits).sum(), {n, n - 1, n - 1}};
}

CoreResult hybrid_core(const Word& multiplicand, const Word& multiplier) {
  if (popcount(multiplier) <= 3) return plan_core(multiplicand, multiplier);
  const Word ready = split_ready(multiplier);
  const SplitWord halves = split(ready);
  const unsigned h = ready.width() / 2;
  auto half_core = [&](const Word& half) {
    return popcount(half) > 3 ? booth_core(multiplicand, half) : plan_core(multiplicand, half);
  };
  const CoreResult hi = half_core(halves.hi);
  const CoreResult lo = half_core(halves.lo);
  CoreResult out;
  out.product = (hi.product << h) + lo.product;
  out.counts = hi.counts;
  out.counts += lo.counts;
  out.counts.add_count += 1;    // recombination
  out.counts.shift_count += 1;  // hi << h
  return out;
}

}  // namespace

PPMatrix hybrid_pp(const Word& multiplicand, const Word& multiplier) {
  PPMatrix pp;
  pp.operand_width = multiplier.width();
  if (popcount(multiplier) <= 3) {
    append_plan_terms(multiplicand, multiplier, 0, pp);
    return pp;
  }
  const Word ready = split_ready(multiplier);
  const SplitWord halves = split(ready);
  append_half(multiplicand, halves.lo, 0, pp);
  append_half(multiplicand, halves.hi, ready.width() / 2, pp);
  return pp;
}

std::string Product::to_string() const {
  const std::string m = std::to_string(magnitude);
  return sign < 0 && magnitude != 0 ? "-" + m : m;
}

Product reference_product(const SignMag& a, const SignMag& b) {
  const std::uint64_t mag = a.magnitude.bits() * b.magnitude.bits();
  return {mag == 0 ? +1 : a.sign * b.sign, mag};
}

MultiplyResult multiply(const SignMag& a, const SignMag& b, Arch arch,
                        const MultiplyOptions& options) {
  Word multiplicand = a.magnitude;
  Word multiplier = b.magnitude;
  if (options.choose_sparser_multiplier && popcount(multiplicand) < popcount(multiplier)) {
    std::swap(multiplicand, multiplier);
  }

  CoreResult core;
  switch (arch) {
    case Arch::Conventional: {
      const std::uint64_t n = multiplier.width();
      core = {conventional_pp(multiplicand, multiplier).sum(), {n, n - 1, n - 1}};
      break;
    }
    case Arch::Booth:
      core = booth_core(multiplicand, multiplier);
      break;
    case Arch::Hybrid:
      core = hybrid_core(multiplicand, multiplier);
      break;
  }

  MultiplyResult out;
  out.counts = core.counts;
  out.product.magnitude = core.product;
  out.product.sign = core.product == 0 ? +1 : a.sign * b.sign;
  return out;
}

}  // namespace hybridmul
