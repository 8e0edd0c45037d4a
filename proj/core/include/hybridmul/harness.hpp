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
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "hybridmul/datapath.hpp"
#include "hybridmul/encoding.hpp"
#include "hybridmul/metrics.hpp"

namespace hybridmul {

/// Random operand distributions. All draws come from std::mt19937_64
/// seeded with the campaign seed; see random_pairs for the exact rules.
enum class Distribution {
  Uniform,   // both operands uniform over [0, 2^width)
  Uniform8,  // both operands uniform over [0, 255]
  Sparse,    // multiplicand uniform; multiplier has at most k set bits
  Signed,    // both operands uniform over (-2^width, 2^width)
};

struct DistributionSpec {
  Distribution kind = Distribution::Uniform;
  unsigned sparse_k = 3;

  /// "uniform", "uniform8", "signed", "sparse-K".
  static DistributionSpec parse(std::string_view text);
  std::string name() const;
};

struct InputSource {
  enum class Kind { Exhaustive, Random, File };
  Kind kind = Kind::Random;
  std::int64_t count = 1000;
  std::uint64_t seed = 42;
  DistributionSpec dist;
  std::string path;

  /// "exhaustive", "random:N", "file:PATH".
  static InputSource parse(std::string_view text);
  std::string describe() const;
};

/// Whitespace-separated signed decimal pairs, one per line, '#' comments.
/// Throws ParseError naming the offending line.
std::vector<OperandPair> read_pairs(std::istream& in, const std::string& name = "input");

/// Reproducible random pairs. Every draw is one 64-bit output of
/// std::mt19937_64(seed). A b-bit uniform value is the draw's top b bits;
/// bounded(n) rejects draws >= n * floor(2^64 / n) and returns draw % n.
///   uniform, uniform8: a then b, each a top-bits draw
///   sparse-k: a is a top-bits draw; c = bounded(k + 1); then c distinct
///     bit positions, each bounded(width), redrawn on repeats
///   signed: per operand a top-bits magnitude then a sign draw (top bit)
std::vector<OperandPair> random_pairs(std::int64_t count, std::uint64_t seed,
                                      const DistributionSpec& dist, unsigned width);

/// Exhaustive sources yield all 2^(2 * width) unsigned pairs, a-major.
std::vector<OperandPair> gen_inputs(const InputSource& source, unsigned width);

enum class SsstMode { Off, On, HybridOnly };

SsstMode parse_ssst(std::string_view text);
std::string to_string(SsstMode mode);

enum class Format { Ascii, Csv, Json, Svg };

Format parse_format(std::string_view text);

struct Campaign {
  unsigned width = 8;
  std::vector<Arch> archs = {Arch::Conventional, Arch::Booth, Arch::Hybrid};
  SsstMode ssst = SsstMode::HybridOnly;
  InputSource source;
  std::vector<double> vdds;  // empty: every grid voltage
  VddLookup lookup = VddLookup::Exact;
  bool choose_sparser_multiplier = false;
  bool simulate = true;  // run the cell-level toggle simulation
  CostModel model = CostModel::calibrated();
};

struct CostSample {
  double vdd = 0;
  double power_uw = 0;
  double delay_ns = 0;
};

struct ArchStats {
  Arch arch = Arch::Hybrid;
  bool ssst = false;
  std::uint64_t pairs = 0;
  OpCounts totals;
  ToggleReport toggles;
  std::vector<CostSample> costs;

  double mean_adds() const { return pairs == 0 ? 0.0 : double(totals.add_count) / double(pairs); }
};

struct Reduction {
  std::string metric;  // "toggles" or "power"
  Arch baseline;
  Arch candidate;
  double percent = 0;
};

struct CampaignReport {
  unsigned width = 0;
  std::string source;
  std::uint64_t seed = 0;
  std::string dist;
  std::string ssst;
  bool simulated = false;
  std::vector<ArchStats> archs;
  std::vector<Reduction> reductions;
};

using CampaignObserver =
    std::function<void(Arch arch, std::size_t op_index, const ToggleDelta& delta)>;

/// Runs every pair through every requested architecture, verifying each
/// product against native multiplication (MismatchError on failure), and
/// aggregates counts, toggles, cost-model power/delay, and reductions.
/// Power and delay are the per-multiplication cost at the mean add count.
CampaignReport run_campaign(const Campaign& campaign, const CampaignObserver& observer = {});
CampaignReport run_campaign(const Campaign& campaign, const std::vector<OperandPair>& pairs,
                            const CampaignObserver& observer = {});

std::string to_ascii(const CampaignReport& report);
std::string to_stream_ascii(const CampaignReport& report);
std::string to_csv(const CampaignReport& report);
std::string to_json(const CampaignReport& report);
std::string to_svg(const CampaignReport& report);
std::string emit(const CampaignReport& report, Format format);

/// Shortest decimal text that round-trips the double.
std::string format_number(double v);

/// Human-readable walk through one multiplication: operands, category,
/// recipe, Booth digits, partial-product counts and the product.
std::string trace(std::int64_t a, std::int64_t b, unsigned width,
                  const MultiplyOptions& options = {});

/// Published switching and power reductions, printed next to measured
/// values.
struct PublishedClaims {
  static constexpr double kToggleVsConventional = 86.0;
  static constexpr double kToggleVsBooth = 46.0;
  static constexpr double kPowerVsConventional = 87.0;
  static constexpr double kPowerVsBooth = 26.0;
};

std::string version_string();

}  // namespace hybridmul
