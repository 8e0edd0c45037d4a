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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hybridmul/bitnum.hpp"

namespace hybridmul {

/// Supply voltages of the calibration grid, in volts.
inline constexpr std::array<double, 9> kVddGrid = {0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0, 2.2, 2.4};

struct CostPoint {
  double vdd = 0;
  double unit_power_uw = 0;
  double unit_delay_ns = 0;
};

enum class VddLookup {
  Exact,        // vdd must be a grid voltage
  Interpolate,  // piecewise linear between grid voltages, clamped to the ends
};

/// Power and delay charged per addition, indexed by supply voltage.
class CostModel {
 public:
  /// Throws Error unless `points` covers exactly the grid voltages with
  /// positive values.
  explicit CostModel(std::vector<CostPoint> points);

  /// Unit costs of the single-partial-product multiplier at each voltage.
  static CostModel calibrated();

  /// Key-value text: one "vdd = power_uW, delay_ns" entry per line, '#'
  /// starts a comment. Every grid voltage must appear exactly once.
  static CostModel parse(std::string_view text);
  static CostModel load(const std::string& path);

  const std::vector<CostPoint>& points() const { return points_; }
  CostPoint at(double vdd, VddLookup lookup = VddLookup::Exact) const;

 private:
  std::vector<CostPoint> points_;
};

/// add_count * unit power (uW). Throws Error for off-grid voltages unless
/// interpolation is requested.
double power_estimate(double add_count, double vdd, const CostModel& model,
                      VddLookup lookup = VddLookup::Exact);

/// add_count * unit delay (ns).
double delay_estimate(double add_count, double vdd, const CostModel& model,
                      VddLookup lookup = VddLookup::Exact);

/// 100 * (1 - candidate / baseline). Throws Error when baseline <= 0.
double reduction_percent(double baseline, double candidate);

/// Published power/delay grid the cost model is checked against.
struct PublishedRow {
  std::string_view arch;
  unsigned add_count;
  std::array<double, 9> power_uw;
  std::array<double, 9> delay_ns;
};

extern const std::array<PublishedRow, 3> kPublishedTable;

struct Table2Cell {
  std::string arch;
  unsigned add_count = 0;
  double vdd = 0;
  double power_uw = 0;
  double delay_ns = 0;
  double published_power_uw = 0;
  double published_delay_ns = 0;

  double power_error() const;  // relative, |model - published| / published
  double delay_error() const;
};

struct Table2Report {
  std::vector<Table2Cell> cells;  // arch-major, grid order

  std::size_t cells_within(double tolerance) const;
  std::string to_ascii() const;
};

/// Model power and delay for add counts 7, 3 and 1 at every grid voltage,
/// next to the published values.
Table2Report table2_report(const CostModel& model);

}  // namespace hybridmul
