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

#include "hybridmul/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hybridmul {

namespace {

constexpr double kVddTolerance = 1e-9;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& text, std::size_t line) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ParseError("cost model line " + std::to_string(line) + ": bad number '" + text + "'");
  }
  return v;
}

}  // namespace

CostModel::CostModel(std::vector<CostPoint> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end(),
            [](const CostPoint& a, const CostPoint& b) { return a.vdd < b.vdd; });
  if (points_.size() != kVddGrid.size()) {
    throw Error("cost model needs exactly " + std::to_string(kVddGrid.size()) +
                " voltages, got " + std::to_string(points_.size()));
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const CostPoint& p = points_[i];
    if (std::abs(p.vdd - kVddGrid[i]) > kVddTolerance) {
      throw Error("cost model voltage " + std::to_string(p.vdd) + " is not on the grid");
    }
    if (!(p.unit_power_uw > 0) || !(p.unit_delay_ns > 0)) {
      throw Error("cost model entries must be positive");
    }
  }
}

CostModel CostModel::calibrated() {
  const PublishedRow& unit = kPublishedTable[2];
  std::vector<CostPoint> pts;
  for (std::size_t i = 0; i < kVddGrid.size(); ++i) {
    pts.push_back({kVddGrid[i], unit.power_uw[i], unit.delay_ns[i]});
  }
  return CostModel(std::move(pts));
}

CostModel CostModel::parse(std::string_view text) {
  std::vector<CostPoint> pts;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string body = trim(raw.substr(0, raw.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const auto comma = body.find(',', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || comma == std::string::npos) {
      throw ParseError("cost model line " + std::to_string(line) +
                       ": expected 'vdd = power_uW, delay_ns'");
    }
    const double vdd = parse_number(trim(body.substr(0, eq)), line);
    const double p = parse_number(trim(body.substr(eq + 1, comma - eq - 1)), line);
    const double d = parse_number(trim(body.substr(comma + 1)), line);
    for (const CostPoint& q : pts) {
      if (std::abs(q.vdd - vdd) < kVddTolerance) {
        throw ParseError("cost model line " + std::to_string(line) + ": duplicate voltage");
      }
    }
    pts.push_back({vdd, p, d});
  }
  return CostModel(std::move(pts));
}

CostModel CostModel::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open cost model '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

CostPoint CostModel::at(double vdd, VddLookup lookup) const {
  for (const CostPoint& p : points_) {
    if (std::abs(p.vdd - vdd) < kVddTolerance) return p;
  }
  if (lookup == VddLookup::Exact) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", vdd);
    throw Error(std::string("supply voltage ") + buf +
                " V is not a calibration voltage (interpolation disabled)");
  }
  if (vdd <= points_.front().vdd) return {vdd, points_.front().unit_power_uw,
                                          points_.front().unit_delay_ns};
  if (vdd >= points_.back().vdd) return {vdd, points_.back().unit_power_uw,
                                         points_.back().unit_delay_ns};
  const auto hi = std::find_if(points_.begin(), points_.end(),
                               [vdd](const CostPoint& p) { return p.vdd > vdd; });
  const auto lo = hi - 1;
  const double t = (vdd - lo->vdd) / (hi->vdd - lo->vdd);
  return {vdd, lo->unit_power_uw + t * (hi->unit_power_uw - lo->unit_power_uw),
          lo->unit_delay_ns + t * (hi->unit_delay_ns - lo->unit_delay_ns)};
}

double power_estimate(double add_count, double vdd, const CostModel& model, VddLookup lookup) {
  return add_count * model.at(vdd, lookup).unit_power_uw;
}

double delay_estimate(double add_count, double vdd, const CostModel& model, VddLookup lookup) {
  return add_count * model.at(vdd, lookup).unit_delay_ns;
}

double reduction_percent(double baseline, double candidate) {
  if (!(baseline > 0)) throw Error("reduction_percent needs a positive baseline");
  return 100.0 * (1.0 - candidate / baseline);
}

const std::array<PublishedRow, 3> kPublishedTable = {{
    {"conventional", 7,
     {31.98, 84.56, 122.5, 167.8, 246.9, 413.7, 525.0, 625.59, 662.2},
     {11.20, 5.138, 4.165, 3.213, 2.765, 2.443, 2.296, 2.1910, 1.932}},
    {"booth", 3,
     {13.71, 36.24, 52.50, 69.75, 105.8, 177.3, 225.0, 268.11, 283.8},
     {4.800, 2.200, 1.790, 1.380, 1.190, 1.050, 0.980, 0.9400, 0.830}},
    {"hybrid", 1,
     {4.569, 12.08, 17.50, 23.25, 35.27, 59.10, 75.00, 89.370, 94.60},
     {1.600, 0.734, 0.595, 0.459, 0.395, 0.349, 0.328, 0.3130, 0.276}},
}};

double Table2Cell::power_error() const {
  return std::abs(power_uw - published_power_uw) / published_power_uw;
}

double Table2Cell::delay_error() const {
  return std::abs(delay_ns - published_delay_ns) / published_delay_ns;
}

std::size_t Table2Report::cells_within(double tolerance) const {
  std::size_t n = 0;
  for (const Table2Cell& c : cells) {
    n += c.power_error() <= tolerance ? 1 : 0;
    n += c.delay_error() <= tolerance ? 1 : 0;
  }
  return n;
}

Table2Report table2_report(const CostModel& model) {
  Table2Report out;
  for (const PublishedRow& row : kPublishedTable) {
    for (std::size_t i = 0; i < kVddGrid.size(); ++i) {
      Table2Cell c;
      c.arch = std::string(row.arch);
      c.add_count = row.add_count;
      c.vdd = kVddGrid[i];
      c.power_uw = power_estimate(row.add_count, c.vdd, model);
      c.delay_ns = delay_estimate(row.add_count, c.vdd, model);
      c.published_power_uw = row.power_uw[i];
      c.published_delay_ns = row.delay_ns[i];
      out.cells.push_back(c);
    }
  }
  return out;
}

std::string Table2Report::to_ascii() const {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-13s %4s %5s %11s %11s %7s %10s %10s %7s\n", "arch", "adds",
                "vdd", "power_uW", "published", "err%", "delay_ns", "published", "err%");
  out += buf;
  for (const Table2Cell& c : cells) {
    std::snprintf(buf, sizeof buf, "%-13s %4u %5.1f %11.3f %11.3f %7.2f %10.4f %10.4f %7.2f\n",
                  c.arch.c_str(), c.add_count, c.vdd, c.power_uw, c.published_power_uw,
                  100.0 * c.power_error(), c.delay_ns, c.published_delay_ns,
                  100.0 * c.delay_error());
    out += buf;
  }
  return out;
}

}  // namespace hybridmul
