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

#include "hybridmul/harness.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

#ifndef HYBRIDMUL_VERSION
#define HYBRIDMUL_VERSION "0.0.0"
#endif

namespace hybridmul {

std::string version_string() { return HYBRIDMUL_VERSION; }

// ---------------------------------------------------------------------------
// Input sources
// ---------------------------------------------------------------------------

DistributionSpec DistributionSpec::parse(std::string_view text) {
  if (text == "uniform") return {Distribution::Uniform};
  if (text == "uniform8") return {Distribution::Uniform8};
  if (text == "signed") return {Distribution::Signed};
  if (text.starts_with("sparse-")) {
    unsigned k = 0;
    const std::string_view digits = text.substr(7);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) {
      return {Distribution::Sparse, k};
    }
  }
  throw ParseError("unknown distribution '" + std::string(text) +
                   "' (uniform, uniform8, signed, sparse-K)");
}

std::string DistributionSpec::name() const {
  switch (kind) {
    case Distribution::Uniform:
      return "uniform";
    case Distribution::Uniform8:
      return "uniform8";
    case Distribution::Sparse:
      return "sparse-" + std::to_string(sparse_k);
    case Distribution::Signed:
      return "signed";
  }
  return {};
}

InputSource InputSource::parse(std::string_view text) {
  InputSource s;
  if (text == "exhaustive") {
    s.kind = Kind::Exhaustive;
    return s;
  }
  if (text.starts_with("random:")) {
    s.kind = Kind::Random;
    const std::string_view digits = text.substr(7);
    std::int64_t n = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
      throw ParseError("bad pair count in '" + std::string(text) + "'");
    }
    s.count = n;
    return s;
  }
  if (text.starts_with("file:") && text.size() > 5) {
    s.kind = Kind::File;
    s.path = std::string(text.substr(5));
    return s;
  }
  throw ParseError("unknown input source '" + std::string(text) +
                   "' (exhaustive, random:N, file:PATH)");
}

std::string InputSource::describe() const {
  switch (kind) {
    case Kind::Exhaustive:
      return "exhaustive";
    case Kind::Random:
      return "random:" + std::to_string(count);
    case Kind::File:
      return "file:" + path;
  }
  return {};
}

std::vector<OperandPair> read_pairs(std::istream& in, const std::string& name) {
  std::vector<OperandPair> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream fields(raw.substr(0, raw.find('#')));
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    auto bad = [&](const std::string& why) {
      return ParseError(name + ":" + std::to_string(line) + ": " + why);
    };
    if (tokens.size() != 2) throw bad("expected two integers, got " + std::to_string(tokens.size()));
    std::int64_t v[2] = {0, 0};
    for (int i = 0; i < 2; ++i) {
      const std::string& t = tokens[static_cast<std::size_t>(i)];
      const char* first = t.data();
      if (*first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v[i]);
      if (ec != std::errc{} || ptr != t.data() + t.size()) throw bad("bad integer '" + t + "'");
    }
    out.emplace_back(v[0], v[1]);
  }
  return out;
}

namespace {

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t next() { return rng_(); }
  std::uint64_t top(unsigned bits) { return next() >> (64 - bits); }

  std::uint64_t bounded(std::uint64_t n) {
    if (std::has_single_bit(n)) return next() & (n - 1);
    const std::uint64_t limit = n * (~std::uint64_t{0} / n);
    for (;;) {
      const std::uint64_t r = next();
      if (r < limit) return r % n;
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

std::vector<OperandPair> random_pairs(std::int64_t count, std::uint64_t seed,
                                      const DistributionSpec& dist, unsigned width) {
  check_operand_width(width);
  if (count <= 0) throw Error("random input count must be positive");
  if (dist.kind == Distribution::Uniform8 && width < 8) {
    throw Error("uniform8 needs operands of at least 8 bits");
  }
  if (dist.kind == Distribution::Sparse && dist.sparse_k > width) {
    throw Error("sparse-" + std::to_string(dist.sparse_k) + " exceeds the operand width");
  }

  Draws d(seed);
  std::vector<OperandPair> out;
  out.reserve(static_cast<std::size_t>(count));
  auto as_signed = [](std::uint64_t v) { return static_cast<std::int64_t>(v); };
  for (std::int64_t n = 0; n < count; ++n) {
    switch (dist.kind) {
      case Distribution::Uniform: {
        const std::uint64_t a = d.top(width);
        out.emplace_back(as_signed(a), as_signed(d.top(width)));
        break;
      }
      case Distribution::Uniform8: {
        const std::uint64_t a = d.top(8);
        out.emplace_back(as_signed(a), as_signed(d.top(8)));
        break;
      }
      case Distribution::Sparse: {
        const std::uint64_t a = d.top(width);
        const std::uint64_t ones = d.bounded(dist.sparse_k + 1);
        std::uint64_t b = 0;
        while (static_cast<std::uint64_t>(std::popcount(b)) < ones) {
          b |= std::uint64_t{1} << d.bounded(width);
        }
        out.emplace_back(as_signed(a), as_signed(b));
        break;
      }
      case Distribution::Signed: {
        std::int64_t v[2];
        for (auto& x : v) {
          x = as_signed(d.top(width));
          if ((d.next() >> 63) != 0) x = -x;
        }
        out.emplace_back(v[0], v[1]);
        break;
      }
    }
  }
  return out;
}

std::vector<OperandPair> gen_inputs(const InputSource& source, unsigned width) {
  check_operand_width(width);
  switch (source.kind) {
    case InputSource::Kind::Exhaustive: {
      if (width > 12) throw Error("exhaustive inputs are limited to 12-bit operands");
      const std::int64_t n = std::int64_t{1} << width;
      std::vector<OperandPair> out;
      out.reserve(static_cast<std::size_t>(n * n));
      for (std::int64_t a = 0; a < n; ++a) {
        for (std::int64_t b = 0; b < n; ++b) out.emplace_back(a, b);
      }
      return out;
    }
    case InputSource::Kind::Random:
      return random_pairs(source.count, source.seed, source.dist, width);
    case InputSource::Kind::File: {
      std::ifstream f(source.path);
      if (!f) throw Error("cannot open input file '" + source.path + "'");
      std::vector<OperandPair> out = read_pairs(f, source.path);
      if (out.empty()) throw Error("input file '" + source.path + "' holds no pairs");
      return out;
    }
  }
  return {};
}

SsstMode parse_ssst(std::string_view text) {
  if (text == "off") return SsstMode::Off;
  if (text == "on") return SsstMode::On;
  if (text == "hybrid") return SsstMode::HybridOnly;
  throw ParseError("unknown --ssst mode '" + std::string(text) + "' (off, on, hybrid)");
}

std::string to_string(SsstMode mode) {
  switch (mode) {
    case SsstMode::Off:
      return "off";
    case SsstMode::On:
      return "on";
    case SsstMode::HybridOnly:
      return "hybrid";
  }
  return {};
}

Format parse_format(std::string_view text) {
  if (text == "ascii") return Format::Ascii;
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  if (text == "svg") return Format::Svg;
  throw ParseError("unknown format '" + std::string(text) + "' (ascii, csv, json, svg)");
}

// ---------------------------------------------------------------------------
// Campaigns
// ---------------------------------------------------------------------------

CampaignReport run_campaign(const Campaign& campaign, const CampaignObserver& observer) {
  return run_campaign(campaign, gen_inputs(campaign.source, campaign.width), observer);
}

CampaignReport run_campaign(const Campaign& c, const std::vector<OperandPair>& pairs,
                            const CampaignObserver& observer) {
  check_operand_width(c.width);
  if (pairs.empty()) throw Error("campaign has no operand pairs");
  if (c.archs.empty()) throw Error("campaign has no architectures");

  const std::vector<double> vdds =
      c.vdds.empty() ? std::vector<double>(kVddGrid.begin(), kVddGrid.end()) : c.vdds;
  // Validate voltages before any work.
  for (double v : vdds) (void)c.model.at(v, c.lookup);

  CampaignReport report;
  report.width = c.width;
  report.source = c.source.describe();
  report.seed = c.source.seed;
  report.dist = c.source.kind == InputSource::Kind::Random ? c.source.dist.name() : "";
  report.ssst = to_string(c.ssst);
  report.simulated = c.simulate;

  const MultiplyOptions options{c.choose_sparser_multiplier};

  std::vector<OperandPair> sim_pairs;
  if (c.simulate) {
    sim_pairs.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
      // The array sees the operands in multiplier order too.
      const SignMag sa = to_sign_magnitude(a, c.width);
      const SignMag sb = to_sign_magnitude(b, c.width);
      const bool swap = options.choose_sparser_multiplier &&
                        popcount(sa.magnitude) < popcount(sb.magnitude);
      sim_pairs.push_back(swap ? OperandPair{b, a} : OperandPair{a, b});
    }
  }

  for (Arch arch : c.archs) {
    ArchStats stats;
    stats.arch = arch;
    stats.ssst = c.ssst == SsstMode::On || (c.ssst == SsstMode::HybridOnly && arch == Arch::Hybrid);
    for (const auto& [a, b] : pairs) {
      const SignMag sa = to_sign_magnitude(a, c.width);
      const SignMag sb = to_sign_magnitude(b, c.width);
      const MultiplyResult r = multiply(sa, sb, arch, options);
      if (r.product != reference_product(sa, sb)) {
        throw MismatchError(to_string(arch) + ": " + std::to_string(a) + " x " +
                                std::to_string(b) + " gave " + r.product.to_string() +
                                ", expected " + reference_product(sa, sb).to_string(),
                            a, b);
      }
      stats.totals += r.counts;
      ++stats.pairs;
    }
    if (c.simulate) {
      ToggleObserver obs;
      if (observer) {
        obs = [&observer, arch](std::size_t i, const ToggleDelta& d) { observer(arch, i, d); };
      }
      stats.toggles = simulate_stream(sim_pairs, arch, c.width, stats.ssst, obs);
    }
    for (double v : vdds) {
      stats.costs.push_back({v, power_estimate(stats.mean_adds(), v, c.model, c.lookup),
                             delay_estimate(stats.mean_adds(), v, c.model, c.lookup)});
    }
    report.archs.push_back(std::move(stats));
  }

  auto find = [&](Arch a) -> const ArchStats* {
    for (const ArchStats& s : report.archs) {
      if (s.arch == a) return &s;
    }
    return nullptr;
  };
  const std::pair<Arch, Arch> comparisons[] = {{Arch::Conventional, Arch::Hybrid},
                                               {Arch::Booth, Arch::Hybrid},
                                               {Arch::Conventional, Arch::Booth}};
  for (const auto& [base, cand] : comparisons) {
    const ArchStats* b = find(base);
    const ArchStats* k = find(cand);
    if (b == nullptr || k == nullptr) continue;
    if (c.simulate && b->toggles.total_toggles > 0) {
      report.reductions.push_back({"toggles", base, cand,
                                   reduction_percent(double(b->toggles.total_toggles),
                                                     double(k->toggles.total_toggles))});
    }
    if (b->totals.add_count > 0) {
      report.reductions.push_back(
          {"power", base, cand, reduction_percent(b->mean_adds(), k->mean_adds())});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Emitters
// ---------------------------------------------------------------------------

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

namespace {

const char* on_off(bool b) { return b ? "on" : "off"; }

std::string header_line(const CampaignReport& r) {
  std::string s = "width " + std::to_string(r.width) + ", inputs " + r.source;
  if (!r.dist.empty()) s += " (seed " + std::to_string(r.seed) + ", dist " + r.dist + ")";
  s += ", ssst " + r.ssst + "\n";
  return s;
}

std::string reductions_block(const CampaignReport& r) {
  std::string out;
  char buf[128];
  for (const Reduction& red : r.reductions) {
    std::snprintf(buf, sizeof buf, "  %-7s %-12s vs %-12s %7.2f%%\n", red.metric.c_str(),
                  to_string(red.candidate).c_str(), to_string(red.baseline).c_str(),
                  red.percent);
    out += buf;
  }
  std::snprintf(buf, sizeof buf,
                "published claims: switching %.0f%% below conventional, %.0f%% below booth; "
                "power %.0f%% / %.0f%% below\n",
                PublishedClaims::kToggleVsConventional, PublishedClaims::kToggleVsBooth,
                PublishedClaims::kPowerVsConventional, PublishedClaims::kPowerVsBooth);
  out += buf;
  return out;
}

}  // namespace

std::string to_ascii(const CampaignReport& r) {
  std::string out = header_line(r);
  char buf[200];
  std::snprintf(buf, sizeof buf, "%-13s %-4s %10s %12s %12s %10s %14s\n", "arch", "ssst", "pairs",
                "pp_total", "add_total", "mean_adds", "toggles");
  out += buf;
  for (const ArchStats& s : r.archs) {
    std::snprintf(buf, sizeof buf, "%-13s %-4s %10llu %12llu %12llu %10.4f %14llu\n",
                  to_string(s.arch).c_str(), on_off(s.ssst),
                  static_cast<unsigned long long>(s.pairs),
                  static_cast<unsigned long long>(s.totals.pp_count),
                  static_cast<unsigned long long>(s.totals.add_count), s.mean_adds(),
                  static_cast<unsigned long long>(s.toggles.total_toggles));
    out += buf;
  }
  out += "\n";
  std::snprintf(buf, sizeof buf, "%-13s %5s %12s %10s\n", "arch", "vdd", "power_uW", "delay_ns");
  out += buf;
  for (const ArchStats& s : r.archs) {
    for (const CostSample& c : s.costs) {
      std::snprintf(buf, sizeof buf, "%-13s %5.2f %12.4f %10.4f\n", to_string(s.arch).c_str(),
                    c.vdd, c.power_uw, c.delay_ns);
      out += buf;
    }
  }
  out += "\nreductions\n" + reductions_block(r);
  return out;
}

std::string to_stream_ascii(const CampaignReport& r) {
  std::string out = header_line(r);
  char buf[200];
  for (const ArchStats& s : r.archs) {
    std::snprintf(buf, sizeof buf, "%-13s ssst %-3s ops %llu toggles %llu frozen-cell-evals %llu\n",
                  to_string(s.arch).c_str(), on_off(s.ssst),
                  static_cast<unsigned long long>(s.toggles.operations_simulated),
                  static_cast<unsigned long long>(s.toggles.total_toggles),
                  static_cast<unsigned long long>(s.toggles.frozen_cell_evaluations));
    out += buf;
    out += "  per row:";
    for (std::size_t i = 0; i < s.toggles.per_row_toggles.size(); ++i) {
      const bool last = i + 1 == s.toggles.per_row_toggles.size();
      out += " " + std::string(last ? "cpa=" : "") +
             std::to_string(s.toggles.per_row_toggles[i]);
    }
    out += "\n";
  }
  out += "reductions\n" + reductions_block(r);
  return out;
}

std::string to_csv(const CampaignReport& r) {
  std::string out = "arch,pairs,pp_total,add_total,toggles,power_uW,delay_ns,vdd\n";
  for (const ArchStats& s : r.archs) {
    for (const CostSample& c : s.costs) {
      out += to_string(s.arch) + "," + std::to_string(s.pairs) + "," +
             std::to_string(s.totals.pp_count) + "," + std::to_string(s.totals.add_count) + "," +
             std::to_string(s.toggles.total_toggles) + "," + format_number(c.power_uw) + "," +
             format_number(c.delay_ns) + "," + format_number(c.vdd) + "\n";
    }
  }
  return out;
}

std::string to_json(const CampaignReport& r) {
  using nlohmann::ordered_json;
  ordered_json root;
  root["meta"] = {{"tool", "hybridmul"},
                  {"version", version_string()},
                  {"json_schema", 1},
                  {"width", r.width},
                  {"inputs", r.source},
                  {"seed", r.seed},
                  {"dist", r.dist},
                  {"ssst", r.ssst},
                  {"simulated", r.simulated}};
  ordered_json archs = ordered_json::array();
  for (const ArchStats& s : r.archs) {
    ordered_json costs = ordered_json::array();
    for (const CostSample& c : s.costs) {
      costs.push_back({{"vdd", c.vdd}, {"power_uW", c.power_uw}, {"delay_ns", c.delay_ns}});
    }
    archs.push_back({{"arch", to_string(s.arch)},
                     {"ssst", s.ssst},
                     {"pairs", s.pairs},
                     {"pp_total", s.totals.pp_count},
                     {"add_total", s.totals.add_count},
                     {"shift_total", s.totals.shift_count},
                     {"toggles", s.toggles.total_toggles},
                     {"frozen_cell_evaluations", s.toggles.frozen_cell_evaluations},
                     {"per_row_toggles", s.toggles.per_row_toggles},
                     {"costs", costs}});
  }
  root["archs"] = archs;
  ordered_json reds = ordered_json::array();
  for (const Reduction& red : r.reductions) {
    reds.push_back({{"metric", red.metric},
                    {"baseline", to_string(red.baseline)},
                    {"candidate", to_string(red.candidate)},
                    {"percent", red.percent}});
  }
  root["reductions"] = reds;
  return root.dump(2) + "\n";
}

std::string to_svg(const CampaignReport& r) {
  constexpr double kW = 640, kH = 400, kLeft = 70, kRight = 150, kTop = 30, kBottom = 50;
  double vmin = 1e9, vmax = -1e9, pmax = 0;
  for (const ArchStats& s : r.archs) {
    for (const CostSample& c : s.costs) {
      vmin = std::min(vmin, c.vdd);
      vmax = std::max(vmax, c.vdd);
      pmax = std::max(pmax, c.power_uw);
    }
  }
  if (vmax <= vmin) {
    vmin -= 0.1;
    vmax += 0.1;
  }
  if (pmax <= 0) pmax = 1;
  const double pw = kW - kLeft - kRight;
  const double ph = kH - kTop - kBottom;
  auto x = [&](double v) { return kLeft + (v - vmin) / (vmax - vmin) * pw; };
  auto y = [&](double p) { return kTop + ph - p / pmax * ph; };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  static constexpr const char* kColors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd"};

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
         "viewBox=\"0 0 640 400\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(kLeft) + "\" y=\"18\">Power per multiplication vs supply voltage (width " +
         std::to_string(r.width) + ")</text>\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(kLeft + pw) +
         "\" y2=\"" + num(kTop + ph) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
         "\" y2=\"" + num(kTop + ph) + "\" stroke=\"black\"/>\n";
  out += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kH - 12) +
         "\" text-anchor=\"middle\">Vdd (V)</text>\n";
  out += "<text x=\"16\" y=\"" + num(kTop + ph / 2) + "\" transform=\"rotate(-90 16 " +
         num(kTop + ph / 2) + ")\" text-anchor=\"middle\">power (uW)</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double p = pmax * i / 4;
    out += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(y(p) + 4) +
           "\" text-anchor=\"end\">" + num(p) + "</text>\n";
  }
  std::set<double> ticks;
  for (const ArchStats& s : r.archs) {
    for (const CostSample& c : s.costs) ticks.insert(c.vdd);
  }
  for (double v : ticks) {
    out += "<text x=\"" + num(x(v)) + "\" y=\"" + num(kTop + ph + 16) +
           "\" text-anchor=\"middle\">" + num(v) + "</text>\n";
  }
  for (std::size_t i = 0; i < r.archs.size(); ++i) {
    const ArchStats& s = r.archs[i];
    const char* color = kColors[i % 4];
    std::string pts;
    for (const CostSample& c : s.costs) {
      if (!pts.empty()) pts += ' ';
      pts += num(x(c.vdd)) + "," + num(y(c.power_uw));
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
    for (const CostSample& c : s.costs) {
      out += "<circle cx=\"" + num(x(c.vdd)) + "\" cy=\"" + num(y(c.power_uw)) +
             "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
    const double ly = kTop + 20 + 20 * static_cast<double>(i);
    out += "<line x1=\"" + num(kW - kRight + 15) + "\" y1=\"" + num(ly) + "\" x2=\"" +
           num(kW - kRight + 40) + "\" y2=\"" + num(ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + num(kW - kRight + 46) + "\" y=\"" + num(ly + 4) + "\">" +
           to_string(s.arch) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string emit(const CampaignReport& report, Format format) {
  switch (format) {
    case Format::Ascii:
      return to_ascii(report);
    case Format::Csv:
      return to_csv(report);
    case Format::Json:
      return to_json(report);
    case Format::Svg:
      return to_svg(report);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Trace
// ---------------------------------------------------------------------------

namespace {

std::string positions_text(const Word& w) {
  std::string s = "[";
  for (unsigned p : one_positions(w)) {
    if (s.size() > 1) s += ", ";
    s += std::to_string(p);
  }
  return s + "]";
}

std::string category_text(const Category& c) {
  std::string s = to_string(c.kind);
  switch (c.kind) {
    case CategoryKind::B:
    case CategoryKind::C:
      s += "  i=" + std::to_string(c.i);
      break;
    case CategoryKind::D:
      s += "  i=" + std::to_string(c.i) + " j=" + std::to_string(c.j);
      break;
    case CategoryKind::E:
    case CategoryKind::F:
      s += "  i=" + std::to_string(c.i) + " j=" + std::to_string(c.j) + " k=" +
           std::to_string(c.k);
      break;
    default:
      break;
  }
  return s;
}

std::string indent(const std::string& block, const std::string& pad) {
  std::string out;
  std::istringstream in(block);
  for (std::string line; std::getline(in, line);) out += pad + line + "\n";
  return out;
}

void trace_plan_or_booth(const Word& m, const std::string& pad, std::string& out) {
  if (popcount(m) > 3) {
    const BoothDigits digits = booth_recode(m);
    out += pad + "category   Booth (" + std::to_string(popcount(m)) + " set bits)\n";
    out += pad + "digits     " + format_booth(digits) + "\n";
    return;
  }
  const HybridPlan plan = hybrid_plan(m);
  out += pad + "category   " + category_text(plan.category) + "\n";
  if (!plan.steps.empty()) out += pad + "plan\n" + indent(format_plan(plan), pad + "  ");
}

}  // namespace

std::string trace(std::int64_t a, std::int64_t b, unsigned width, const MultiplyOptions& options) {
  check_operand_width(width);
  const SignMag sa = to_sign_magnitude(a, width);
  const SignMag sb = to_sign_magnitude(b, width);
  SignMag mcand = sa;
  SignMag mplier = sb;
  if (options.choose_sparser_multiplier &&
      popcount(sa.magnitude) < popcount(sb.magnitude)) {
    std::swap(mcand, mplier);
  }
  const Word& m = mplier.magnitude;

  std::string out;
  auto sgn = [](const SignMag& s) { return s.sign < 0 ? std::string("-") : std::string(); };
  out += "multiplicand " + std::to_string(mcand.to_signed()) + "  (" + sgn(mcand) +
         to_string(mcand.magnitude) + ")\n";
  out += "multiplier   " + std::to_string(mplier.to_signed()) + "  (" + sgn(mplier) +
         to_string(m) + ")\n";
  out += "popcount   " + std::to_string(popcount(m)) + "  set positions " + positions_text(m) +
         "\n";

  if (popcount(m) <= 3) {
    trace_plan_or_booth(m, "", out);
  } else {
    const Word ready = m.width() % 2 == 0 ? m : m.zero_extend(m.width() + 1);
    const SplitWord halves = split(ready);
    out += "category   Split  hi=" + to_string(halves.hi) + " lo=" + to_string(halves.lo) + "\n";
    out += "high half\n";
    trace_plan_or_booth(halves.hi, "  ", out);
    out += "low half\n";
    trace_plan_or_booth(halves.lo, "  ", out);
  }

  const BoothDigits digits = booth_recode(m);
  out += "booth      " + format_booth(digits) + "  (" + std::to_string(digits.digits.size()) +
         " PP)\n";

  char buf[160];
  for (Arch arch : {Arch::Hybrid, Arch::Booth, Arch::Conventional}) {
    const MultiplyResult r = multiply(mcand, mplier, arch);
    std::snprintf(buf, sizeof buf, "%-13s product %-22s pp=%llu add=%llu\n",
                  to_string(arch).c_str(), r.product.to_string().c_str(),
                  static_cast<unsigned long long>(r.counts.pp_count),
                  static_cast<unsigned long long>(r.counts.add_count));
    out += buf;
  }
  const Product p = reference_product(mcand, mplier);
  const Word bits(p.magnitude, std::min(2 * width, kMaxWordWidth));
  out += "result     " + p.to_string() + "  (" + (p.sign < 0 ? "-" : "") + to_string(bits) + ")\n";
  return out;
}

}  // namespace hybridmul
