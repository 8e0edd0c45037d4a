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

// hybridmul: compare conventional, radix-4 Booth and hybrid-encoded
// multipliers on operation counts, cost-model power/delay and simulated
// switching activity.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hybridmul/harness.hpp"

namespace hm = hybridmul;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;

struct CampaignFlags {
  unsigned width = 8;
  std::vector<std::string> archs;
  std::string ssst = "hybrid";
  std::string inputs = "random:1000";
  std::uint64_t seed = 42;
  std::string dist = "uniform";
  std::vector<double> vdds;
  std::string format = "ascii";
  std::string out;
  std::string trace_toggles;
  std::string model;
  bool interpolate = false;
  bool swap = false;
  bool no_sim = false;
};

void add_campaign_flags(CLI::App* cmd, CampaignFlags& f, bool stream) {
  cmd->add_option("--width", f.width, "operand width in bits (4-32)")->capture_default_str();
  cmd->add_option("--arch", f.archs, "conventional|booth|hybrid; repeatable (default: all)");
  cmd->add_option("--ssst", f.ssst, "row/column freezing: off|on|hybrid")->capture_default_str();
  cmd->add_option("--inputs", f.inputs, "exhaustive|random:N|file:PATH")->capture_default_str();
  cmd->add_option("--seed", f.seed, "PRNG seed for random inputs")->capture_default_str();
  cmd->add_option("--dist", f.dist, "uniform|uniform8|signed|sparse-K")->capture_default_str();
  cmd->add_option("--vdd", f.vdds, "supply voltage; repeatable (default: whole grid)");
  if (!stream) {
    cmd->add_option("--format", f.format, "ascii|csv|json|svg")->capture_default_str();
    cmd->add_flag("--no-sim", f.no_sim, "skip the cell-level toggle simulation");
  }
  cmd->add_option("--out", f.out, "write the report here instead of stdout");
  cmd->add_option("--trace-toggles", f.trace_toggles,
                  "write per-evaluation row toggles as CSV (arch,op,row,toggles)");
  cmd->add_option("--model", f.model, "cost model file ('vdd = power_uW, delay_ns' lines)");
  cmd->add_flag("--interpolate", f.interpolate, "allow voltages between grid points");
  cmd->add_flag("--swap", f.swap, "use the operand with fewer set bits as multiplier");
}

hm::Campaign build_campaign(const CampaignFlags& f) {
  hm::Campaign c;
  c.width = f.width;
  hm::check_operand_width(c.width);
  if (!f.archs.empty()) {
    c.archs.clear();
    for (const std::string& a : f.archs) c.archs.push_back(hm::parse_arch(a));
  }
  c.ssst = hm::parse_ssst(f.ssst);
  c.source = hm::InputSource::parse(f.inputs);
  c.source.seed = f.seed;
  c.source.dist = hm::DistributionSpec::parse(f.dist);
  c.vdds = f.vdds;
  c.lookup = f.interpolate ? hm::VddLookup::Interpolate : hm::VddLookup::Exact;
  c.choose_sparser_multiplier = f.swap;
  c.simulate = !f.no_sim;
  if (!f.model.empty()) c.model = hm::CostModel::load(f.model);
  return c;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw hm::Error("cannot write '" + path + "'");
  f << text;
}

int run_campaign_command(const CampaignFlags& f, bool stream) {
  hm::Campaign c = build_campaign(f);
  if (stream) c.simulate = true;

  std::unique_ptr<std::ofstream> toggles;
  hm::CampaignObserver observer;
  if (!f.trace_toggles.empty()) {
    toggles = std::make_unique<std::ofstream>(f.trace_toggles, std::ios::binary);
    if (!*toggles) throw hm::Error("cannot write '" + f.trace_toggles + "'");
    *toggles << "arch,op,row,toggles\n";
    observer = [&toggles](hm::Arch arch, std::size_t op, const hm::ToggleDelta& d) {
      for (std::size_t r = 0; r < d.per_row.size(); ++r) {
        *toggles << hm::to_string(arch) << ',' << op << ',';
        if (r + 1 == d.per_row.size()) {
          *toggles << "cpa";
        } else {
          *toggles << r;
        }
        *toggles << ',' << d.per_row[r] << '\n';
      }
    };
  }

  const hm::CampaignReport report = hm::run_campaign(c, observer);
  const std::string text =
      stream ? hm::to_stream_ascii(report) : hm::emit(report, hm::parse_format(f.format));
  write_output(f.out, text);
  return 0;
}

int run_trace(std::int64_t a, std::int64_t b, unsigned width, bool swap) {
  std::cout << hm::trace(a, b, width, hm::MultiplyOptions{swap});
  return 0;
}

int run_table2(const std::string& model_path, const std::string& out) {
  const hm::CostModel model =
      model_path.empty() ? hm::CostModel::calibrated() : hm::CostModel::load(model_path);
  const hm::Table2Report report = hm::table2_report(model);
  std::string text = report.to_ascii();
  char buf[256];
  std::snprintf(buf, sizeof buf, "\ncells within 1%%: %zu of %zu\n", report.cells_within(0.01),
                2 * report.cells.size());
  text += buf;

  // Published abstract figures next to what the 7:3:1 structure gives.
  const double vs_conv = hm::reduction_percent(7, 1);
  const double vs_booth = hm::reduction_percent(3, 1);
  std::snprintf(buf, sizeof buf,
                "power reduction from add counts: %.1f%% vs conventional, %.1f%% vs booth\n"
                "published claims: %.0f%% vs conventional, %.0f%% vs booth "
                "(the booth figure does not follow from 3:1)\n",
                vs_conv, vs_booth, hm::PublishedClaims::kPowerVsConventional,
                hm::PublishedClaims::kPowerVsBooth);
  text += buf;
  write_output(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybridmul: hybrid-encoded shift-add multiplier analysis"};
  app.set_version_flag("--version", hm::version_string());
  app.require_subcommand(1);

  CampaignFlags compare_flags;
  CLI::App* compare = app.add_subcommand("compare", "run a comparison campaign");
  add_campaign_flags(compare, compare_flags, false);

  CampaignFlags stream_flags;
  CLI::App* stream = app.add_subcommand("stream", "toggle simulation of an operand stream");
  add_campaign_flags(stream, stream_flags, true);

  std::int64_t ta = 0;
  std::int64_t tb = 0;
  unsigned twidth = 8;
  bool tswap = false;
  CLI::App* trace = app.add_subcommand("trace", "walk through one multiplication");
  trace->add_option("a", ta, "multiplicand")->required();
  trace->add_option("b", tb, "multiplier")->required();
  trace->add_option("--width", twidth, "operand width in bits (4-32)")->capture_default_str();
  trace->add_flag("--swap", tswap, "use the operand with fewer set bits as multiplier");

  std::string table_model;
  std::string table_out;
  CLI::App* table2 = app.add_subcommand("table2", "cost-model power/delay grid");
  table2->add_option("--model", table_model, "cost model file");
  table2->add_option("--out", table_out, "write the grid here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*compare) return run_campaign_command(compare_flags, false);
    if (*stream) return run_campaign_command(stream_flags, true);
    if (*trace) return run_trace(ta, tb, twidth, tswap);
    if (*table2) return run_table2(table_model, table_out);
  } catch (const hm::MismatchError& e) {
    std::cerr << "hybridmul: product mismatch: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const std::exception& e) {
    std::cerr << "hybridmul: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
