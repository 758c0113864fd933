// Copyright 2026 The forge-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// forge_sim: run the community simulation, sweep the threshold grid, and turn event
// logs, reference curves and membership exports into CSV tables.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "forgesim/analytics.hpp"
#include "forgesim/config.hpp"
#include "forgesim/engine.hpp"
#include "forgesim/ingest.hpp"
#include "forgesim/io.hpp"

#ifndef FORGESIM_VERSION
#define FORGESIM_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace forgesim;

namespace {

class CommandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CommandError("cannot write '" + path.string() + "'");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw CommandError("failed writing '" + path.string() + "'");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw CommandError("cannot create output directory '" + dir.string() + "'");
}

SimConfig resolve_config(const std::string& config_path, std::optional<std::uint64_t> seed) {
  SimConfig config = config_path.empty() ? SimConfig{} : load_config(config_path);
  if (seed) config.seed = *seed;
  config.validate();
  return config;
}

/// One simulation written to `dir`: events.csv, projects.csv, histogram.csv, manifest.json
/// and, on request, events.jsonl.
void write_run(const fs::path& dir, const SimConfig& config, const std::optional<GridPoint>& point, bool jsonl,
               std::string_view command) {
  const auto started = std::chrono::steady_clock::now();
  ensure_dir(dir);
  const fs::path events_path = dir / "events.csv";
  const fs::path jsonl_path = dir / "events.jsonl";
  const fs::path projects_path = dir / "projects.csv";
  const fs::path histogram_path = dir / "histogram.csv";
  const fs::path manifest_path = dir / "manifest.json";

  auto events_out = open_output(events_path);
  CsvEventWriter csv(events_out);
  std::ofstream jsonl_out;
  JsonlEventWriter json_writer(jsonl_out);
  std::vector<EventSink*> sinks = {&csv};
  if (jsonl) {
    jsonl_out = open_output(jsonl_path);
    sinks.push_back(&json_writer);
  }
  TeeSink tee(sinks);
  const SimState state = run(config, tee);
  finish(events_out, events_path);
  if (jsonl) finish(jsonl_out, jsonl_path);

  auto projects_out = open_output(projects_path);
  write_projects_csv(projects_out, state.projects);
  finish(projects_out, projects_path);

  auto histogram_out = open_output(histogram_path);
  write_histogram_csv(histogram_out, dev_project_histogram(state.projects));
  finish(histogram_out, histogram_path);

  nlohmann::ordered_json manifest;
  manifest["tool"] = "forge_sim";
  manifest["version"] = FORGESIM_VERSION;
  manifest["command"] = command;
  nlohmann::ordered_json cfg;
  for (const auto& [k, v] : config_entries(config)) cfg[k] = v;
  manifest["config"] = cfg;
  manifest["seed"] = config.seed;
  if (point) {
    manifest["grid_point"] = {{"index", point->index},
                              {"j_threshold", point->j_threshold},
                              {"l_threshold", point->l_threshold},
                              {"label", point->label()}};
  } else {
    manifest["grid_point"] = nullptr;
  }
  nlohmann::ordered_json outputs;
  outputs["events"] = events_path.filename().string();
  if (jsonl) outputs["events_jsonl"] = jsonl_path.filename().string();
  outputs["projects"] = projects_path.filename().string();
  outputs["histogram"] = histogram_path.filename().string();
  manifest["outputs"] = outputs;
  manifest["final_step"] = state.step;
  manifest["project_count"] = state.projects.size();
  manifest["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  auto manifest_out = open_output(manifest_path);
  manifest_out << manifest.dump(2) << '\n';
  finish(manifest_out, manifest_path);
}

int cmd_simulate(const std::string& config_path, std::optional<std::uint64_t> seed, const fs::path& out, bool jsonl) {
  const SimConfig config = resolve_config(config_path, seed);
  write_run(out, config, std::nullopt, jsonl, "simulate");
  return 0;
}

int cmd_sweep(const std::string& config_path, std::optional<std::uint64_t> seed, const fs::path& out, unsigned jobs,
              bool jsonl) {
  const SimConfig base = resolve_config(config_path, seed);
  ensure_dir(out);
  const auto grid = threshold_grid();
  std::mutex log_mutex;
  std::size_t failures = 0;
  parallel_for(grid.size(), jobs, [&](std::size_t i) {
    const GridPoint& point = grid[i];
    try {
      write_run(out / point.label(), grid_config(base, point), point, jsonl, "sweep");
      std::lock_guard lock(log_mutex);
      std::cerr << "forge_sim: " << point.label() << " done\n";
    } catch (const std::exception& e) {
      std::lock_guard lock(log_mutex);
      ++failures;
      std::cerr << "forge_sim: error: grid point " << point.label() << ": " << e.what() << '\n';
    }
  });
  if (failures > 0) {
    std::cerr << "forge_sim: " << failures << " of " << grid.size() << " grid points failed\n";
    return 1;
  }
  return 0;
}

int cmd_analyze(const fs::path& input, const std::string& out_arg, double bin_width) {
  const fs::path log_path = fs::is_directory(input) ? input / "events.csv" : input;
  std::ifstream in(log_path);
  if (!in) throw CommandError("cannot read event log '" + log_path.string() + "'");
  const fs::path out = out_arg.empty() ? log_path.parent_path() : fs::path(out_arg);
  if (!out.empty()) ensure_dir(out);

  EventAnalyzer analyzer(bin_width);
  try {
    read_events_csv(in, [&](const EventRecord& e) { analyzer.add(e); });
  } catch (const FormatError& e) {
    throw CommandError(log_path.string() + ": " + e.what());
  }

  const fs::path loglog_path = out / "loglog.csv";
  const fs::path actions_path = out / "action_counts.csv";
  const fs::path scatter_path = out / "scatter.csv";
  auto loglog_out = open_output(loglog_path);
  write_loglog_csv(loglog_out, loglog_points(analyzer.histogram()));
  finish(loglog_out, loglog_path);
  auto actions_out = open_output(actions_path);
  write_action_table_csv(actions_out, analyzer.action_table());
  finish(actions_out, actions_path);
  auto scatter_out = open_output(scatter_path);
  write_scatter_csv(scatter_out, analyzer.scatter());
  finish(scatter_out, scatter_path);
  std::cerr << "forge_sim: analyzed " << analyzer.event_count() << " events (" << analyzer.creates() << " creates, "
            << analyzer.joins() << " joins, " << analyzer.leaves() << " leaves)\n";
  return 0;
}

int cmd_curves(double theta_max, double theta_1, std::size_t samples, const fs::path& out) {
  SpiralParams params;
  params.theta_1 = theta_1;
  SpiralCurves curves;
  try {
    curves = spiral_reference(theta_max, params, samples);
  } catch (const std::invalid_argument& e) {
    throw CommandError(e.what());
  }
  if (curves.warning) std::cerr << "forge_sim: warning: " << *curves.warning << '\n';
  if (out.has_parent_path()) ensure_dir(out.parent_path());
  auto file = open_output(out);
  write_spiral_csv(file, curves);
  finish(file, out);
  return 0;
}

int cmd_ingest(const fs::path& input, const fs::path& out, const std::string& records_out) {
  std::ifstream in(input);
  if (!in) throw CommandError("cannot read '" + input.string() + "'");
  IngestResult result;
  try {
    result = parse_user_group(in);
  } catch (const FormatError& e) {
    throw CommandError(input.string() + ": " + e.what());
  }
  for (const RowError& err : result.errors) {
    std::cerr << "forge_sim: " << input.string() << ":" << err.line << ": skipped: " << err.message << '\n';
  }
  std::cerr << "forge_sim: " << result.records.size() << " records, " << result.duplicates << " duplicates, "
            << result.skipped() << " rows skipped\n";
  if (out.has_parent_path()) ensure_dir(out.parent_path());
  auto file = open_output(out);
  write_histogram_csv(file, empirical_histogram(result.records));
  finish(file, out);
  if (!records_out.empty()) {
    auto rec = open_output(records_out);
    write_user_group(rec, result.records);
    finish(rec, records_out);
  }
  return 0;
}

unsigned jobs_from_env() {
  if (const char* env = std::getenv("FORGE_SIM_JOBS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "forge_sim: warning: ignoring FORGE_SIM_JOBS='" << env << "'\n";
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agent-based open-source community simulator"};
  app.set_version_flag("--version", FORGESIM_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool jsonl = false;

  auto* simulate = app.add_subcommand("simulate", "Run one simulation");
  simulate->add_option("--config", config_path, "key = value config file or run manifest");
  simulate->add_option("--seed", seed, "Override the configured seed");
  simulate->add_option("--out", out, "Output directory")->required();
  simulate->add_flag("--jsonl", jsonl, "Also write events.jsonl");

  unsigned jobs = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run the nine (J, L) threshold combinations");
  sweep_cmd->add_option("--config", config_path, "key = value config file or run manifest");
  sweep_cmd->add_option("--seed", seed, "Override the base seed");
  sweep_cmd->add_option("--out", out, "Output directory; one sub-directory per grid point")->required();
  sweep_cmd->add_option("--jobs", jobs, "Grid points run in parallel (default: FORGE_SIM_JOBS or 1)");
  sweep_cmd->add_flag("--jsonl", jsonl, "Also write events.jsonl");

  std::string log_input;
  double bin_width = kDefaultBinWidth;
  auto* analyze = app.add_subcommand("analyze", "Aggregate an event log into CSV tables");
  analyze->add_option("log", log_input, "events.csv or a run directory")->required();
  analyze->add_option("--out", out, "Output directory (default: next to the log)");
  analyze->add_option("--bin-width", bin_width, "Task-total bin width")->check(CLI::PositiveNumber);

  double theta_max = 2.0 * std::numbers::pi;
  double theta_1 = std::numbers::pi;
  std::size_t samples = 100;
  auto* curves = app.add_subcommand("curves", "Sample the spiral reference curves");
  curves->add_option("--theta-max", theta_max, "Upper angle in radians");
  curves->add_option("--theta1", theta_1, "Angle where the spread curve starts");
  curves->add_option("--samples", samples, "Samples per curve (>= 2)");
  curves->add_option("--out", out, "Output CSV path")->required();

  std::string ingest_input;
  std::string records_out;
  auto* ingest = app.add_subcommand("ingest", "Developers-per-project histogram from a user/group export");
  ingest->add_option("input", ingest_input, "Delimited export with user_id and group_id columns")->required();
  ingest->add_option("--out", out, "Histogram CSV path")->required();
  ingest->add_option("--records", records_out, "Also write the de-duplicated records here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return cmd_simulate(config_path, seed, out, jsonl);
    if (*sweep_cmd) return cmd_sweep(config_path, seed, out, jobs > 0 ? jobs : jobs_from_env(), jsonl);
    if (*analyze) return cmd_analyze(log_input, out, bin_width);
    if (*curves) return cmd_curves(theta_max, theta_1, samples, out);
    if (*ingest) return cmd_ingest(ingest_input, out, records_out);
  } catch (const std::exception& e) {
    std::cerr << "forge_sim: error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
