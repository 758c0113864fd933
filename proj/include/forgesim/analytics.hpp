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

#pragma once

#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "forgesim/engine.hpp"
#include "forgesim/model.hpp"

namespace forgesim {

/// developer count -> number of projects with exactly that many developers.
struct Histogram {
  std::map<std::uint64_t, std::uint64_t> bins;

  [[nodiscard]] std::uint64_t total() const;
  /// Projects whose developer count lies in [lo, hi].
  [[nodiscard]] std::uint64_t mass(std::uint64_t lo, std::uint64_t hi) const;

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

/// Frozen (memberless) projects land in bin 0.
Histogram dev_project_histogram(std::span<const ProjectState> projects);

/// Rebuilds the final developer histogram by replaying creates, joins and leaves.
Histogram histogram_from_events(std::span<const EventRecord> events);

struct LogLogPoint {
  double log_dev = 0.0;
  double log_proj = 0.0;
};

/// (log10 d, log10 count) for bins with d >= 1 and count >= 1, ascending in d.
std::vector<LogLogPoint> loglog_points(const Histogram& h);

struct SpiralParams {
  double theta_1 = std::numbers::pi;
  double a0 = 0.07;
  double delta_slope = 1.6;
  /// Registration offsets for overlaying on log-log data; only to_cartesian uses them.
  double origin_x = 0.0;
  double origin_y = 0.0;
};

/// r = a(theta) * theta with a(theta) = a0 - a0 * theta / (2 pi).
double spiral_radius(double theta, const SpiralParams& params);

/// spiral_radius(theta) - delta, delta = delta_slope * (theta - theta_1) / (2 pi).
double spread_radius(double theta, const SpiralParams& params);

struct PolarPoint {
  double theta = 0.0;
  double r = 0.0;
};

struct SpiralCurves {
  std::vector<PolarPoint> base;    // curve A on [0, theta_max]
  std::vector<PolarPoint> spread;  // curve B on [theta_1, theta_max]
  std::optional<std::string> warning;
};

/// Samples both curves at n_samples evenly spaced angles each. The last sample sits
/// exactly on theta_max. Throws std::invalid_argument for theta_max <= 0, theta_1 < 0
/// or n_samples < 2.
SpiralCurves spiral_reference(double theta_max, const SpiralParams& params, std::size_t n_samples);

struct CartesianPoint {
  double x = 0.0;
  double y = 0.0;
};

std::vector<CartesianPoint> to_cartesian(std::span<const PolarPoint> curve, const SpiralParams& params);

inline constexpr double kDefaultBinWidth = 0.5;

struct ActionBin {
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t joins = 0;
  std::uint64_t leaves = 0;
};

enum class ScatterSeries : std::uint8_t { Creation, Join };

struct ScatterPoint {
  ScatterSeries series = ScatterSeries::Creation;
  double task_total = 0.0;
  double fitness = 0.0;
};

std::string_view to_string(ScatterSeries s);

/// Single-pass accumulator behind the event-log analyses; lets very large logs be
/// processed without holding them in memory.
class EventAnalyzer {
 public:
  explicit EventAnalyzer(double bin_width = kDefaultBinWidth);

  void add(const EventRecord& e);

  [[nodiscard]] std::vector<ActionBin> action_table() const;
  [[nodiscard]] const std::vector<ScatterPoint>& scatter() const { return scatter_; }
  [[nodiscard]] Histogram histogram() const;
  [[nodiscard]] std::uint64_t event_count() const { return events_; }
  [[nodiscard]] std::uint64_t joins() const { return joins_; }
  [[nodiscard]] std::uint64_t leaves() const { return leaves_; }
  [[nodiscard]] std::uint64_t creates() const { return creates_; }

 private:
  double bin_width_;
  std::vector<std::uint64_t> join_bins_;
  std::vector<std::uint64_t> leave_bins_;
  std::vector<ScatterPoint> scatter_;
  std::unordered_map<std::uint32_t, std::uint64_t> members_;
  std::uint64_t events_ = 0;
  std::uint64_t joins_ = 0;
  std::uint64_t leaves_ = 0;
  std::uint64_t creates_ = 0;
};

/// Joins and leaves binned by the project's task total at decision time. Bins are
/// [i * w, (i + 1) * w) and always cover [0, 6], the largest possible New-project total.
std::vector<ActionBin> action_counts_by_task(std::span<const EventRecord> events,
                                             double bin_width = kDefaultBinWidth);

/// Creation series: one point per Create. Join series: one point per applied Join.
std::vector<ScatterPoint> task_fitness_scatter(std::span<const EventRecord> events);

}  // namespace forgesim
