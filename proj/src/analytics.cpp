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

#include "forgesim/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace forgesim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxNewTaskTotal = kMaxTaskAmount * kTaskKindCount;

std::vector<PolarPoint> sample(double lo, double hi, std::size_t n, double (*radius)(double, const SpiralParams&),
                               const SpiralParams& params) {
  std::vector<PolarPoint> out;
  out.reserve(n);
  const double span = hi - lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = i + 1 == n ? hi : lo + span * (static_cast<double>(i) / static_cast<double>(n - 1));
    out.push_back({theta, radius(theta, params)});
  }
  return out;
}

}  // namespace

std::uint64_t Histogram::total() const {
  std::uint64_t sum = 0;
  for (const auto& [dev, count] : bins) sum += count;
  return sum;
}

std::uint64_t Histogram::mass(std::uint64_t lo, std::uint64_t hi) const {
  std::uint64_t sum = 0;
  for (auto it = bins.lower_bound(lo); it != bins.end() && it->first <= hi; ++it) sum += it->second;
  return sum;
}

Histogram dev_project_histogram(std::span<const ProjectState> projects) {
  Histogram h;
  for (const ProjectState& p : projects) ++h.bins[p.members.size()];
  return h;
}

Histogram histogram_from_events(std::span<const EventRecord> events) {
  EventAnalyzer analyzer;
  for (const EventRecord& e : events) analyzer.add(e);
  return analyzer.histogram();
}

std::vector<LogLogPoint> loglog_points(const Histogram& h) {
  std::vector<LogLogPoint> out;
  for (const auto& [dev, count] : h.bins) {
    if (dev < 1 || count < 1) continue;
    out.push_back({std::log10(static_cast<double>(dev)), std::log10(static_cast<double>(count))});
  }
  return out;
}

double spiral_radius(double theta, const SpiralParams& params) {
  const double a = params.a0 - params.a0 * (theta / kTwoPi);
  return a * theta;
}

double spread_radius(double theta, const SpiralParams& params) {
  const double delta = params.delta_slope * ((theta - params.theta_1) / kTwoPi);
  return spiral_radius(theta, params) - delta;
}

SpiralCurves spiral_reference(double theta_max, const SpiralParams& params, std::size_t n_samples) {
  if (!(theta_max > 0.0) || !std::isfinite(theta_max)) throw std::invalid_argument("theta_max must be positive");
  if (!(params.theta_1 >= 0.0)) throw std::invalid_argument("theta_1 must be >= 0");
  if (n_samples < 2) throw std::invalid_argument("n_samples must be >= 2");
  SpiralCurves curves;
  curves.base = sample(0.0, theta_max, n_samples, &spiral_radius, params);
  if (params.theta_1 > theta_max) {
    curves.warning = "theta_1 exceeds theta_max; spread curve is empty";
  } else {
    curves.spread = sample(params.theta_1, theta_max, n_samples, &spread_radius, params);
  }
  return curves;
}

std::vector<CartesianPoint> to_cartesian(std::span<const PolarPoint> curve, const SpiralParams& params) {
  std::vector<CartesianPoint> out;
  out.reserve(curve.size());
  for (const PolarPoint& p : curve) {
    out.push_back({params.origin_x + p.r * std::cos(p.theta), params.origin_y + p.r * std::sin(p.theta)});
  }
  return out;
}

std::string_view to_string(ScatterSeries s) { return s == ScatterSeries::Creation ? "creation" : "join"; }

EventAnalyzer::EventAnalyzer(double bin_width) : bin_width_(bin_width) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) throw std::invalid_argument("bin width must be positive");
  const auto n = static_cast<std::size_t>(std::ceil(kMaxNewTaskTotal / bin_width_));
  join_bins_.assign(n, 0);
  leave_bins_.assign(n, 0);
}

void EventAnalyzer::add(const EventRecord& e) {
  ++events_;
  const auto bump = [&](std::vector<std::uint64_t>& bins) {
    const auto i = static_cast<std::size_t>(std::floor(e.task_total / bin_width_));
    if (i >= join_bins_.size()) {
      join_bins_.resize(i + 1, 0);
      leave_bins_.resize(i + 1, 0);
    }
    ++bins[i];
  };
  switch (e.action) {
    case Action::Create:
      ++creates_;
      if (e.project) members_[to_index(*e.project)] = e.member_count;
      scatter_.push_back({ScatterSeries::Creation, e.task_total, e.fitness});
      break;
    case Action::Join:
      ++joins_;
      if (e.project) ++members_[to_index(*e.project)];
      bump(join_bins_);
      scatter_.push_back({ScatterSeries::Join, e.task_total, e.fitness});
      break;
    case Action::Leave:
      ++leaves_;
      if (e.project) {
        auto& m = members_[to_index(*e.project)];
        if (m > 0) --m;
      }
      bump(leave_bins_);
      break;
    case Action::NoOp:
      break;
  }
}

std::vector<ActionBin> EventAnalyzer::action_table() const {
  std::vector<ActionBin> out(join_bins_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].lo = static_cast<double>(i) * bin_width_;
    out[i].hi = static_cast<double>(i + 1) * bin_width_;
    out[i].joins = join_bins_[i];
    out[i].leaves = leave_bins_[i];
  }
  return out;
}

Histogram EventAnalyzer::histogram() const {
  Histogram h;
  for (const auto& [project, count] : members_) ++h.bins[count];
  return h;
}

std::vector<ActionBin> action_counts_by_task(std::span<const EventRecord> events, double bin_width) {
  EventAnalyzer analyzer(bin_width);
  for (const EventRecord& e : events) analyzer.add(e);
  return analyzer.action_table();
}

std::vector<ScatterPoint> task_fitness_scatter(std::span<const EventRecord> events) {
  EventAnalyzer analyzer;
  for (const EventRecord& e : events) analyzer.add(e);
  return analyzer.scatter();
}

}  // namespace forgesim
