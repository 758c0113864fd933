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

// Discrete-step driver.
//
// Agent ids: majors are 0 .. n_major-1, minors follow. Variate order is fixed:
//
//   init   every agent in id order: 3 skill draws (network, database, graphics);
//          minors then draw 10 category coin flips (u < p_cat), repeated until at
//          least one category is set.
//   step   majors in id order: create draw, and on success category + 3 task draws;
//          then Sub checks on each owned, incomplete project in id order (no draws).
//          minors in id order: one action draw (join / leave / noop, 1/3 each);
//          join consumes one selection draw when any project is eligible;
//          leave consumes one draw to pick among memberships when it has any.
//
// Every agent-step appends one event; each applied Sub split appends one more.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "forgesim/behaviors.hpp"
#include "forgesim/growth.hpp"
#include "forgesim/model.hpp"
#include "forgesim/rng.hpp"

namespace forgesim {

struct SimConfig {
  std::uint32_t n_major = 1000;
  std::uint32_t n_minor = 20000;
  std::uint32_t n_steps = 1000;
  std::uint64_t seed = 1;
  double p_cat = 0.3;
  BehaviorConfig behavior;
  FitnessParams fitness;
  /// Run the full state consistency check after every step.
  bool check_invariants = true;

  /// Throws ConfigError.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the state loses internal consistency; always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct EventRecord {
  std::int64_t step = 0;
  AgentId agent{};
  Action action = Action::NoOp;
  Reason reason = Reason::Idle;
  std::optional<ProjectId> project;
  /// Snapshot of the project at decision time (for a Create: the new project).
  double task_total = 0.0;
  std::uint32_t member_count = 0;
  double fitness = 0.0;
  double driving_value = 0.0;
  /// After a Leave: remaining minor members now above the time limit.
  std::uint32_t overloaded = 0;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

class EventSink {
 public:
  virtual ~EventSink() = default;
  virtual void record(const EventRecord& event) = 0;
};

class EventLog final : public EventSink {
 public:
  void record(const EventRecord& event) override { events.push_back(event); }
  std::vector<EventRecord> events;
};

class NullSink final : public EventSink {
 public:
  void record(const EventRecord&) override {}
};

class CallbackSink final : public EventSink {
 public:
  explicit CallbackSink(std::function<void(const EventRecord&)> fn) : fn_(std::move(fn)) {}
  void record(const EventRecord& event) override { fn_(event); }

 private:
  std::function<void(const EventRecord&)> fn_;
};

struct SimState {
  /// Index of the next step to execute; projects created during it get this timestamp.
  std::int64_t step = 0;
  Rng rng{0};
  std::vector<AgentState> agents;      // indexed by agent id
  std::vector<ProjectState> projects;  // indexed by project id

  [[nodiscard]] std::uint32_t n_major() const;
};

struct RunResult {
  SimState state;
  std::vector<EventRecord> events;
};

SimState init(const SimConfig& config);

/// Executes one step, applying each decision as soon as it is made.
void step(SimState& state, const SimConfig& config, EventSink& sink);

SimState run(const SimConfig& config, EventSink& sink);
RunResult run(const SimConfig& config);

/// Throws InvariantError describing the first inconsistency found.
void check_invariants(const SimState& state);

struct GridPoint {
  std::size_t index = 0;
  double j_threshold = 0.0;
  double l_threshold = 0.0;

  /// Directory-style label, e.g. "J0.5_L1.0".
  [[nodiscard]] std::string label() const;
};

/// The nine (J, L) threshold pairs, L-major as they are usually listed.
std::array<GridPoint, 9> threshold_grid();

/// Base config with the point's thresholds and seed = base seed + point index.
SimConfig grid_config(const SimConfig& base, const GridPoint& point);

struct SweepResult {
  GridPoint point;
  SimConfig config;
  RunResult result;
};

/// Runs all nine grid points, up to `jobs` at a time.
std::vector<SweepResult> sweep(const SimConfig& base, unsigned jobs = 1);

/// Calls fn(i) for i in [0, n) on up to `jobs` threads. The first exception thrown by
/// any call is rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace forgesim
