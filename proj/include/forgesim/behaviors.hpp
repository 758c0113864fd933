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

// Decision rules for the two agent populations. Major agents create projects, either
// from scratch or by splitting an overloaded task off one of their own projects. Minor
// agents join projects when enough work is left and they have the time, and leave when
// their per-member load outweighs their skill.
//
// All functions here are pure: they read state and return a Decision. The engine applies
// decisions.

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "forgesim/model.hpp"
#include "forgesim/rng.hpp"

namespace forgesim {

struct BehaviorConfig {
  double p_new = 0.1;
  double sub_threshold = 1.0;
  double j_threshold = 0.5;
  double l_threshold = 0.5;
  double t_limit = kDefaultTimeLimit;

  /// Throws std::invalid_argument on an out-of-range field.
  void validate() const;
};

enum class Action : std::uint8_t { Create, Join, Leave, NoOp };

/// Why a decision came out the way it did. NoOp reasons name the gate that failed.
enum class Reason : std::uint8_t {
  CreatedNew,
  CreatedSub,
  Joined,
  Left,
  CreateDrawFailed,
  Idle,
  NoEligibleProject,
  AlreadyMember,
  CategoryMismatch,
  BelowJoinThreshold,
  TimeLimit,
  NoMembership,
  BelowLeaveThreshold,
};

/// Payload of a Create decision.
struct NewProject {
  Category category = Category::AudioVideo;
  TaskVector tasks{};
  Origin origin = Origin::New;
  std::optional<ProjectId> parent;   // Sub only
  std::optional<TaskKind> split_kind;  // Sub only
};

struct Decision {
  Action action = Action::NoOp;
  Reason reason = Reason::Idle;
  AgentId subject{};
  std::optional<ProjectId> project;
  std::optional<NewProject> created;
  /// The value that drove the decision: the create variate, Sub load, J, or L.
  double quantity = 0.0;
};

/// One Monte Carlo draw u in (0, 1]; creates iff p_new >= u. On success consumes one
/// more variate for the category and one per task kind.
Decision try_create_new(const AgentState& major, Rng& rng, const BehaviorConfig& config);

/// Average per-member load of one task kind.
double sub_load(const ProjectState& project, TaskKind kind);

/// One Sub decision per task kind whose load meets the threshold. Each carries half of the
/// parent's amount in that kind; applying it halves the parent's amount.
std::vector<Decision> try_create_sub(const AgentState& major, const ProjectState& project,
                                     const BehaviorConfig& config);

/// Fraction of the project's total work not yet covered by member skills, in [0, 1].
double join_pressure(const ProjectState& project, std::span<const AgentState> agents);

/// Total hours the agent would work per step after joining `project`.
/// Returns nullopt when the agent has no skill in a kind the project needs.
std::optional<double> prospective_total_time(const AgentState& agent, const ProjectState& project,
                                             std::span<const ProjectState> projects);

/// Category gate, then join-pressure gate, then the time-limit gate.
Decision try_join(const AgentState& agent, const ProjectState& project, const BehaviorConfig& config,
                  std::span<const AgentState> agents, std::span<const ProjectState> projects);

/// Per-member load minus skill, summed over kinds. May be negative.
double leave_load(const AgentState& agent, const ProjectState& project);

Decision try_leave(const AgentState& agent, const ProjectState& project, const BehaviorConfig& config);

std::string_view to_string(Action a);
std::string_view to_string(Reason r);
std::optional<Action> parse_action(std::string_view text);
std::optional<Reason> parse_reason(std::string_view text);

}  // namespace forgesim
