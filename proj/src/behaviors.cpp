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

#include "forgesim/behaviors.hpp"

#include <array>
#include <cmath>
#include <string>

namespace forgesim {

namespace {

constexpr std::array<std::string_view, 4> kActionNames = {"create", "join", "leave", "noop"};
constexpr std::array<std::string_view, 13> kReasonNames = {
    "created_new",      "created_sub",    "joined",        "left",
    "create_draw_failed", "idle",         "no_eligible",   "already_member",
    "category",         "join_threshold", "time_limit",    "no_membership",
    "leave_threshold"};

std::string id_str(AgentId id) { return std::to_string(to_index(id)); }
std::string id_str(ProjectId id) { return std::to_string(to_index(id)); }

Decision noop(AgentId who, std::optional<ProjectId> project, Reason why, double quantity) {
  Decision d;
  d.action = Action::NoOp;
  d.reason = why;
  d.subject = who;
  d.project = project;
  d.quantity = quantity;
  return d;
}

}  // namespace

void BehaviorConfig::validate() const {
  if (!(p_new >= 0.0 && p_new <= 1.0)) throw std::invalid_argument("p_new must lie in [0, 1]");
  if (!(sub_threshold >= 0.0)) throw std::invalid_argument("sub_threshold must be >= 0");
  if (!std::isfinite(j_threshold)) throw std::invalid_argument("j_threshold must be finite");
  if (!std::isfinite(l_threshold)) throw std::invalid_argument("l_threshold must be finite");
  if (!(t_limit > 0.0)) throw std::invalid_argument("t_limit must be > 0");
}

Decision try_create_new(const AgentState& major, Rng& rng, const BehaviorConfig& config) {
  if (major.kind != AgentKind::Major) {
    throw PreconditionError("try_create_new: agent " + id_str(major.id) + " is not a major agent");
  }
  // 1 - [0,1) gives (0,1], so p_new = 0 never creates and p_new = 1 always does.
  const double u = 1.0 - rng.uniform01();
  if (!(config.p_new >= u)) return noop(major.id, std::nullopt, Reason::CreateDrawFailed, u);

  NewProject payload;
  payload.category = static_cast<Category>(rng.uniform_index(kCategoryCount));
  for (TaskKind k : kAllTaskKinds) at(payload.tasks, k) = rng.uniform(0.0, kMaxTaskAmount);
  payload.origin = Origin::New;

  Decision d;
  d.action = Action::Create;
  d.reason = Reason::CreatedNew;
  d.subject = major.id;
  d.created = payload;
  d.quantity = u;
  return d;
}

double sub_load(const ProjectState& project, TaskKind kind) {
  if (project.members.empty()) {
    throw DomainError("sub_load: project " + id_str(project.id) + " has no members");
  }
  return at(project.tasks, kind) / static_cast<double>(project.members.size());
}

std::vector<Decision> try_create_sub(const AgentState& major, const ProjectState& project,
                                     const BehaviorConfig& config) {
  if (major.kind != AgentKind::Major || project.creator != major.id) {
    throw PreconditionError("try_create_sub: agent " + id_str(major.id) + " did not create project " +
                            id_str(project.id));
  }
  std::vector<Decision> out;
  for (TaskKind k : kAllTaskKinds) {
    const double load = sub_load(project, k);
    if (!(load >= config.sub_threshold)) continue;
    NewProject payload;
    payload.category = project.category;
    at(payload.tasks, k) = at(project.tasks, k) / 2.0;
    payload.origin = Origin::Sub;
    payload.parent = project.id;
    payload.split_kind = k;

    Decision d;
    d.action = Action::Create;
    d.reason = Reason::CreatedSub;
    d.subject = major.id;
    d.project = project.id;
    d.created = payload;
    d.quantity = load;
    out.push_back(d);
  }
  return out;
}

double join_pressure(const ProjectState& project, std::span<const AgentState> agents) {
  double remaining = 0.0;
  double total = 0.0;
  for (TaskKind k : kAllTaskKinds) {
    remaining += remaining_work(project, k, agents);
    total += at(project.tasks, k);
  }
  if (!(total > 0.0)) {
    throw DomainError("join_pressure: project " + id_str(project.id) + " has no work");
  }
  return remaining / total;
}

std::optional<double> prospective_total_time(const AgentState& agent, const ProjectState& project,
                                             std::span<const ProjectState> projects) {
  const double members_after = static_cast<double>(project.members.size() + 1);
  auto candidate_time = [&]() -> std::optional<double> {
    double hours = 0.0;
    for (TaskKind k : kAllTaskKinds) {
      const double share = at(project.tasks, k) / members_after;
      if (share == 0.0) continue;
      const double skill = at(agent.skills, k);
      if (skill <= 0.0) return std::nullopt;
      hours += share / skill;
    }
    return hours;
  };

  // Summed in project-id order, the same order total_time uses once the join is applied.
  double total = 0.0;
  bool placed = false;
  for (ProjectId pid : agent.memberships) {
    if (!placed && project.id < pid) {
      const auto t = candidate_time();
      if (!t) return std::nullopt;
      total += *t;
      placed = true;
    }
    total += project_time(agent, projects[to_index(pid)]);
  }
  if (!placed) {
    const auto t = candidate_time();
    if (!t) return std::nullopt;
    total += *t;
  }
  return total;
}

Decision try_join(const AgentState& agent, const ProjectState& project, const BehaviorConfig& config,
                  std::span<const AgentState> agents, std::span<const ProjectState> projects) {
  if (agent.kind != AgentKind::Minor) {
    throw PreconditionError("try_join: agent " + id_str(agent.id) + " is not a minor agent");
  }
  if (project.has_member(agent.id)) {
    throw PreconditionError("try_join: agent " + id_str(agent.id) + " already in project " +
                            id_str(project.id));
  }
  if (project.completed) {
    throw PreconditionError("try_join: project " + id_str(project.id) + " is completed");
  }

  if (!agent.has_affinity(project.category)) {
    return noop(agent.id, project.id, Reason::CategoryMismatch, 0.0);
  }
  const double pressure = join_pressure(project, agents);
  if (!(pressure >= config.j_threshold)) {
    return noop(agent.id, project.id, Reason::BelowJoinThreshold, pressure);
  }
  const auto hours = prospective_total_time(agent, project, projects);
  if (!hours || !(*hours <= config.t_limit)) {
    return noop(agent.id, project.id, Reason::TimeLimit, pressure);
  }

  Decision d;
  d.action = Action::Join;
  d.reason = Reason::Joined;
  d.subject = agent.id;
  d.project = project.id;
  d.quantity = pressure;
  return d;
}

double leave_load(const AgentState& agent, const ProjectState& project) {
  if (!project.has_member(agent.id)) {
    throw PreconditionError("leave_load: agent " + id_str(agent.id) + " is not in project " +
                            id_str(project.id));
  }
  const auto n = static_cast<double>(project.members.size());
  double load = 0.0;
  for (TaskKind k : kAllTaskKinds) load += at(project.tasks, k) / n - at(agent.skills, k);
  return load;
}

Decision try_leave(const AgentState& agent, const ProjectState& project, const BehaviorConfig& config) {
  if (agent.kind != AgentKind::Minor) {
    throw PreconditionError("try_leave: agent " + id_str(agent.id) + " is not a minor agent");
  }
  const double load = leave_load(agent, project);
  if (!(load >= config.l_threshold)) {
    return noop(agent.id, project.id, Reason::BelowLeaveThreshold, load);
  }
  Decision d;
  d.action = Action::Leave;
  d.reason = Reason::Left;
  d.subject = agent.id;
  d.project = project.id;
  d.quantity = load;
  return d;
}

std::string_view to_string(Action a) { return kActionNames.at(static_cast<std::size_t>(a)); }
std::string_view to_string(Reason r) { return kReasonNames.at(static_cast<std::size_t>(r)); }

std::optional<Action> parse_action(std::string_view text) {
  for (std::size_t i = 0; i < kActionNames.size(); ++i) {
    if (kActionNames[i] == text) return static_cast<Action>(i);
  }
  return std::nullopt;
}

std::optional<Reason> parse_reason(std::string_view text) {
  for (std::size_t i = 0; i < kReasonNames.size(); ++i) {
    if (kReasonNames[i] == text) return static_cast<Reason>(i);
  }
  return std::nullopt;
}

}  // namespace forgesim
