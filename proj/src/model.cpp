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

#include "forgesim/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace forgesim {

namespace {

constexpr std::array<std::string_view, kCategoryCount> kCategoryNames = {
    "audio_video",        "business_enterprise", "communications",     "development",
    "home_education",     "games",               "graphics",           "science_engineering",
    "security_utilities", "system_administration"};

void check_range(const TaskVector& v, double hi, const char* what) {
  for (double x : v) {
    if (!(x >= 0.0 && x <= hi)) {
      throw std::invalid_argument(std::string(what) + " out of range [0, " + std::to_string(hi) +
                                  "]: " + std::to_string(x));
    }
  }
}

}  // namespace

bool ProjectState::has_member(AgentId agent) const {
  return std::find(members.begin(), members.end(), agent) != members.end();
}

double ProjectState::task_total() const {
  double sum = 0.0;
  for (double t : tasks) sum += t;
  return sum;
}

bool AgentState::is_member_of(ProjectId project) const {
  return std::binary_search(memberships.begin(), memberships.end(), project);
}

ProjectState make_project(ProjectId id, Category category, const TaskVector& tasks, AgentId creator,
                          std::int64_t created_at, Origin origin) {
  check_range(tasks, kMaxTaskAmount, "task amount");
  ProjectState p;
  p.id = id;
  p.category = category;
  p.tasks = tasks;
  p.members = {creator};
  p.creator = creator;
  p.created_at = created_at;
  p.origin = origin;
  return p;
}

AgentState make_agent(AgentId id, AgentKind kind, const TaskVector& skills, CategorySet affinities) {
  check_range(skills, kMaxSkill, "skill");
  AgentState a;
  a.id = id;
  a.kind = kind;
  a.skills = skills;
  a.affinities = affinities;
  return a;
}

double work_share(const ProjectState& project, TaskKind kind) {
  if (project.members.empty()) {
    throw DomainError("work_share: project " + std::to_string(to_index(project.id)) + " has no members");
  }
  return at(project.tasks, kind) / static_cast<double>(project.members.size());
}

double project_time(const AgentState& agent, const ProjectState& project, TaskKind kind) {
  const double share = work_share(project, kind);
  if (share == 0.0) return 0.0;
  const double skill = at(agent.skills, kind);
  if (skill <= 0.0) {
    throw DomainError("project_time: agent " + std::to_string(to_index(agent.id)) + " has no " +
                      std::string(to_string(kind)) + " skill for project " +
                      std::to_string(to_index(project.id)));
  }
  return share / skill;
}

double project_time(const AgentState& agent, const ProjectState& project) {
  double hours = 0.0;
  for (TaskKind k : kAllTaskKinds) hours += project_time(agent, project, k);
  return hours;
}

double total_time(const AgentState& agent, std::span<const ProjectState> projects) {
  double hours = 0.0;
  for (ProjectId pid : agent.memberships) {
    hours += project_time(agent, projects[to_index(pid)]);
  }
  return hours;
}

double remaining_work(const ProjectState& project, TaskKind kind, std::span<const AgentState> agents) {
  double covered = 0.0;
  for (AgentId member : project.members) covered += at(agents[to_index(member)].skills, kind);
  return std::max(0.0, at(project.tasks, kind) - covered);
}

bool is_complete(const ProjectState& project, std::span<const AgentState> agents) {
  return std::all_of(kAllTaskKinds.begin(), kAllTaskKinds.end(),
                     [&](TaskKind k) { return remaining_work(project, k, agents) == 0.0; });
}

std::vector<AgentId> WorkloadLedger::over_limit(double t_limit) const {
  std::vector<AgentId> out;
  for (std::size_t i = 0; i < total.size(); ++i) {
    if (total[i] > t_limit) out.push_back(AgentId{static_cast<std::uint32_t>(i)});
  }
  return out;
}

WorkloadLedger build_ledger(std::span<const AgentState> agents, std::span<const ProjectState> projects,
                            std::optional<AgentKind> only_kind) {
  WorkloadLedger ledger;
  ledger.total.assign(agents.size(), 0.0);
  ledger.per_project.resize(agents.size());
  for (const AgentState& agent : agents) {
    if (only_kind && agent.kind != *only_kind) continue;
    const auto idx = to_index(agent.id);
    double sum = 0.0;
    for (ProjectId pid : agent.memberships) {
      double hours;
      try {
        hours = project_time(agent, projects[to_index(pid)]);
      } catch (const DomainError&) {
        hours = std::numeric_limits<double>::infinity();
      }
      ledger.per_project[idx].push_back({pid, hours});
      sum += hours;
    }
    ledger.total[idx] = sum;
  }
  return ledger;
}

std::string_view to_string(TaskKind k) {
  switch (k) {
    case TaskKind::Network: return "network";
    case TaskKind::Database: return "database";
    case TaskKind::Graphics: return "graphics";
  }
  return "?";
}

std::string_view to_string(Category c) { return kCategoryNames.at(static_cast<std::size_t>(c)); }

std::string_view to_string(AgentKind k) { return k == AgentKind::Major ? "major" : "minor"; }

std::string_view to_string(Origin o) { return o == Origin::New ? "new" : "sub"; }

std::optional<Category> parse_category(std::string_view text) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (kCategoryNames[i] == text) return static_cast<Category>(i);
  }
  return std::nullopt;
}

std::optional<Origin> parse_origin(std::string_view text) {
  if (text == "new") return Origin::New;
  if (text == "sub") return Origin::Sub;
  return std::nullopt;
}

}  // namespace forgesim
