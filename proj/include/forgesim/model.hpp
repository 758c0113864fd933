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

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace forgesim {

/// Kinds of work a project can require. The set is closed.
enum class TaskKind : std::uint8_t { Network = 0, Database = 1, Graphics = 2 };

inline constexpr std::size_t kTaskKindCount = 3;
inline constexpr std::array<TaskKind, kTaskKindCount> kAllTaskKinds = {
    TaskKind::Network, TaskKind::Database, TaskKind::Graphics};

/// Software categories a project belongs to.
enum class Category : std::uint8_t {
  AudioVideo = 0,
  BusinessEnterprise,
  Communications,
  Development,
  HomeEducation,
  Games,
  Graphics,
  ScienceEngineering,
  SecurityUtilities,
  SystemAdministration,
};

inline constexpr std::size_t kCategoryCount = 10;

enum class AgentKind : std::uint8_t { Major, Minor };

/// How a project came to exist: from scratch, or split off an overloaded parent.
enum class Origin : std::uint8_t { New, Sub };

enum class AgentId : std::uint32_t {};
enum class ProjectId : std::uint32_t {};

constexpr std::uint32_t to_index(AgentId id) { return static_cast<std::uint32_t>(id); }
constexpr std::uint32_t to_index(ProjectId id) { return static_cast<std::uint32_t>(id); }

/// Per-kind amounts (task work units or skill per step), indexed by TaskKind.
using TaskVector = std::array<double, kTaskKindCount>;
using CategorySet = std::bitset<kCategoryCount>;

constexpr double& at(TaskVector& v, TaskKind k) { return v[static_cast<std::size_t>(k)]; }
constexpr double at(const TaskVector& v, TaskKind k) { return v[static_cast<std::size_t>(k)]; }

inline constexpr double kMaxTaskAmount = 2.0;
inline constexpr double kMaxSkill = 1.0;
inline constexpr double kDefaultTimeLimit = 24.0;

/// Raised when project state makes a quantity undefined (e.g. an empty roster).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation is called outside its contract.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ProjectState {
  ProjectId id{};
  Category category = Category::AudioVideo;
  TaskVector tasks{};
  /// Join order; never holds duplicates.
  std::vector<AgentId> members;
  AgentId creator{};
  std::int64_t created_at = 0;
  Origin origin = Origin::New;
  bool completed = false;

  [[nodiscard]] std::size_t member_count() const { return members.size(); }
  [[nodiscard]] bool has_member(AgentId agent) const;
  [[nodiscard]] double task_total() const;
  /// A project nobody works on any more stays in history but is never selected.
  [[nodiscard]] bool frozen() const { return members.empty(); }
};

struct AgentState {
  AgentId id{};
  AgentKind kind = AgentKind::Minor;
  TaskVector skills{};
  CategorySet affinities;
  /// Sorted ascending by project id.
  std::vector<ProjectId> memberships;

  [[nodiscard]] bool is_member_of(ProjectId project) const;
  [[nodiscard]] bool has_affinity(Category c) const {
    return affinities.test(static_cast<std::size_t>(c));
  }
};

/// Builds a project and validates the task range; the creator becomes the sole member.
ProjectState make_project(ProjectId id, Category category, const TaskVector& tasks, AgentId creator,
                          std::int64_t created_at, Origin origin);

/// Builds an agent and validates the skill range.
AgentState make_agent(AgentId id, AgentKind kind, const TaskVector& skills, CategorySet affinities = {});

/// Equal slice of one task kind per member.
double work_share(const ProjectState& project, TaskKind kind);

/// Hours the agent spends on one kind of a project. A kind with no work costs nothing;
/// positive work with zero skill throws DomainError.
double project_time(const AgentState& agent, const ProjectState& project, TaskKind kind);

/// Hours per step the agent spends on one project, summed over task kinds.
double project_time(const AgentState& agent, const ProjectState& project);

/// Hours per step summed over every membership. `projects` is indexed by project id.
double total_time(const AgentState& agent, std::span<const ProjectState> projects);

/// Work of a kind not covered by the summed skill of current members, floored at 0.
/// `agents` is indexed by agent id.
double remaining_work(const ProjectState& project, TaskKind kind, std::span<const AgentState> agents);

/// True iff no task kind has remaining work.
bool is_complete(const ProjectState& project, std::span<const AgentState> agents);

/// Per-agent working hours: totals and per-project breakdown.
struct WorkloadLedger {
  struct Entry {
    ProjectId project{};
    double hours = 0.0;
  };
  std::vector<double> total;                  // indexed by agent id
  std::vector<std::vector<Entry>> per_project;  // indexed by agent id, in membership order

  /// Agents whose total exceeds the limit.
  [[nodiscard]] std::vector<AgentId> over_limit(double t_limit) const;
};

/// Builds the ledger for the given agents. Agents with undefined time (positive work, zero
/// skill) get +infinity so they surface in over_limit.
WorkloadLedger build_ledger(std::span<const AgentState> agents, std::span<const ProjectState> projects,
                            std::optional<AgentKind> only_kind = std::nullopt);

std::string_view to_string(TaskKind k);
std::string_view to_string(Category c);
std::string_view to_string(AgentKind k);
std::string_view to_string(Origin o);

std::optional<Category> parse_category(std::string_view text);
std::optional<Origin> parse_origin(std::string_view text);

}  // namespace forgesim
