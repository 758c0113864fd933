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

#include "forgesim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace forgesim {

void SimConfig::validate() const {
  if (n_major == 0) throw ConfigError("n_major must be positive");
  if (n_minor == 0) throw ConfigError("n_minor must be positive");
  if (!(p_cat > 0.0 && p_cat <= 1.0)) throw ConfigError("p_cat must lie in (0, 1]");
  try {
    behavior.validate();
    fitness.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::uint32_t SimState::n_major() const {
  return static_cast<std::uint32_t>(std::count_if(agents.begin(), agents.end(), [](const AgentState& a) {
    return a.kind == AgentKind::Major;
  }));
}

SimState init(const SimConfig& config) {
  config.validate();
  SimState state;
  state.rng = Rng(config.seed);
  const std::uint32_t n_agents = config.n_major + config.n_minor;
  state.agents.reserve(n_agents);
  for (std::uint32_t i = 0; i < n_agents; ++i) {
    const AgentKind kind = i < config.n_major ? AgentKind::Major : AgentKind::Minor;
    TaskVector skills{};
    for (TaskKind k : kAllTaskKinds) at(skills, k) = state.rng.uniform01();
    CategorySet affinities;
    if (kind == AgentKind::Minor) {
      while (affinities.none()) {
        for (std::size_t c = 0; c < kCategoryCount; ++c) affinities.set(c, state.rng.uniform01() < config.p_cat);
      }
    }
    state.agents.push_back(make_agent(AgentId{i}, kind, skills, affinities));
  }
  return state;
}

namespace {

class Stepper {
 public:
  Stepper(SimState& state, const SimConfig& config, EventSink& sink)
      : s_(state), cfg_(config), sink_(sink), now_(state.step) {}

  void run() {
    for (const AgentState& a : s_.agents) {
      if (a.kind == AgentKind::Major) major_turn(a.id);
    }
    index_.rebuild(s_.projects, now_, cfg_.fitness);
    for (const AgentState& a : s_.agents) {
      if (a.kind == AgentKind::Minor) minor_turn(a.id);
    }
    ++s_.step;
  }

 private:
  AgentState& agent(AgentId id) { return s_.agents[to_index(id)]; }
  ProjectState& project(ProjectId id) { return s_.projects[to_index(id)]; }

  EventRecord snapshot(AgentId who, const Decision& d) {
    EventRecord e;
    e.step = now_;
    e.agent = who;
    e.action = d.action;
    e.reason = d.reason;
    e.driving_value = d.quantity;
    return e;
  }

  void fill_project(EventRecord& e, const ProjectState& p) {
    e.project = p.id;
    e.task_total = p.task_total();
    e.member_count = static_cast<std::uint32_t>(p.members.size());
    e.fitness = fitness(p, now_, cfg_.fitness);
  }

  ProjectId create_project(AgentId creator, const NewProject& payload) {
    const ProjectId id{static_cast<std::uint32_t>(s_.projects.size())};
    ProjectState p = make_project(id, payload.category, payload.tasks, creator, now_, payload.origin);
    p.completed = is_complete(p, s_.agents);
    s_.projects.push_back(std::move(p));
    // Ids only grow, so appending keeps memberships sorted.
    agent(creator).memberships.push_back(id);
    return id;
  }

  void major_turn(AgentId id) {
    const Decision d = try_create_new(agent(id), s_.rng, cfg_.behavior);
    EventRecord e = snapshot(id, d);
    if (d.action == Action::Create) fill_project(e, project(create_project(id, *d.created)));
    sink_.record(e);

    const std::vector<ProjectId> owned = agent(id).memberships;
    for (ProjectId pid : owned) {
      if (project(pid).completed) continue;
      for (const Decision& split : try_create_sub(agent(id), project(pid), cfg_.behavior)) {
        const TaskKind kind = *split.created->split_kind;
        at(project(pid).tasks, kind) = at(split.created->tasks, kind);
        const ProjectId child = create_project(id, *split.created);
        project(pid).completed = is_complete(project(pid), s_.agents);
        EventRecord se = snapshot(id, split);
        fill_project(se, project(child));
        sink_.record(se);
      }
    }
  }

  void minor_turn(AgentId id) {
    switch (s_.rng.uniform_index(3)) {
      case 0: join_intent(id); break;
      case 1: leave_intent(id); break;
      default: {
        Decision d;
        d.subject = id;
        sink_.record(snapshot(id, d));
      }
    }
  }

  void join_intent(AgentId id) {
    Decision d;
    d.subject = id;
    std::optional<ProjectId> pid;
    if (index_.total() > 0.0) pid = index_.pick(s_.rng.uniform01());
    if (!pid) {
      d.reason = Reason::NoEligibleProject;
      sink_.record(snapshot(id, d));
      return;
    }
    ProjectState& p = project(*pid);
    if (p.has_member(id)) {
      d.reason = Reason::AlreadyMember;
      d.project = *pid;
    } else {
      d = try_join(agent(id), p, cfg_.behavior, s_.agents, s_.projects);
    }
    EventRecord e = snapshot(id, d);
    fill_project(e, p);
    sink_.record(e);
    if (d.action != Action::Join) return;

    AgentState& a = agent(id);
    p.members.push_back(id);
    a.memberships.insert(std::upper_bound(a.memberships.begin(), a.memberships.end(), p.id), p.id);
    p.completed = is_complete(p, s_.agents);
    index_.update(p);

    const double hours = total_time(a, s_.projects);
    if (!(hours <= cfg_.behavior.t_limit)) {
      std::ostringstream msg;
      msg << "step " << now_ << ": agent " << to_index(id) << " joined project " << to_index(p.id)
          << " and now works " << hours << " hours";
      throw InvariantError(msg.str());
    }
  }

  void leave_intent(AgentId id) {
    Decision d;
    d.subject = id;
    AgentState& a = agent(id);
    if (a.memberships.empty()) {
      d.reason = Reason::NoMembership;
      sink_.record(snapshot(id, d));
      return;
    }
    const ProjectId pid = a.memberships[s_.rng.uniform_index(a.memberships.size())];
    ProjectState& p = project(pid);
    d = try_leave(a, p, cfg_.behavior);
    EventRecord e = snapshot(id, d);
    fill_project(e, p);

    if (d.action == Action::Leave) {
      p.members.erase(std::find(p.members.begin(), p.members.end(), id));
      a.memberships.erase(std::lower_bound(a.memberships.begin(), a.memberships.end(), pid));
      p.completed = is_complete(p, s_.agents);
      index_.update(p);
      // Shares of those who stay grow; report anyone pushed past the limit.
      for (AgentId other : p.members) {
        const AgentState& o = agent(other);
        if (o.kind != AgentKind::Minor) continue;
        bool over = false;
        try {
          over = !(total_time(o, s_.projects) <= cfg_.behavior.t_limit);
        } catch (const DomainError&) {
          over = true;
        }
        if (over) ++e.overloaded;
      }
    }
    sink_.record(e);
  }

  SimState& s_;
  const SimConfig& cfg_;
  EventSink& sink_;
  const std::int64_t now_;
  SelectionIndex index_;
};

std::string describe(AgentId a) { return "agent " + std::to_string(to_index(a)); }
std::string describe(ProjectId p) { return "project " + std::to_string(to_index(p)); }

}  // namespace

void step(SimState& state, const SimConfig& config, EventSink& sink) {
  Stepper(state, config, sink).run();
  if (config.check_invariants) check_invariants(state);
}

SimState run(const SimConfig& config, EventSink& sink) {
  SimState state = init(config);
  for (std::uint32_t i = 0; i < config.n_steps; ++i) step(state, config, sink);
  return state;
}

RunResult run(const SimConfig& config) {
  EventLog log;
  SimState state = run(config, log);
  return {std::move(state), std::move(log.events)};
}

void check_invariants(const SimState& state) {
  const auto fail = [&](const std::string& what) {
    throw InvariantError("after step " + std::to_string(state.step) + ": " + what);
  };
  std::size_t agent_edges = 0;
  for (std::size_t i = 0; i < state.agents.size(); ++i) {
    const AgentState& a = state.agents[i];
    if (to_index(a.id) != i) fail(describe(a.id) + " stored at index " + std::to_string(i));
    for (double s : a.skills) {
      if (!(s >= 0.0 && s <= kMaxSkill)) fail(describe(a.id) + " has skill out of range");
    }
    if (std::adjacent_find(a.memberships.begin(), a.memberships.end(), std::greater_equal<>()) !=
        a.memberships.end()) {
      fail(describe(a.id) + " memberships not strictly sorted");
    }
    for (ProjectId pid : a.memberships) {
      if (to_index(pid) >= state.projects.size()) fail(describe(a.id) + " in unknown " + describe(pid));
      if (a.kind == AgentKind::Major && state.projects[to_index(pid)].creator != a.id) {
        fail("major " + describe(a.id) + " belongs to " + describe(pid) + " it did not create");
      }
    }
    agent_edges += a.memberships.size();
  }

  std::size_t project_edges = 0;
  std::vector<AgentId> sorted;
  for (std::size_t i = 0; i < state.projects.size(); ++i) {
    const ProjectState& p = state.projects[i];
    if (to_index(p.id) != i) fail(describe(p.id) + " stored at index " + std::to_string(i));
    for (double t : p.tasks) {
      if (!(t >= 0.0 && t <= kMaxTaskAmount)) fail(describe(p.id) + " has task amount out of range");
    }
    sorted = p.members;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      fail(describe(p.id) + " lists a member twice");
    }
    for (AgentId member : p.members) {
      if (to_index(member) >= state.agents.size()) fail(describe(p.id) + " lists unknown " + describe(member));
      if (!state.agents[to_index(member)].is_member_of(p.id)) {
        fail(describe(p.id) + " lists " + describe(member) + " but the agent does not list the project");
      }
    }
    if (!p.has_member(p.creator)) fail(describe(p.id) + " lost its creator");
    if (p.completed != is_complete(p, state.agents)) fail(describe(p.id) + " has a stale completion flag");
    project_edges += p.members.size();
  }
  if (agent_edges != project_edges) {
    fail("membership edge counts disagree: agents " + std::to_string(agent_edges) + ", projects " +
         std::to_string(project_edges));
  }
}

std::string GridPoint::label() const {
  const auto fmt = [](double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(1);
    os << v;
    return os.str();
  };
  return "J" + fmt(j_threshold) + "_L" + fmt(l_threshold);
}

std::array<GridPoint, 9> threshold_grid() {
  constexpr std::array<double, 3> levels = {0.0, 0.5, 1.0};
  std::array<GridPoint, 9> grid;
  std::size_t i = 0;
  for (double l : levels) {
    for (double j : levels) {
      grid[i] = GridPoint{i, j, l};
      ++i;
    }
  }
  return grid;
}

SimConfig grid_config(const SimConfig& base, const GridPoint& point) {
  SimConfig c = base;
  c.behavior.j_threshold = point.j_threshold;
  c.behavior.l_threshold = point.l_threshold;
  c.seed = base.seed + point.index;
  return c;
}

std::vector<SweepResult> sweep(const SimConfig& base, unsigned jobs) {
  const auto grid = threshold_grid();
  std::vector<SweepResult> results(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t i) {
    results[i].point = grid[i];
    results[i].config = grid_config(base, grid[i]);
    results[i].result = run(results[i].config);
  });
  return results;
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  const unsigned threads = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace forgesim
