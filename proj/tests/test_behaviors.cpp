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

#include <doctest.h>

#include <limits>
#include <random>

#include "forgesim/behaviors.hpp"
#include "test_support.hpp"

using namespace forgesim;
using namespace forgesim::testing;

namespace {

// Creator 0 covers (0.4, 0.4, 0.2) of tasks (1.0, 1.0, 0.5): J = 1.5 / 2.5 = 0.6.
// Joiner 1 with skills (0.5, 0.5, 0.25) would share (0.5, 0.5, 0.25): 3 hours.
struct JoinFixture {
  std::vector<AgentState> agents = {minor_agent(0, {0.4, 0.4, 0.2}), minor_agent(1, {0.5, 0.5, 0.25})};
  std::vector<ProjectState> projects = {project_with(0, {1.0, 1.0, 0.5}, {0})};
  BehaviorConfig config;

  JoinFixture() {
    config.j_threshold = 0.5;
    link(agents, projects);
  }

  /// Adds memberships worth 22 hours to the joiner (5 x 4h + 2h).
  void overload() {
    agents.push_back(major_agent(2));
    for (std::uint32_t i = 1; i <= 5; ++i) projects.push_back(project_with(i, {0, 0, 2.0}, {2, 1}));
    projects.push_back(project_with(6, {0, 0, 1.0}, {2, 1}));
    link(agents, projects);
  }
};

}  // namespace

TEST_SUITE("behaviors") {
  TEST_CASE("try_create_new at probability 1 and 0") {
    const auto major = major_agent(0);
    BehaviorConfig cfg;
    Rng rng(3);
    cfg.p_new = 1.0;
    for (int i = 0; i < 1000; ++i) CHECK(try_create_new(major, rng, cfg).action == Action::Create);
    cfg.p_new = 0.0;
    for (int i = 0; i < 1000; ++i) CHECK(try_create_new(major, rng, cfg).action == Action::NoOp);
  }

  TEST_CASE("try_create_new rate matches p_new over 100k draws") {
    const auto major = major_agent(0);
    BehaviorConfig cfg;
    cfg.p_new = 0.3;
    Rng rng(2026);
    int created = 0;
    for (int i = 0; i < 100000; ++i) created += try_create_new(major, rng, cfg).action == Action::Create;
    CHECK(std::abs(created / 100000.0 - 0.3) <= 0.01);
  }

  TEST_CASE("created New projects sample category and tasks in range") {
    const auto major = major_agent(0);
    BehaviorConfig cfg;
    cfg.p_new = 1.0;
    Rng rng(9);
    std::vector<int> seen(kCategoryCount, 0);
    for (int i = 0; i < 5000; ++i) {
      const Decision d = try_create_new(major, rng, cfg);
      REQUIRE(d.created.has_value());
      CHECK(d.created->origin == Origin::New);
      ++seen[static_cast<std::size_t>(d.created->category)];
      for (double t : d.created->tasks) CHECK((t >= 0.0 && t <= 2.0));
    }
    for (int n : seen) CHECK(n > 0);
  }

  TEST_CASE("try_create_new rejects a minor agent") {
    Rng rng(1);
    CHECK_THROWS_AS(try_create_new(minor_agent(0, {0, 0, 0}), rng, BehaviorConfig{}), PreconditionError);
  }

  TEST_CASE("sub_load is the per-member task") {
    CHECK(sub_load(project_with(0, {1.8, 0, 0}, {0, 1}), TaskKind::Network) == doctest::Approx(0.9));
    CHECK(sub_load(project_with(0, {0, 0, 0}, {0, 1, 2}), TaskKind::Graphics) == 0.0);
    CHECK(sub_load(project_with(0, {0, 2.0, 0}, {0}), TaskKind::Database) == 2.0);
    CHECK_THROWS_AS(sub_load(project_with(0, {1, 1, 1}, {}), TaskKind::Network), DomainError);
  }

  TEST_CASE("try_create_sub splits each overloaded kind") {
    const auto major = major_agent(0);
    const auto p = project_with(4, {1.8, 0.2, 0}, {0, 1}, Category::Games);
    BehaviorConfig cfg;

    cfg.sub_threshold = 0.5;
    auto ds = try_create_sub(major, p, cfg);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].action == Action::Create);
    CHECK(ds[0].quantity == doctest::Approx(0.9));
    CHECK(ds[0].created->origin == Origin::Sub);
    CHECK(ds[0].created->category == Category::Games);
    CHECK(ds[0].created->parent == ProjectId{4});
    CHECK(ds[0].created->split_kind == TaskKind::Network);
    CHECK(ds[0].created->tasks == TaskVector{0.9, 0.0, 0.0});

    cfg.sub_threshold = 0.9;  // inclusive
    CHECK(try_create_sub(major, p, cfg).size() == 1);

    cfg.sub_threshold = 0.1;  // both non-empty kinds
    CHECK(try_create_sub(major, p, cfg).size() == 2);

    cfg.sub_threshold = std::numeric_limits<double>::max();
    CHECK(try_create_sub(major, p, cfg).empty());
  }

  TEST_CASE("try_create_sub requires the creator") {
    const auto p = project_with(0, {1, 1, 1}, {0});
    CHECK_THROWS_AS(try_create_sub(major_agent(5), p, BehaviorConfig{}), PreconditionError);
  }

  TEST_CASE("join_pressure examples") {
    std::vector<AgentState> agents = {minor_agent(0, {0, 0, 0}), minor_agent(1, {0.5, 1.0, 0.0}),
                                      minor_agent(2, {0.0, 0.5, 0.0})};
    // nobody has skill
    CHECK(join_pressure(project_with(0, {1, 1, 1}, {0}), agents) == 1.0);
    // skills cover the tasks exactly
    CHECK(join_pressure(project_with(0, {0.5, 1.5, 0}, {1, 2}), agents) == 0.0);
    // tasks (1, 2, 0), covered (0.5, 1.5, 0): (0.5 + 0.5) / 3
    CHECK(join_pressure(project_with(0, {1.0, 2.0, 0}, {1, 2}), agents) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(join_pressure(project_with(0, {0, 0, 0}, {0}), agents), DomainError);
  }

  TEST_CASE("try_join: category gate") {
    JoinFixture f;
    f.agents[1].affinities.reset();
    f.agents[1].affinities.set(static_cast<std::size_t>(Category::Games));
    const Decision d = try_join(f.agents[1], f.projects[0], f.config, f.agents, f.projects);
    CHECK(d.action == Action::NoOp);
    CHECK(d.reason == Reason::CategoryMismatch);
  }

  TEST_CASE("try_join: J = 0.6 above 0.5 with 3 hours joins") {
    JoinFixture f;
    CHECK(join_pressure(f.projects[0], f.agents) == doctest::Approx(0.6));
    CHECK(prospective_total_time(f.agents[1], f.projects[0], f.projects) == doctest::Approx(3.0));
    const Decision d = try_join(f.agents[1], f.projects[0], f.config, f.agents, f.projects);
    CHECK(d.action == Action::Join);
    CHECK(d.quantity == doctest::Approx(0.6));
  }

  TEST_CASE("try_join: J = 0.6 with 25 prospective hours is refused") {
    JoinFixture f;
    f.overload();
    CHECK(total_time(f.agents[1], f.projects) == 22.0);
    CHECK(prospective_total_time(f.agents[1], f.projects[0], f.projects) == 25.0);
    const Decision d = try_join(f.agents[1], f.projects[0], f.config, f.agents, f.projects);
    CHECK(d.action == Action::NoOp);
    CHECK(d.reason == Reason::TimeLimit);
  }

  TEST_CASE("try_join: threshold is inclusive and zero skill blocks the time gate") {
    JoinFixture f;
    f.config.j_threshold = join_pressure(f.projects[0], f.agents);
    CHECK(try_join(f.agents[1], f.projects[0], f.config, f.agents, f.projects).action == Action::Join);
    f.config.j_threshold = std::nextafter(f.config.j_threshold, 2.0);
    CHECK(try_join(f.agents[1], f.projects[0], f.config, f.agents, f.projects).reason == Reason::BelowJoinThreshold);

    f.config.j_threshold = 0.0;
    f.agents[1].skills = {0.5, 0.0, 0.25};
    CHECK(try_join(f.agents[1], f.projects[0], f.config, f.agents, f.projects).reason == Reason::TimeLimit);
  }

  TEST_CASE("try_join preconditions") {
    JoinFixture f;
    CHECK_THROWS_AS(try_join(f.agents[0], f.projects[0], f.config, f.agents, f.projects), PreconditionError);
    f.projects[0].completed = true;
    CHECK_THROWS_AS(try_join(f.agents[1], f.projects[0], f.config, f.agents, f.projects), PreconditionError);
    f.projects[0].completed = false;
    CHECK_THROWS_AS(try_join(major_agent(1), f.projects[0], f.config, f.agents, f.projects), PreconditionError);
  }

  TEST_CASE("leave_load examples") {
    // per-kind share 0.5 (1.5 / 3 members), skill 0.5 everywhere
    CHECK(leave_load(minor_agent(1, {0.5, 0.5, 0.5}), project_with(0, {1.5, 1.5, 1.5}, {0, 1, 2})) ==
          doctest::Approx(0.0));
    CHECK(leave_load(minor_agent(1, {0, 0, 0}), project_with(0, {1, 1, 1}, {1})) == doctest::Approx(3.0));
    CHECK(leave_load(minor_agent(1, {0.5, 0.5, 0.5}), project_with(0, {0.4, 0.4, 0.4}, {0, 1})) ==
          doctest::Approx(-0.9));
    CHECK_THROWS_AS(leave_load(minor_agent(9, {0, 0, 0}), project_with(0, {1, 1, 1}, {1})), PreconditionError);
  }

  TEST_CASE("try_leave compares inclusively") {
    BehaviorConfig cfg;
    // L = 1.2: shares (0.6, 0.6, 0.6), skills (0.2, 0.2, 0.2)
    const auto agent = minor_agent(1, {0.2, 0.2, 0.2});
    const auto p = project_with(0, {1.2, 1.2, 1.2}, {0, 1});
    cfg.l_threshold = 1.0;
    CHECK(try_leave(agent, p, cfg).action == Action::Leave);
    cfg.l_threshold = leave_load(agent, p);
    CHECK(try_leave(agent, p, cfg).action == Action::Leave);
    // L = 1.0 exactly at threshold 1.0
    const auto exact = project_with(0, {1.0, 1.0, 1.0}, {1});
    const auto skilled = minor_agent(1, {0.5, 0.75, 0.75});
    CHECK(leave_load(skilled, exact) == 1.0);
    cfg.l_threshold = 1.0;
    CHECK(try_leave(skilled, exact, cfg).action == Action::Leave);
    // L = -0.5 never meets 0
    const auto light = project_with(0, {0.5, 0.5, 0.5}, {1});
    const auto strong = minor_agent(1, {0.5, 0.5, 1.0});
    CHECK(leave_load(strong, light) == doctest::Approx(-0.5));
    cfg.l_threshold = 0.0;
    const Decision d = try_leave(strong, light, cfg);
    CHECK(d.action == Action::NoOp);
    CHECK(d.reason == Reason::BelowLeaveThreshold);
    CHECK_THROWS_AS(try_leave(minor_agent(7, {0, 0, 0}), light, cfg), PreconditionError);
  }

  TEST_CASE("property: raising a threshold never turns NoOp into an action") {
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
      std::vector<AgentState> agents;
      for (std::uint32_t i = 0; i < 4; ++i) agents.push_back(minor_agent(i, {unit(gen), unit(gen), unit(gen)}));
      std::vector<ProjectState> projects = {
          project_with(0, {2 * unit(gen), 2 * unit(gen), 2 * unit(gen)}, {0, 1}),
          project_with(1, {2 * unit(gen), 2 * unit(gen), 2 * unit(gen)}, {2, 3})};
      link(agents, projects);
      if (is_complete(projects[1], agents)) continue;
      BehaviorConfig lo, hi;
      lo.j_threshold = unit(gen);
      hi.j_threshold = lo.j_threshold + unit(gen);
      lo.l_threshold = 3 * unit(gen) - 1.5;
      hi.l_threshold = lo.l_threshold + unit(gen);

      const Decision join_lo = try_join(agents[0], projects[1], lo, agents, projects);
      const Decision join_hi = try_join(agents[0], projects[1], hi, agents, projects);
      if (join_lo.action == Action::NoOp) CHECK(join_hi.action == Action::NoOp);
      const Decision leave_lo = try_leave(agents[0], projects[0], lo);
      const Decision leave_hi = try_leave(agents[0], projects[0], hi);
      if (leave_lo.action == Action::NoOp) CHECK(leave_hi.action == Action::NoOp);
    }
  }

  TEST_CASE("property: a join shrinks every prior share and fixes the new leave load") {
    std::mt19937_64 gen(22);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
      const std::uint32_t n = 1 + static_cast<std::uint32_t>(gen() % 10);
      std::vector<std::uint32_t> roster;
      for (std::uint32_t i = 0; i < n; ++i) roster.push_back(i);
      ProjectState p = project_with(0, {2 * unit(gen) + 1e-3, 2 * unit(gen) + 1e-3, 2 * unit(gen)}, roster);
      const auto joiner = minor_agent(n, {unit(gen), unit(gen), unit(gen)});
      const ProjectState before = p;
      p.members.push_back(joiner.id);
      CHECK(p.member_count() == before.member_count() + 1);
      for (TaskKind k : kAllTaskKinds) {
        if (at(p.tasks, k) > 0) CHECK(work_share(p, k) < work_share(before, k));
      }
      double expected = 0.0;
      for (TaskKind k : kAllTaskKinds) {
        expected += at(p.tasks, k) / static_cast<double>(n + 1) - at(joiner.skills, k);
      }
      CHECK(leave_load(joiner, p) == doctest::Approx(expected).epsilon(1e-12));
    }
  }

  TEST_CASE("decisions are reproducible from identical inputs") {
    JoinFixture f;
    const Decision a = try_join(f.agents[1], f.projects[0], f.config, f.agents, f.projects);
    const Decision b = try_join(f.agents[1], f.projects[0], f.config, f.agents, f.projects);
    CHECK(a.action == b.action);
    CHECK(a.quantity == b.quantity);
    Rng r1(77), r2(77);
    BehaviorConfig cfg;
    cfg.p_new = 0.5;
    for (int i = 0; i < 100; ++i) {
      const Decision x = try_create_new(major_agent(0), r1, cfg);
      const Decision y = try_create_new(major_agent(0), r2, cfg);
      CHECK(x.action == y.action);
      CHECK(x.quantity == y.quantity);
    }
  }

  TEST_CASE("action and reason names round-trip") {
    for (int i = 0; i < 4; ++i) CHECK(parse_action(to_string(static_cast<Action>(i))) == static_cast<Action>(i));
    for (int i = 0; i <= static_cast<int>(Reason::BelowLeaveThreshold); ++i) {
      CHECK(parse_reason(to_string(static_cast<Reason>(i))) == static_cast<Reason>(i));
    }
  }
}
