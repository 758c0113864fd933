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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "forgesim/config.hpp"
#include "forgesim/io.hpp"
#include "test_support.hpp"

using namespace forgesim;
using namespace forgesim::testing;

namespace {

RunResult busy_run() {
  SimConfig c;
  c.n_major = 6;
  c.n_minor = 150;
  c.n_steps = 50;
  c.seed = 77;
  c.behavior.p_new = 0.3;
  c.behavior.j_threshold = 0.0;
  c.behavior.l_threshold = 0.0;
  c.behavior.sub_threshold = 0.6;
  return run(c);
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("number formatting round-trips") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.1) == "0.1");
    for (double v : {0.1 + 0.2, 1.0 / 3.0, 5e-324, 1.7976931348623157e308, -2.5}) {
      CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
    }
  }

  TEST_CASE("event CSV round-trips exactly") {
    const RunResult r = busy_run();
    std::ostringstream out;
    write_events_csv(out, r.events);
    const std::string text = out.str();
    CHECK(text.rfind(std::string(kEventCsvHeader) + "\n", 0) == 0);
    std::istringstream in(text);
    const auto back = read_events_csv(in);
    CHECK(back == r.events);

    // a second pass reproduces the bytes
    std::ostringstream again;
    write_events_csv(again, back);
    CHECK(again.str() == text);
  }

  TEST_CASE("overload counts survive the detail column") {
    EventRecord e;
    e.action = Action::Leave;
    e.reason = Reason::Left;
    e.project = ProjectId{3};
    e.overloaded = 2;
    CHECK(event_detail(e) == "left:overload=2");
    std::ostringstream out;
    write_events_csv(out, std::vector<EventRecord>{e});
    std::istringstream in(out.str());
    CHECK(read_events_csv(in).front() == e);
  }

  TEST_CASE("event CSV reader reports bad headers and rows by line") {
    std::istringstream unknown("step,agent_id,action,x\n");
    CHECK_THROWS_WITH_AS(read_events_csv(unknown), "line 1: unknown column 'x'", FormatError);
    std::istringstream bad_row(std::string(kEventCsvHeader) + "\n0,1,create,,1,1,1,1,created_new\n0,1,jump,,1,1,1,1,idle\n");
    try {
      read_events_csv(bad_row);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(std::string(e.what()).rfind("line 3:", 0) == 0);
    }
  }

  TEST_CASE("JSON lines carry the same fields") {
    EventRecord e;
    e.step = 4;
    e.agent = AgentId{12};
    e.action = Action::Join;
    e.reason = Reason::Joined;
    e.project = ProjectId{2};
    e.task_total = 2.5;
    e.member_count = 3;
    e.fitness = 0.5;
    e.driving_value = 0.75;
    std::ostringstream out;
    write_event_json(out, e);
    CHECK(out.str() ==
          "{\"step\":4,\"agent_id\":12,\"action\":\"join\",\"project_id\":2,\"project_task_total\":2.5,"
          "\"member_count\":3,\"fitness\":0.5,\"driving_value\":0.75,\"detail\":\"joined\"}\n");
    e.project.reset();
    std::ostringstream none;
    write_event_json(none, e);
    CHECK(none.str().find("\"project_id\":null") != std::string::npos);
  }

  TEST_CASE("table writers use the documented headers") {
    const RunResult r = busy_run();
    std::ostringstream projects, hist, loglog, spiral, actions, scatter;
    write_projects_csv(projects, r.state.projects);
    write_histogram_csv(hist, Histogram{{{1, 4}, {2, 1}}});
    write_loglog_csv(loglog, loglog_points(Histogram{{{1, 100}}}));
    write_spiral_csv(spiral, spiral_reference(6.0, SpiralParams{}, 3));
    write_action_table_csv(actions, action_counts_by_task(r.events));
    write_scatter_csv(scatter, task_fitness_scatter(r.events));
    const auto first_line = [](const std::ostringstream& s) { return s.str().substr(0, s.str().find('\n')); };
    CHECK(first_line(projects) ==
          "project_id,category,origin,task_network,task_database,task_graphics,member_count,completed");
    CHECK(hist.str() == "developers,projects\n1,4\n2,1\n");
    CHECK(loglog.str() == "log_dev,log_proj\n0,2\n");
    CHECK(first_line(spiral) == "curve_id,theta,r");
    CHECK(spiral.str().find("\nA,0,0\n") != std::string::npos);
    CHECK(first_line(actions) == "bin_lo,bin_hi,joins,leaves");
    CHECK(first_line(scatter) == "series,task_total,fitness");
    std::size_t rows = 0;
    for (char ch : projects.str()) rows += ch == '\n';
    CHECK(rows == r.state.projects.size() + 1);
  }
}

TEST_SUITE("config") {
  TEST_CASE("defaults are the full-size community") {
    const SimConfig c;
    CHECK(c.n_major == 1000);
    CHECK(c.n_minor == 20000);
    CHECK(c.n_steps == 1000);
    CHECK(c.behavior.t_limit == 24.0);
    CHECK_NOTHROW(c.validate());
  }

  TEST_CASE("parse_config reads key = value with comments") {
    std::istringstream in("# small\nn_major = 5\nn_minor=50   # inline\n\nj_threshold = 1.0\ncheck_invariants = false\n");
    const SimConfig c = parse_config(in);
    CHECK(c.n_major == 5);
    CHECK(c.n_minor == 50);
    CHECK(c.behavior.j_threshold == 1.0);
    CHECK_FALSE(c.check_invariants);
    CHECK(c.n_steps == 1000);
  }

  TEST_CASE("parse_config errors name the line") {
    std::istringstream unknown("n_major = 5\nbogus = 1\n");
    CHECK_THROWS_WITH_AS(parse_config(unknown), "line 2: unknown key 'bogus'", ConfigError);
    std::istringstream bad("seed = x\n");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
    std::istringstream invalid("p_new = 2\n");
    CHECK_THROWS_AS(parse_config(invalid), ConfigError);
    std::istringstream no_eq("n_major 5\n");
    CHECK_THROWS_AS(parse_config(no_eq), ConfigError);
  }

  TEST_CASE("format_config round-trips") {
    SimConfig c;
    c.n_major = 3;
    c.seed = 123456789012345ULL;
    c.behavior.p_new = 0.1 + 0.2;
    c.fitness.decay_rate = 1.0 / 3.0;
    c.check_invariants = false;
    std::istringstream in(format_config(c));
    const SimConfig back = parse_config(in);
    CHECK(format_config(back) == format_config(c));
    CHECK(back.behavior.p_new == c.behavior.p_new);
    CHECK(back.fitness.decay_rate == c.fitness.decay_rate);
  }

  TEST_CASE("load_config accepts plain files and run manifests") {
    const auto dir = std::filesystem::temp_directory_path() / "forgesim_config_test";
    std::filesystem::create_directories(dir);
    {
      std::ofstream(dir / "a.conf") << "n_major = 2\nn_minor = 9\n";
      std::ofstream(dir / "m.json") << R"({"tool":"forge_sim","config":{"n_major":"4","seed":"11"}})";
      std::ofstream(dir / "bad.json") << R"({"tool":"forge_sim"})";
    }
    CHECK(load_config(dir / "a.conf").n_minor == 9);
    const SimConfig m = load_config(dir / "m.json");
    CHECK(m.n_major == 4);
    CHECK(m.seed == 11);
    CHECK_THROWS_AS(load_config(dir / "bad.json"), ConfigError);
    CHECK_THROWS_AS(load_config(dir / "missing.conf"), ConfigError);
    std::filesystem::remove_all(dir);
  }
}
