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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "forgesim/analytics.hpp"
#include "forgesim/behaviors.hpp"
#include "forgesim/config.hpp"
#include "forgesim/engine.hpp"
#include "forgesim/growth.hpp"
#include "forgesim/ingest.hpp"
#include "forgesim/io.hpp"
#include "forgesim/model.hpp"

namespace py = pybind11;
using namespace forgesim;

namespace {

std::vector<std::uint32_t> ids(const std::vector<AgentId>& v) {
  std::vector<std::uint32_t> out;
  for (AgentId a : v) out.push_back(to_index(a));
  return out;
}

std::vector<std::uint32_t> ids(const std::vector<ProjectId>& v) {
  std::vector<std::uint32_t> out;
  for (ProjectId p : v) out.push_back(to_index(p));
  return out;
}

std::map<std::uint64_t, std::uint64_t> bins(const Histogram& h) { return h.bins; }

Category category_of(const std::string& name) {
  const auto c = parse_category(name);
  if (!c) throw py::value_error("unknown category '" + name + "'");
  return *c;
}

}  // namespace

PYBIND11_MODULE(_forgesim, m) {
  m.doc() = "Agent-based simulator of open-source developer communities.";
  m.attr("__version__") = FORGESIM_VERSION;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<EmptyUniverse>(m, "EmptyUniverse", PyExc_LookupError);

  py::enum_<TaskKind>(m, "TaskKind")
      .value("NETWORK", TaskKind::Network)
      .value("DATABASE", TaskKind::Database)
      .value("GRAPHICS", TaskKind::Graphics);
  py::enum_<AgentKind>(m, "AgentKind").value("MAJOR", AgentKind::Major).value("MINOR", AgentKind::Minor);
  py::enum_<Origin>(m, "Origin").value("NEW", Origin::New).value("SUB", Origin::Sub);
  py::enum_<Action>(m, "Action")
      .value("CREATE", Action::Create)
      .value("JOIN", Action::Join)
      .value("LEAVE", Action::Leave)
      .value("NOOP", Action::NoOp);

  py::class_<BehaviorConfig>(m, "BehaviorConfig")
      .def(py::init<>())
      .def_readwrite("p_new", &BehaviorConfig::p_new)
      .def_readwrite("sub_threshold", &BehaviorConfig::sub_threshold)
      .def_readwrite("j_threshold", &BehaviorConfig::j_threshold)
      .def_readwrite("l_threshold", &BehaviorConfig::l_threshold)
      .def_readwrite("t_limit", &BehaviorConfig::t_limit);

  py::class_<FitnessParams>(m, "FitnessParams")
      .def(py::init<>())
      .def_readwrite("decay_rate", &FitnessParams::decay_rate)
      .def_readwrite("floor", &FitnessParams::floor);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("n_major", &SimConfig::n_major)
      .def_readwrite("n_minor", &SimConfig::n_minor)
      .def_readwrite("n_steps", &SimConfig::n_steps)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("p_cat", &SimConfig::p_cat)
      .def_readwrite("behavior", &SimConfig::behavior)
      .def_readwrite("fitness", &SimConfig::fitness)
      .def_readwrite("check_invariants", &SimConfig::check_invariants)
      .def("validate", &SimConfig::validate)
      .def("__repr__", [](const SimConfig& c) { return "SimConfig(\n" + format_config(c) + ")"; });

  m.def("parse_config", [](const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
  }, py::arg("text"));
  m.def("format_config", &format_config, py::arg("config"));

  py::class_<ProjectState>(m, "Project")
      .def_property_readonly("id", [](const ProjectState& p) { return to_index(p.id); })
      .def_property_readonly("category", [](const ProjectState& p) { return std::string(to_string(p.category)); })
      .def_readonly("tasks", &ProjectState::tasks)
      .def_property_readonly("members", [](const ProjectState& p) { return ids(p.members); })
      .def_property_readonly("creator", [](const ProjectState& p) { return to_index(p.creator); })
      .def_readonly("created_at", &ProjectState::created_at)
      .def_readonly("origin", &ProjectState::origin)
      .def_readonly("completed", &ProjectState::completed)
      .def_property_readonly("task_total", &ProjectState::task_total);

  py::class_<AgentState>(m, "Agent")
      .def_property_readonly("id", [](const AgentState& a) { return to_index(a.id); })
      .def_readonly("kind", &AgentState::kind)
      .def_readonly("skills", &AgentState::skills)
      .def_property_readonly("affinities",
                             [](const AgentState& a) {
                               std::vector<std::string> out;
                               for (std::size_t c = 0; c < kCategoryCount; ++c) {
                                 if (a.affinities.test(c)) out.emplace_back(to_string(static_cast<Category>(c)));
                               }
                               return out;
                             })
      .def_property_readonly("memberships", [](const AgentState& a) { return ids(a.memberships); });

  m.def(
      "make_project",
      [](std::uint32_t id, const std::string& category, const TaskVector& tasks, std::uint32_t creator,
         std::int64_t created_at, Origin origin) {
        return make_project(ProjectId{id}, category_of(category), tasks, AgentId{creator}, created_at, origin);
      },
      py::arg("id"), py::arg("category"), py::arg("tasks"), py::arg("creator"), py::arg("created_at") = 0,
      py::arg("origin") = Origin::New);
  m.def(
      "make_agent",
      [](std::uint32_t id, AgentKind kind, const TaskVector& skills, const std::vector<std::string>& affinities) {
        CategorySet set;
        for (const auto& name : affinities) set.set(static_cast<std::size_t>(category_of(name)));
        return make_agent(AgentId{id}, kind, skills, set);
      },
      py::arg("id"), py::arg("kind"), py::arg("skills"), py::arg("affinities") = std::vector<std::string>{});
  m.def(
      "with_members",
      [](ProjectState p, const std::vector<std::uint32_t>& members) {
        p.members.clear();
        for (auto a : members) p.members.push_back(AgentId{a});
        return p;
      },
      py::arg("project"), py::arg("members"), "Copy of a project with its roster replaced.");

  m.def("work_share", &work_share, py::arg("project"), py::arg("kind"));
  m.def("sub_load", &sub_load, py::arg("project"), py::arg("kind"));
  m.def("leave_load", &leave_load, py::arg("agent"), py::arg("project"));
  m.def(
      "remaining_work",
      [](const ProjectState& p, TaskKind k, const std::vector<AgentState>& agents) {
        return remaining_work(p, k, agents);
      },
      py::arg("project"), py::arg("kind"), py::arg("agents"));
  m.def(
      "join_pressure",
      [](const ProjectState& p, const std::vector<AgentState>& agents) { return join_pressure(p, agents); },
      py::arg("project"), py::arg("agents"));

  m.def("fitness", &fitness, py::arg("project"), py::arg("now"), py::arg("params") = FitnessParams{});
  m.def(
      "selection_weights",
      [](const std::vector<ProjectState>& projects, std::int64_t now, const FitnessParams& params) {
        return selection_weights(projects, now, params);
      },
      py::arg("projects"), py::arg("now"), py::arg("params") = FitnessParams{});
  m.def(
      "roulette_pick", [](const std::vector<double>& w, double u) { return roulette_pick(w, u); }, py::arg("weights"),
      py::arg("u"));

  py::class_<EventRecord>(m, "Event")
      .def_readonly("step", &EventRecord::step)
      .def_property_readonly("agent_id", [](const EventRecord& e) { return to_index(e.agent); })
      .def_readonly("action", &EventRecord::action)
      .def_property_readonly("project_id",
                             [](const EventRecord& e) -> std::optional<std::uint32_t> {
                               if (!e.project) return std::nullopt;
                               return to_index(*e.project);
                             })
      .def_readonly("project_task_total", &EventRecord::task_total)
      .def_readonly("member_count", &EventRecord::member_count)
      .def_readonly("fitness", &EventRecord::fitness)
      .def_readonly("driving_value", &EventRecord::driving_value)
      .def_property_readonly("detail", &event_detail);

  py::class_<SimState>(m, "SimState")
      .def_readonly("step", &SimState::step)
      .def_readonly("agents", &SimState::agents)
      .def_readonly("projects", &SimState::projects);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("state", &RunResult::state)
      .def_readonly("events", &RunResult::events)
      .def("events_csv", [](const RunResult& r) {
        std::ostringstream out;
        write_events_csv(out, r.events);
        return out.str();
      });

  m.def("init", &init, py::arg("config"));
  m.def(
      "run", [](const SimConfig& c) { return run(c); }, py::arg("config"), py::call_guard<py::gil_scoped_release>());

  py::class_<GridPoint>(m, "GridPoint")
      .def_readonly("index", &GridPoint::index)
      .def_readonly("j_threshold", &GridPoint::j_threshold)
      .def_readonly("l_threshold", &GridPoint::l_threshold)
      .def_property_readonly("label", &GridPoint::label);
  m.def("threshold_grid", [] {
    const auto g = threshold_grid();
    return std::vector<GridPoint>(g.begin(), g.end());
  });
  m.def("grid_config", &grid_config, py::arg("base"), py::arg("point"));

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("point", &SweepResult::point)
      .def_readonly("config", &SweepResult::config)
      .def_readonly("result", &SweepResult::result);
  m.def("sweep", &sweep, py::arg("base"), py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());

  m.def(
      "dev_project_histogram",
      [](const std::vector<ProjectState>& projects) { return bins(dev_project_histogram(projects)); },
      py::arg("projects"));
  m.def(
      "loglog_points",
      [](const std::map<std::uint64_t, std::uint64_t>& h) {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : loglog_points(Histogram{h})) out.emplace_back(p.log_dev, p.log_proj);
        return out;
      },
      py::arg("histogram"));

  py::class_<SpiralParams>(m, "SpiralParams")
      .def(py::init<>())
      .def_readwrite("theta_1", &SpiralParams::theta_1)
      .def_readwrite("a0", &SpiralParams::a0)
      .def_readwrite("delta_slope", &SpiralParams::delta_slope)
      .def_readwrite("origin_x", &SpiralParams::origin_x)
      .def_readwrite("origin_y", &SpiralParams::origin_y);
  m.def("spiral_radius", &spiral_radius, py::arg("theta"), py::arg("params") = SpiralParams{});
  m.def("spread_radius", &spread_radius, py::arg("theta"), py::arg("params") = SpiralParams{});
  m.def(
      "spiral_reference",
      [](double theta_max, const SpiralParams& params, std::size_t n) {
        const SpiralCurves c = spiral_reference(theta_max, params, n);
        const auto pts = [](const std::vector<PolarPoint>& v) {
          std::vector<std::pair<double, double>> out;
          for (const auto& p : v) out.emplace_back(p.theta, p.r);
          return out;
        };
        py::dict d;
        d["A"] = pts(c.base);
        d["B"] = pts(c.spread);
        d["warning"] = c.warning;
        return d;
      },
      py::arg("theta_max"), py::arg("params") = SpiralParams{}, py::arg("n_samples") = 100);

  m.def(
      "action_counts_by_task",
      [](const std::vector<EventRecord>& events, double width) {
        std::vector<std::tuple<double, double, std::uint64_t, std::uint64_t>> out;
        for (const auto& b : action_counts_by_task(events, width)) out.emplace_back(b.lo, b.hi, b.joins, b.leaves);
        return out;
      },
      py::arg("events"), py::arg("bin_width") = kDefaultBinWidth);
  m.def(
      "task_fitness_scatter",
      [](const std::vector<EventRecord>& events) {
        std::vector<std::tuple<std::string, double, double>> out;
        for (const auto& p : task_fitness_scatter(events)) {
          out.emplace_back(std::string(to_string(p.series)), p.task_total, p.fitness);
        }
        return out;
      },
      py::arg("events"));

  m.def(
      "parse_user_group",
      [](const std::string& text) {
        std::istringstream in(text);
        const IngestResult r = parse_user_group(in);
        std::vector<std::pair<std::string, std::string>> records;
        for (const auto& rec : r.records) records.emplace_back(rec.user_id, rec.group_id);
        std::vector<std::pair<std::size_t, std::string>> errors;
        for (const auto& e : r.errors) errors.emplace_back(e.line, e.message);
        py::dict d;
        d["records"] = records;
        d["errors"] = errors;
        d["duplicates"] = r.duplicates;
        return d;
      },
      py::arg("text"));
  m.def(
      "empirical_histogram",
      [](const std::vector<std::pair<std::string, std::string>>& pairs) {
        std::vector<MembershipRecord> records;
        for (const auto& [u, g] : pairs) records.push_back({u, g});
        return bins(empirical_histogram(records));
      },
      py::arg("records"));
}
