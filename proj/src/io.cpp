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

#include "forgesim/io.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <system_error>

namespace forgesim {

namespace {

constexpr std::array<std::string_view, 9> kEventColumns = {
    "step",    "agent_id",      "action", "project_id", "project_task_total", "member_count",
    "fitness", "driving_value", "detail"};

constexpr std::string_view kOverloadTag = ":overload=";

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
bool parse_num(std::string_view s, T& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::string format_number(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf.data(), ptr);
}

std::string event_detail(const EventRecord& e) {
  std::string d(to_string(e.reason));
  if (e.overloaded > 0) {
    d += kOverloadTag;
    d += std::to_string(e.overloaded);
  }
  return d;
}

void write_event_csv_row(std::ostream& out, const EventRecord& e) {
  out << e.step << ',' << to_index(e.agent) << ',' << to_string(e.action) << ',';
  if (e.project) out << to_index(*e.project);
  out << ',' << format_number(e.task_total) << ',' << e.member_count << ',' << format_number(e.fitness) << ','
      << format_number(e.driving_value) << ',' << event_detail(e) << '\n';
}

CsvEventWriter::CsvEventWriter(std::ostream& out) : out_(out) { out_ << kEventCsvHeader << '\n'; }

void write_events_csv(std::ostream& out, std::span<const EventRecord> events) {
  CsvEventWriter w(out);
  for (const EventRecord& e : events) w.record(e);
}

void write_event_json(std::ostream& out, const EventRecord& e) {
  out << "{\"step\":" << e.step << ",\"agent_id\":" << to_index(e.agent) << ",\"action\":\"" << to_string(e.action)
      << "\",\"project_id\":";
  if (e.project) {
    out << to_index(*e.project);
  } else {
    out << "null";
  }
  out << ",\"project_task_total\":" << format_number(e.task_total) << ",\"member_count\":" << e.member_count
      << ",\"fitness\":" << format_number(e.fitness) << ",\"driving_value\":" << format_number(e.driving_value)
      << ",\"detail\":\"" << event_detail(e) << "\"}\n";
}

void read_events_csv(std::istream& in, const std::function<void(const EventRecord&)>& fn) {
  std::string line;
  if (!std::getline(in, line)) return;  // an empty file is an empty log
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_commas(line);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i >= kEventColumns.size() || header[i] != kEventColumns[i]) {
      bool known = false;
      for (auto c : kEventColumns) known = known || c == header[i];
      throw FormatError("line 1: " + std::string(known ? "misplaced" : "unknown") + " column '" +
                        std::string(header[i]) + "'");
    }
  }
  if (header.size() != kEventColumns.size()) {
    throw FormatError("line 1: missing column '" + std::string(kEventColumns[header.size()]) + "'");
  }

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto bad = [&](const std::string& why) {
      return FormatError("line " + std::to_string(line_no) + ": " + why + ": " + line);
    };
    const auto f = split_commas(line);
    if (f.size() != kEventColumns.size()) throw bad("expected 9 fields");
    EventRecord e;
    std::uint32_t agent = 0;
    if (!parse_num(f[0], e.step)) throw bad("bad step");
    if (!parse_num(f[1], agent)) throw bad("bad agent_id");
    e.agent = AgentId{agent};
    const auto action = parse_action(f[2]);
    if (!action) throw bad("bad action");
    e.action = *action;
    if (!f[3].empty()) {
      std::uint32_t pid = 0;
      if (!parse_num(f[3], pid)) throw bad("bad project_id");
      e.project = ProjectId{pid};
    }
    if (!parse_num(f[4], e.task_total)) throw bad("bad project_task_total");
    if (!parse_num(f[5], e.member_count)) throw bad("bad member_count");
    if (!parse_num(f[6], e.fitness)) throw bad("bad fitness");
    if (!parse_num(f[7], e.driving_value)) throw bad("bad driving_value");
    std::string_view detail = f[8];
    if (const auto tag = detail.find(kOverloadTag); tag != std::string_view::npos) {
      if (!parse_num(detail.substr(tag + kOverloadTag.size()), e.overloaded)) throw bad("bad overload count");
      detail = detail.substr(0, tag);
    }
    const auto reason = parse_reason(detail);
    if (!reason) throw bad("bad detail");
    e.reason = *reason;
    fn(e);
  }
}

std::vector<EventRecord> read_events_csv(std::istream& in) {
  std::vector<EventRecord> out;
  read_events_csv(in, [&](const EventRecord& e) { out.push_back(e); });
  return out;
}

void write_projects_csv(std::ostream& out, std::span<const ProjectState> projects) {
  out << "project_id,category,origin,task_network,task_database,task_graphics,member_count,completed\n";
  for (const ProjectState& p : projects) {
    out << to_index(p.id) << ',' << to_string(p.category) << ',' << to_string(p.origin);
    for (double t : p.tasks) out << ',' << format_number(t);
    out << ',' << p.members.size() << ',' << (p.completed ? 1 : 0) << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "developers,projects\n";
  for (const auto& [dev, count] : h.bins) out << dev << ',' << count << '\n';
}

void write_loglog_csv(std::ostream& out, std::span<const LogLogPoint> points) {
  out << "log_dev,log_proj\n";
  for (const LogLogPoint& p : points) out << format_number(p.log_dev) << ',' << format_number(p.log_proj) << '\n';
}

void write_spiral_csv(std::ostream& out, const SpiralCurves& curves) {
  out << "curve_id,theta,r\n";
  for (const PolarPoint& p : curves.base) out << "A," << format_number(p.theta) << ',' << format_number(p.r) << '\n';
  for (const PolarPoint& p : curves.spread) {
    out << "B," << format_number(p.theta) << ',' << format_number(p.r) << '\n';
  }
}

void write_action_table_csv(std::ostream& out, std::span<const ActionBin> table) {
  out << "bin_lo,bin_hi,joins,leaves\n";
  for (const ActionBin& b : table) {
    out << format_number(b.lo) << ',' << format_number(b.hi) << ',' << b.joins << ',' << b.leaves << '\n';
  }
}

void write_scatter_csv(std::ostream& out, std::span<const ScatterPoint> points) {
  out << "series,task_total,fitness\n";
  for (const ScatterPoint& p : points) {
    out << to_string(p.series) << ',' << format_number(p.task_total) << ',' << format_number(p.fitness) << '\n';
  }
}

}  // namespace forgesim
