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

// CSV and line-delimited JSON encodings of runs and analyses. Numbers are written in
// shortest round-trip decimal form with '.' as separator; every row ends in '\n'.

#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forgesim/analytics.hpp"
#include "forgesim/engine.hpp"
#include "forgesim/ingest.hpp"

namespace forgesim {

/// Shortest decimal that parses back to exactly `v`.
std::string format_number(double v);

inline constexpr std::string_view kEventCsvHeader =
    "step,agent_id,action,project_id,project_task_total,member_count,fitness,driving_value,detail";

/// Reason name, plus ":overload=N" when a Leave pushed N members past the time limit.
std::string event_detail(const EventRecord& e);

void write_event_csv_row(std::ostream& out, const EventRecord& e);
void write_events_csv(std::ostream& out, std::span<const EventRecord> events);
void write_event_json(std::ostream& out, const EventRecord& e);

/// Streams events to CSV as they are recorded. Writes the header on construction.
class CsvEventWriter final : public EventSink {
 public:
  explicit CsvEventWriter(std::ostream& out);
  void record(const EventRecord& e) override { write_event_csv_row(out_, e); }

 private:
  std::ostream& out_;
};

class JsonlEventWriter final : public EventSink {
 public:
  explicit JsonlEventWriter(std::ostream& out) : out_(out) {}
  void record(const EventRecord& e) override { write_event_json(out_, e); }

 private:
  std::ostream& out_;
};

/// Fans one event out to several sinks.
class TeeSink final : public EventSink {
 public:
  explicit TeeSink(std::vector<EventSink*> sinks) : sinks_(std::move(sinks)) {}
  void record(const EventRecord& e) override {
    for (EventSink* s : sinks_) s->record(e);
  }

 private:
  std::vector<EventSink*> sinks_;
};

/// Parses an event CSV, calling fn per row. Throws FormatError naming the line for an
/// unknown or missing column or a malformed row.
void read_events_csv(std::istream& in, const std::function<void(const EventRecord&)>& fn);
std::vector<EventRecord> read_events_csv(std::istream& in);

void write_projects_csv(std::ostream& out, std::span<const ProjectState> projects);
void write_histogram_csv(std::ostream& out, const Histogram& h);
void write_loglog_csv(std::ostream& out, std::span<const LogLogPoint> points);
void write_spiral_csv(std::ostream& out, const SpiralCurves& curves);
void write_action_table_csv(std::ostream& out, std::span<const ActionBin> table);
void write_scatter_csv(std::ostream& out, std::span<const ScatterPoint> points);

}  // namespace forgesim
