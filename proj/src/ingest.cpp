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

#include "forgesim/ingest.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <string_view>
#include <unordered_map>
#include <utility>

namespace forgesim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

/// Splits one line; nullopt on an unterminated quote.
std::optional<std::vector<std::string>> split_fields(std::string_view line, char delim) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && trim(cur).empty()) {
      cur.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == delim) {
      fields.emplace_back(was_quoted ? cur : std::string(trim(cur)));
      cur.clear();
      was_quoted = false;
    } else if (!(was_quoted && (c == ' ' || c == '\r'))) {
      cur.push_back(c);
    }
  }
  if (quoted) return std::nullopt;
  fields.emplace_back(was_quoted ? cur : std::string(trim(cur)));
  return fields;
}

bool needs_quotes(std::string_view s) { return s.find_first_of(",\"\t\n\r") != std::string_view::npos; }

void write_field(std::ostream& out, std::string_view s) {
  if (!needs_quotes(s) && trim(s) == s) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

IngestResult parse_user_group(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("input is empty; expected a header with user_id and group_id");
  const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
  const auto header = split_fields(line, delim);
  if (!header) throw FormatError("header line has an unterminated quote");

  std::optional<std::size_t> user_col;
  std::optional<std::size_t> group_col;
  for (std::size_t i = 0; i < header->size(); ++i) {
    std::string_view name = (*header)[i];
    if (i == 0 && name.starts_with("\xEF\xBB\xBF")) name.remove_prefix(3);
    if (name == "user_id" && !user_col) user_col = i;
    if (name == "group_id" && !group_col) group_col = i;
  }
  if (!user_col) throw FormatError("missing required column 'user_id'");
  if (!group_col) throw FormatError("missing required column 'group_id'");
  const std::size_t needed = std::max(*user_col, *group_col) + 1;

  IngestResult result;
  std::set<std::pair<std::string, std::string>> seen;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ++result.rows;
    const auto fields = split_fields(line, delim);
    if (!fields) {
      result.errors.push_back({line_no, "unterminated quote"});
      continue;
    }
    if (fields->size() < needed) {
      result.errors.push_back({line_no, "expected at least " + std::to_string(needed) + " fields, found " +
                                            std::to_string(fields->size())});
      continue;
    }
    MembershipRecord rec{(*fields)[*user_col], (*fields)[*group_col]};
    if (rec.user_id.empty() || rec.group_id.empty()) {
      result.errors.push_back({line_no, "empty user_id or group_id"});
      continue;
    }
    if (!seen.emplace(rec.user_id, rec.group_id).second) {
      ++result.duplicates;
      continue;
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

Histogram empirical_histogram(std::span<const MembershipRecord> records) {
  std::set<std::pair<std::string_view, std::string_view>> distinct;
  for (const MembershipRecord& r : records) distinct.emplace(r.group_id, r.user_id);
  std::unordered_map<std::string_view, std::uint64_t> per_group;
  for (const auto& [group, user] : distinct) ++per_group[group];
  Histogram h;
  for (const auto& [group, devs] : per_group) ++h.bins[devs];
  return h;
}

void write_user_group(std::ostream& out, std::span<const MembershipRecord> records) {
  out << "user_id,group_id\n";
  for (const MembershipRecord& r : records) {
    write_field(out, r.user_id);
    out << ',';
    write_field(out, r.group_id);
    out << '\n';
  }
}

}  // namespace forgesim
