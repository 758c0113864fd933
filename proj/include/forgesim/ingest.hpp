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

// Reader for flat user/group membership exports (one row per developer role in a
// project). Only the user_id and group_id columns are used.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "forgesim/analytics.hpp"

namespace forgesim {

struct MembershipRecord {
  std::string user_id;
  std::string group_id;

  friend bool operator==(const MembershipRecord&, const MembershipRecord&) = default;
};

/// The header lacks a required column, or the input is empty.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RowError {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string message;
};

struct IngestResult {
  /// Distinct (user, group) pairs in first-seen order.
  std::vector<MembershipRecord> records;
  std::vector<RowError> errors;
  std::size_t rows = 0;
  std::size_t duplicates = 0;

  [[nodiscard]] std::size_t skipped() const { return errors.size(); }
};

/// Delimiter is tab if the header line contains one, comma otherwise. Fields may be
/// double-quoted. Malformed rows are skipped and reported.
IngestResult parse_user_group(std::istream& in);

/// Counts distinct developers per group, then groups per developer count.
Histogram empirical_histogram(std::span<const MembershipRecord> records);

/// Writes records back out as a comma-separated user_id,group_id table.
void write_user_group(std::ostream& out, std::span<const MembershipRecord> records);

}  // namespace forgesim
