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

// Run configuration files: one `key = value` per line, '#' starts a comment, unknown
// keys are errors, absent keys keep their defaults.
//
//   n_major n_minor n_steps seed p_cat p_new sub_threshold j_threshold l_threshold
//   t_limit decay_rate fitness_floor check_invariants

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "forgesim/engine.hpp"

namespace forgesim {

/// Applies `key = value` lines on top of `base`. Throws ConfigError naming the line.
SimConfig parse_config(std::istream& in, SimConfig base = {});

/// Sets one key; throws ConfigError for an unknown key or a bad value.
void set_config_value(SimConfig& config, std::string_view key, std::string_view value);

/// Every key with its value, in the canonical order above.
std::vector<std::pair<std::string, std::string>> config_entries(const SimConfig& config);

/// Canonical text form; parse_config(format_config(c)) reproduces c exactly.
std::string format_config(const SimConfig& config);

/// Reads a config file. A `.json` path is taken to be a run manifest and its
/// recorded config is used. Throws ConfigError naming the path when unreadable.
SimConfig load_config(const std::filesystem::path& path);

}  // namespace forgesim
