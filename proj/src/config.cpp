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

#include "forgesim/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "forgesim/io.hpp"

namespace forgesim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_value(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("bad value for '" + std::string(key) + "': '" + std::string(value) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("bad value for '" + std::string(key) + "': '" + std::string(value) + "' (expected true/false)");
}

}  // namespace

void set_config_value(SimConfig& c, std::string_view key, std::string_view value) {
  if (key == "n_major") c.n_major = parse_value<std::uint32_t>(key, value);
  else if (key == "n_minor") c.n_minor = parse_value<std::uint32_t>(key, value);
  else if (key == "n_steps") c.n_steps = parse_value<std::uint32_t>(key, value);
  else if (key == "seed") c.seed = parse_value<std::uint64_t>(key, value);
  else if (key == "p_cat") c.p_cat = parse_value<double>(key, value);
  else if (key == "p_new") c.behavior.p_new = parse_value<double>(key, value);
  else if (key == "sub_threshold") c.behavior.sub_threshold = parse_value<double>(key, value);
  else if (key == "j_threshold") c.behavior.j_threshold = parse_value<double>(key, value);
  else if (key == "l_threshold") c.behavior.l_threshold = parse_value<double>(key, value);
  else if (key == "t_limit") c.behavior.t_limit = parse_value<double>(key, value);
  else if (key == "decay_rate") c.fitness.decay_rate = parse_value<double>(key, value);
  else if (key == "fitness_floor") c.fitness.floor = parse_value<double>(key, value);
  else if (key == "check_invariants") c.check_invariants = parse_bool(key, value);
  else throw ConfigError("unknown key '" + std::string(key) + "'");
}

SimConfig parse_config(std::istream& in, SimConfig base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      set_config_value(base, trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  base.validate();
  return base;
}

std::vector<std::pair<std::string, std::string>> config_entries(const SimConfig& c) {
  return {
      {"n_major", std::to_string(c.n_major)},
      {"n_minor", std::to_string(c.n_minor)},
      {"n_steps", std::to_string(c.n_steps)},
      {"seed", std::to_string(c.seed)},
      {"p_cat", format_number(c.p_cat)},
      {"p_new", format_number(c.behavior.p_new)},
      {"sub_threshold", format_number(c.behavior.sub_threshold)},
      {"j_threshold", format_number(c.behavior.j_threshold)},
      {"l_threshold", format_number(c.behavior.l_threshold)},
      {"t_limit", format_number(c.behavior.t_limit)},
      {"decay_rate", format_number(c.fitness.decay_rate)},
      {"fitness_floor", format_number(c.fitness.floor)},
      {"check_invariants", c.check_invariants ? "true" : "false"},
  };
}

std::string format_config(const SimConfig& c) {
  std::ostringstream out;
  for (const auto& [k, v] : config_entries(c)) out << k << " = " << v << '\n';
  return out.str();
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  try {
    if (path.extension() != ".json") return parse_config(in);
    const auto manifest = nlohmann::json::parse(in);
    SimConfig c;
    for (const auto& [key, value] : manifest.at("config").items()) {
      set_config_value(c, key, value.get<std::string>());
    }
    c.validate();
    return c;
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": not a run manifest: " + e.what());
  }
}

}  // namespace forgesim
