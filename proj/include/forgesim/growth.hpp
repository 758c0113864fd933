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

// Preferential attachment with time-decaying fitness. A project's weight is
// fitness(age) * member_count over the eligible projects (not completed, at least one
// member). No nodes are added by selection; it only picks among existing projects.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "forgesim/model.hpp"
#include "forgesim/rng.hpp"

namespace forgesim {

struct FitnessParams {
  double decay_rate = 0.005;
  double floor = 0.01;

  void validate() const;
};

/// Signals that no project can be selected.
class EmptyUniverse : public std::runtime_error {
 public:
  EmptyUniverse() : std::runtime_error("no eligible project to select") {}
};

/// max(floor, exp(-decay_rate * age)); throws DomainError when now < created_at.
double fitness(const ProjectState& project, std::int64_t now, const FitnessParams& params);

bool is_eligible(const ProjectState& project);

/// Normalized weights aligned with `projects`; ineligible entries get 0.
/// Throws EmptyUniverse when nothing is eligible.
std::vector<double> selection_weights(std::span<const ProjectState> projects, std::int64_t now,
                                      const FitnessParams& params);

/// Roulette wheel over unnormalized weights: returns the first index whose cumulative
/// sum exceeds u * total, so index i owns the half-open interval [lo_i, hi_i).
/// Zero-weight entries are never returned. Precondition: the weight total is positive.
std::size_t roulette_pick(std::span<const double> weights, double u);

/// Draws one variate and picks a project id; nullopt when nothing is eligible (no
/// variate is consumed in that case).
std::optional<ProjectId> select_project(std::span<const ProjectState> projects, Rng& rng, std::int64_t now,
                                        const FitnessParams& params);

/// Incrementally maintained selection weights over a growing project list, used by the
/// engine so each draw costs O(log n) instead of a scan. Picks agree with roulette_pick
/// over the same weights.
class SelectionIndex {
 public:
  /// Recomputes every weight at time `now`.
  void rebuild(std::span<const ProjectState> projects, std::int64_t now, const FitnessParams& params);

  /// Refreshes one project's weight after its roster or completion changed.
  void update(const ProjectState& project);

  [[nodiscard]] double total() const;
  [[nodiscard]] double weight(ProjectId id) const { return weights_.at(to_index(id)); }
  [[nodiscard]] std::size_t size() const { return weights_.size(); }

  /// nullopt iff the total weight is zero.
  [[nodiscard]] std::optional<ProjectId> pick(double u) const;

 private:
  void add(std::size_t index, double delta);

  std::int64_t now_ = 0;
  FitnessParams params_;
  std::vector<double> weights_;
  std::vector<double> fitness_;
  std::vector<double> tree_;  // segment tree, root at 1
};

}  // namespace forgesim
