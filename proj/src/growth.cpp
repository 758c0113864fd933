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

#include "forgesim/growth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace forgesim {

void FitnessParams::validate() const {
  if (!(decay_rate >= 0.0) || !std::isfinite(decay_rate)) {
    throw std::invalid_argument("decay_rate must be finite and >= 0");
  }
  if (!(floor > 0.0 && floor <= 1.0)) throw std::invalid_argument("fitness floor must lie in (0, 1]");
}

double fitness(const ProjectState& project, std::int64_t now, const FitnessParams& params) {
  if (now < project.created_at) {
    throw DomainError("fitness: step " + std::to_string(now) + " precedes creation of project " +
                      std::to_string(to_index(project.id)) + " at step " +
                      std::to_string(project.created_at));
  }
  const auto age = static_cast<double>(now - project.created_at);
  return std::max(params.floor, std::exp(-params.decay_rate * age));
}

bool is_eligible(const ProjectState& project) { return !project.completed && !project.members.empty(); }

namespace {

double raw_weight(const ProjectState& p, std::int64_t now, const FitnessParams& params) {
  if (!is_eligible(p)) return 0.0;
  return fitness(p, now, params) * static_cast<double>(p.members.size());
}

}  // namespace

std::vector<double> selection_weights(std::span<const ProjectState> projects, std::int64_t now,
                                      const FitnessParams& params) {
  std::vector<double> w(projects.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < projects.size(); ++i) {
    w[i] = raw_weight(projects[i], now, params);
    total += w[i];
  }
  if (!(total > 0.0)) throw EmptyUniverse();
  for (double& x : w) x /= total;
  return w;
}

std::size_t roulette_pick(std::span<const double> weights, double u) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw EmptyUniverse();
  const double target = u * total;
  double cum = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    cum += weights[i];
    last_positive = i;
    if (target < cum) return i;
  }
  // u * total rounded up to the total
  return last_positive;
}

std::optional<ProjectId> select_project(std::span<const ProjectState> projects, Rng& rng, std::int64_t now,
                                        const FitnessParams& params) {
  std::vector<double> w(projects.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < projects.size(); ++i) {
    w[i] = raw_weight(projects[i], now, params);
    total += w[i];
  }
  if (!(total > 0.0)) return std::nullopt;
  return projects[roulette_pick(w, rng.uniform01())].id;
}

// SelectionIndex is a sum segment tree over a power-of-two leaf layer. Interior nodes
// are always recomputed as left + right, so sums never drift under repeated updates.

void SelectionIndex::rebuild(std::span<const ProjectState> projects, std::int64_t now,
                             const FitnessParams& params) {
  now_ = now;
  params_ = params;
  weights_.resize(projects.size());
  fitness_.resize(projects.size());
  for (std::size_t i = 0; i < projects.size(); ++i) {
    const ProjectState& p = projects[i];
    fitness_[i] = p.members.empty() ? 0.0 : fitness(p, now, params);
    weights_[i] = is_eligible(p) ? fitness_[i] * static_cast<double>(p.members.size()) : 0.0;
  }
  const std::size_t leaves = std::bit_ceil(std::max<std::size_t>(projects.size(), 1));
  tree_.assign(2 * leaves, 0.0);
  std::copy(weights_.begin(), weights_.end(), tree_.begin() + static_cast<std::ptrdiff_t>(leaves));
  for (std::size_t node = leaves - 1; node >= 1; --node) tree_[node] = tree_[2 * node] + tree_[2 * node + 1];
}

void SelectionIndex::update(const ProjectState& project) {
  const std::size_t i = to_index(project.id);
  if (i >= weights_.size()) throw std::out_of_range("SelectionIndex::update: unknown project");
  if (fitness_[i] == 0.0 && !project.members.empty()) fitness_[i] = fitness(project, now_, params_);
  const double w = is_eligible(project) ? fitness_[i] * static_cast<double>(project.members.size()) : 0.0;
  weights_[i] = w;
  std::size_t node = tree_.size() / 2 + i;
  tree_[node] = w;
  for (node /= 2; node >= 1; node /= 2) tree_[node] = tree_[2 * node] + tree_[2 * node + 1];
}

double SelectionIndex::total() const { return tree_.size() > 1 ? tree_[1] : 0.0; }

std::optional<ProjectId> SelectionIndex::pick(double u) const {
  const double total_weight = total();
  if (!(total_weight > 0.0)) return std::nullopt;
  double target = u * total_weight;
  const std::size_t leaves = tree_.size() / 2;
  std::size_t node = 1;
  while (node < leaves) {
    const double left = tree_[2 * node];
    if (target < left) {
      node = 2 * node;
    } else {
      target -= left;
      node = 2 * node + 1;
    }
  }
  std::size_t index = node - leaves;
  if (index >= weights_.size() || weights_[index] <= 0.0) {
    // Rounding carried the target past the last positive leaf.
    index = weights_.size();
    while (index > 0 && weights_[index - 1] <= 0.0) --index;
    --index;
  }
  return ProjectId{static_cast<std::uint32_t>(index)};
}

}  // namespace forgesim
