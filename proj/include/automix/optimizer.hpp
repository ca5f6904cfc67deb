// Copyright 2026 The Automix Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Harmony Search over a box-constrained real vector.

#ifndef AUTOMIX_OPTIMIZER_HPP_
#define AUTOMIX_OPTIMIZER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "automix/effects.hpp"

namespace automix {

struct HarmonyConfig {
  std::size_t memory_size = 10;
  // Probability of drawing a dimension from memory.
  double hmcr = 0.9;
  // Probability of pitch-adjusting a remembered dimension.
  double par = 0.3;
  // Pitch-adjust half-width as a fraction of each dimension's range.
  double bandwidth_fraction = 0.05;
  std::size_t max_iterations = 500;
  // Search stops as soon as the best objective is at or below this.
  double target_objective = 0.0;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct Box {
  std::vector<ParamRange> ranges;

  std::size_t dimension() const { return ranges.size(); }
  bool contains(std::span<const double> v) const;
  void clamp(std::span<double> v) const;

  // `tracks` copies of the per-track effect parameter ranges.
  static Box for_tracks(std::size_t tracks);
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

class HarmonyMemory {
 public:
  HarmonyMemory() = default;

  void add(std::vector<double> vector, double value);
  void replace(std::size_t row, std::vector<double> vector, double value);

  std::size_t size() const { return rows_.size(); }
  const std::vector<double>& row(std::size_t i) const { return rows_[i]; }
  double value(std::size_t i) const { return values_[i]; }

  // Ties resolve to the lowest index.
  std::size_t best_index() const;
  std::size_t worst_index() const;

 private:
  std::vector<std::vector<double>> rows_;
  std::vector<double> values_;
};

struct ObjectiveTrace {
  // Best-ever objective after each iteration.
  std::vector<double> best_value;
  std::size_t evaluations = 0;
};

struct SearchResult {
  std::vector<double> best_vector;
  double best_objective = 0.0;
  ObjectiveTrace trace;
  HarmonyMemory memory;
  std::size_t iterations = 0;
};

using Rng = std::mt19937_64;

// One candidate: per dimension, with probability hmcr copy from a random
// memory row (then pitch-adjust with probability par), otherwise draw
// uniformly from the range. The result is clamped to the box.
std::vector<double> improvise(const HarmonyMemory& memory, const Box& box,
                              const HarmonyConfig& config, Rng& rng);

// Non-finite objective values count as +inf.
double sanitize_objective(double value);

// Called after every iteration with the iteration count and the memory.
using SearchObserver = std::function<void(std::size_t, const HarmonyMemory&)>;

// Seeds memory with uniform in-box vectors, then improvises one candidate per
// iteration and replaces the worst row when the candidate is better. Stops at
// max_iterations or once the best value reaches target_objective. An
// objective that throws automix::Error rejects that candidate.
SearchResult search(const ObjectiveFn& objective, const Box& box,
                    const HarmonyConfig& config, const SearchObserver& observer = {});

}  // namespace automix

#endif  // AUTOMIX_OPTIMIZER_HPP_
