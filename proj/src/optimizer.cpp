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

#include "automix/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "automix/error.hpp"

namespace automix {
namespace {

// Uniform draw in [0, 1) that does not depend on the standard library's
// distribution implementation.
double unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t pick(Rng& rng, std::size_t n) {
  return std::min(static_cast<std::size_t>(unit(rng) * n), n - 1);
}

double uniform_in(Rng& rng, ParamRange r) { return r.min + unit(rng) * r.width(); }

}  // namespace

void HarmonyConfig::validate() const {
  if (memory_size < 2) {
    throw Error(ErrorKind::kInvalidArgument, "memory_size must be at least 2");
  }
  if (!(hmcr >= 0.0 && hmcr <= 1.0) || !(par >= 0.0 && par <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "hmcr and par must lie in [0, 1]");
  }
  if (!(bandwidth_fraction >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "bandwidth_fraction must be non-negative");
  }
  if (max_iterations < 1) {
    throw Error(ErrorKind::kInvalidArgument, "max_iterations must be at least 1");
  }
}

bool Box::contains(std::span<const double> v) const {
  if (v.size() != ranges.size()) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!ranges[i].contains(v[i])) return false;
  }
  return true;
}

void Box::clamp(std::span<double> v) const {
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = std::clamp(v[i], ranges[i].min, ranges[i].max);
  }
}

Box Box::for_tracks(std::size_t tracks) {
  Box box;
  const auto& r = EffectParams::ranges();
  for (std::size_t t = 0; t < tracks; ++t) {
    box.ranges.insert(box.ranges.end(), r.begin(), r.end());
  }
  return box;
}

void HarmonyMemory::add(std::vector<double> vector, double value) {
  rows_.push_back(std::move(vector));
  values_.push_back(value);
}

void HarmonyMemory::replace(std::size_t row, std::vector<double> vector,
                            double value) {
  rows_.at(row) = std::move(vector);
  values_[row] = value;
}

std::size_t HarmonyMemory::best_index() const {
  return static_cast<std::size_t>(
      std::min_element(values_.begin(), values_.end()) - values_.begin());
}

std::size_t HarmonyMemory::worst_index() const {
  std::size_t worst = 0;
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i] > values_[worst]) worst = i;
  }
  return worst;
}

std::vector<double> improvise(const HarmonyMemory& memory, const Box& box,
                              const HarmonyConfig& config, Rng& rng) {
  if (memory.size() == 0) {
    throw Error(ErrorKind::kInvalidArgument, "harmony memory is empty");
  }
  std::vector<double> candidate(box.dimension());
  for (std::size_t d = 0; d < box.dimension(); ++d) {
    const ParamRange range = box.ranges[d];
    if (unit(rng) < config.hmcr) {
      double v = memory.row(pick(rng, memory.size()))[d];
      if (unit(rng) < config.par) {
        const double bw = config.bandwidth_fraction * range.width();
        v += bw * (2.0 * unit(rng) - 1.0);
      }
      candidate[d] = v;
    } else {
      candidate[d] = uniform_in(rng, range);
    }
  }
  box.clamp(candidate);
  return candidate;
}

double sanitize_objective(double value) {
  return std::isfinite(value) ? value : std::numeric_limits<double>::infinity();
}

SearchResult search(const ObjectiveFn& objective, const Box& box,
                    const HarmonyConfig& config, const SearchObserver& observer) {
  config.validate();
  if (box.dimension() == 0) {
    throw Error(ErrorKind::kInvalidArgument, "search box has no dimensions");
  }
  Rng rng(config.rng_seed);
  SearchResult result;
  auto evaluate = [&](std::span<const double> v) {
    ++result.trace.evaluations;
    try {
      return sanitize_objective(objective(v));
    } catch (const Error&) {
      // A candidate the objective cannot score is rejected, not fatal.
      return std::numeric_limits<double>::infinity();
    }
  };

  for (std::size_t i = 0; i < config.memory_size; ++i) {
    std::vector<double> v(box.dimension());
    for (std::size_t d = 0; d < v.size(); ++d) v[d] = uniform_in(rng, box.ranges[d]);
    const double value = evaluate(v);
    result.memory.add(std::move(v), value);
  }
  std::size_t best = result.memory.best_index();
  result.best_vector = result.memory.row(best);
  result.best_objective = result.memory.value(best);

  while (result.iterations < config.max_iterations &&
         !(result.best_objective <= config.target_objective)) {
    std::vector<double> candidate = improvise(result.memory, box, config, rng);
    const double value = evaluate(candidate);
    const std::size_t worst = result.memory.worst_index();
    if (value < result.memory.value(worst)) {
      if (value < result.best_objective) {
        result.best_objective = value;
        result.best_vector = candidate;
      }
      result.memory.replace(worst, std::move(candidate), value);
    }
    ++result.iterations;
    result.trace.best_value.push_back(result.best_objective);
    if (observer) observer(result.iterations, result.memory);
  }
  return result;
}

}  // namespace automix
