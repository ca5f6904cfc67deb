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

#ifndef AUTOMIX_OBJECTIVE_HPP_
#define AUTOMIX_OBJECTIVE_HPP_

#include <span>
#include <string>
#include <vector>

#include "automix/audio.hpp"
#include "automix/effects.hpp"
#include "automix/masking.hpp"
#include "automix/optimizer.hpp"
#include "automix/psychoacoustics.hpp"

namespace automix {

struct ObjectiveWeights {
  double total = 1.0;
  double diff = 1.0;
};

// Scores a full-session decision vector (15 values per track, track-major):
// render each track, measure cross-track masking, and return
// weights.total * M_T + weights.diff * M_d.
class MixObjective {
 public:
  // Tracks must be loudness-normalised, equal length, and at least one
  // analysis frame long.
  MixObjective(std::vector<TrackBuffer> tracks, ObjectiveWeights weights = {},
               ChannelCombine combine = ChannelCombine::kBetterEar,
               AnalysisConfig analysis = {});

  std::size_t track_count() const { return tracks_.size(); }
  const std::vector<TrackBuffer>& tracks() const { return tracks_; }
  const std::vector<std::string>& track_ids() const { return ids_; }
  const PsychoacousticModel& model() const { return model_; }
  ChannelCombine channel_combine() const { return combine_; }
  Box box() const { return Box::for_tracks(tracks_.size()); }

  std::vector<EffectParams> split(std::span<const double> decision) const;
  static std::vector<double> join(std::span<const EffectParams> params);

  std::vector<StereoBuffer> render(std::span<const EffectParams> params) const;
  MaskingReport report(std::span<const EffectParams> params) const;
  double combined(const MaskingReport& report) const;

  // Non-finite results are returned as +inf.
  double operator()(std::span<const double> decision) const;

 private:
  std::vector<TrackBuffer> tracks_;
  std::vector<std::string> ids_;
  ObjectiveWeights weights_;
  ChannelCombine combine_;
  PsychoacousticModel model_;
};

}  // namespace automix

#endif  // AUTOMIX_OBJECTIVE_HPP_
