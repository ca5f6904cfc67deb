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

#include "automix/objective.hpp"

#include <cmath>
#include <limits>

#include "automix/error.hpp"

namespace automix {

MixObjective::MixObjective(std::vector<TrackBuffer> tracks,
                           ObjectiveWeights weights, ChannelCombine combine,
                           AnalysisConfig analysis)
    : tracks_(std::move(tracks)),
      weights_(weights),
      combine_(combine),
      model_(analysis) {
  if (tracks_.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "at least 2 tracks required");
  }
  for (const auto& t : tracks_) {
    t.validate();
    if (t.size() != tracks_.front().size()) {
      throw Error(ErrorKind::kInvalidArgument, "tracks must have equal length");
    }
    ids_.push_back(t.track_id);
  }
  if (tracks_.front().size() < model_.config().fft_size) {
    throw Error(ErrorKind::kTooShort, "tracks shorter than one analysis frame");
  }
}

std::vector<EffectParams> MixObjective::split(std::span<const double> decision) const {
  if (decision.size() != tracks_.size() * EffectParams::kDimension) {
    throw Error(ErrorKind::kInvalidArgument, "decision vector has wrong size");
  }
  std::vector<EffectParams> out;
  for (std::size_t t = 0; t < tracks_.size(); ++t) {
    out.push_back(EffectParams::from_vector(
        decision.subspan(t * EffectParams::kDimension, EffectParams::kDimension)));
  }
  return out;
}

std::vector<double> MixObjective::join(std::span<const EffectParams> params) {
  std::vector<double> out;
  for (const auto& p : params) {
    const auto v = p.to_vector();
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

std::vector<StereoBuffer> MixObjective::render(
    std::span<const EffectParams> params) const {
  if (params.size() != tracks_.size()) {
    throw Error(ErrorKind::kInvalidArgument, "one parameter set per track required");
  }
  std::vector<StereoBuffer> out;
  out.reserve(tracks_.size());
  for (std::size_t t = 0; t < tracks_.size(); ++t) {
    out.push_back(render_track(tracks_[t], params[t]));
  }
  return out;
}

MaskingReport MixObjective::report(std::span<const EffectParams> params) const {
  return mix_masking_report(model_, ids_, render(params), combine_);
}

double MixObjective::combined(const MaskingReport& report) const {
  return weights_.total * report.m_total + weights_.diff * report.m_diff;
}

double MixObjective::operator()(std::span<const double> decision) const {
  const double value = combined(report(split(decision)));
  return std::isfinite(value) ? value : std::numeric_limits<double>::infinity();
}

}  // namespace automix
