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

#ifndef AUTOMIX_PIPELINE_HPP_
#define AUTOMIX_PIPELINE_HPP_

#include <optional>
#include <span>
#include <vector>

#include "automix/audio.hpp"
#include "automix/report.hpp"
#include "automix/session.hpp"

namespace automix {

struct PreparedTracks {
  std::vector<TrackBuffer> normalized;
  // Per-track loudness before normalisation and the gain applied. Silent
  // tracks pass through unchanged with an empty lufs_before.
  std::vector<LoudnessRow> rows;
  // Loudness of the plain sum of the input tracks.
  std::optional<double> total_before;
};

PreparedTracks prepare_tracks(std::span<const TrackBuffer> tracks,
                              double target_lufs);

// Normalise, search, render. Returns the complete result ready for
// emit_report.
MixResult run_session(const Session& session);

}  // namespace automix

#endif  // AUTOMIX_PIPELINE_HPP_
