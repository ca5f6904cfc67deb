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

#ifndef AUTOMIX_LOUDNESS_HPP_
#define AUTOMIX_LOUDNESS_HPP_

#include <optional>
#include <span>
#include <vector>

#include "automix/audio.hpp"

namespace automix {

inline constexpr double kDefaultTargetLufs = -23.0;

// Gated integrated loudness (ITU-R BS.1770 / EBU R 128) at 48 kHz: K-weighting,
// 400 ms blocks with 75 % overlap, -70 LUFS absolute gate and -10 LU relative
// gate. Channel weights are 1.0 for mono, left and right.
struct LoudnessMeasurement {
  // Empty when every block falls below the absolute gate.
  std::optional<double> integrated_lufs;
  double applied_gain_db = 0.0;

  bool is_silence() const { return !integrated_lufs.has_value(); }
};

// Throws Error(kTooShort) for inputs shorter than one 400 ms block.
LoudnessMeasurement measure_lufs(std::span<const double> mono);
LoudnessMeasurement measure_lufs(const TrackBuffer& track);
LoudnessMeasurement measure_lufs(const StereoBuffer& stereo);

struct NormalizedTrack {
  TrackBuffer track;
  // Loudness of the input plus the gain that was applied to reach the target.
  LoudnessMeasurement measurement;
};

// Pure gain change that brings the track to `target_lufs`. Throws
// Error(kSilence) when the input is gated out entirely.
NormalizedTrack normalize_to_target(const TrackBuffer& track,
                                    double target_lufs = kDefaultTargetLufs);

// K-weighting (pre-filter shelf followed by RLB high-pass), zero initial state.
std::vector<double> k_weight(std::span<const double> samples);

}  // namespace automix

#endif  // AUTOMIX_LOUDNESS_HPP_
