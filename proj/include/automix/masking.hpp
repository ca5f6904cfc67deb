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

// Cross-track masking metrics. For a target track, the masker is the sum of
// every other track (summed in the time domain), and a band counts as masked
// when the target's excitation lies below the masker's threshold.

#ifndef AUTOMIX_MASKING_HPP_
#define AUTOMIX_MASKING_HPP_

#include <span>
#include <string>
#include <vector>

#include "automix/audio.hpp"
#include "automix/psychoacoustics.hpp"

namespace automix {

// Masker-to-signal ratio that saturates a band's contribution at 1.
inline constexpr double kMaxMaskingDb = 20.0;

// How the left and right channel scores of a track become one score.
enum class ChannelCombine {
  // The channel where the track is least masked.
  kBetterEar,
  kMean,
};

struct TrackMaskingMetric {
  std::string track_id;
  // Mean over active frames of the per-frame masked-band score.
  double m_n = 0.0;
  // Mean MSR in dB per band over active frames (unclamped).
  BandVector per_band_msr{};
  // Per-frame score; zero for inactive frames.
  std::vector<double> per_frame;
  std::size_t active_frames = 0;

  bool inactive() const { return active_frames == 0; }
};

struct TrackMasking {
  std::string track_id;
  double m_n = 0.0;
  TrackMaskingMetric left;
  TrackMaskingMetric right;
};

struct MaskingReport {
  std::vector<TrackMasking> per_track;
  double m_total = 0.0;
  double m_diff = 0.0;

  std::vector<double> scores() const;
};

// 10 log10(threshold / signal) per band, both floored at kEnergyFloor.
BandVector msr_per_band(const BandVector& threshold, const BandVector& signal);

// Threshold frames induced on `target` by the sum of every other signal.
// Throws Error(kInvalidArgument) for fewer than two signals or unequal lengths.
std::vector<MaskingThresholdFrame> accompaniment_threshold(
    const PsychoacousticModel& model, std::size_t target,
    std::span<const std::span<const double>> signals);

// Per frame: sum of min(MSR, T_max) / T_max over bands where
// signal < threshold; then the mean over active frames.
TrackMaskingMetric track_masking_metric(
    std::span<const CriticalBandFrame> signal,
    std::span<const MaskingThresholdFrame> threshold,
    const std::vector<bool>& active);

// Masking of every track against the others within one channel.
std::vector<TrackMaskingMetric> channel_masking(
    const PsychoacousticModel& model,
    std::span<const std::span<const double>> signals);

double total_masking(std::span<const double> scores);
double masking_spread(std::span<const double> scores);

// Per-channel metrics for each rendered stem, combined per track, plus the
// sum of squares and maximum pairwise difference.
MaskingReport mix_masking_report(const PsychoacousticModel& model,
                                 std::span<const std::string> track_ids,
                                 std::span<const StereoBuffer> rendered,
                                 ChannelCombine combine = ChannelCombine::kBetterEar);

}  // namespace automix

#endif  // AUTOMIX_MASKING_HPP_
