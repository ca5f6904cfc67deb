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

#include "automix/masking.hpp"

#include <algorithm>
#include <cmath>

#include "automix/error.hpp"

namespace automix {
namespace {

void check_signals(std::span<const std::span<const double>> signals) {
  if (signals.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument,
                "masking needs at least two tracks");
  }
  for (auto s : signals) {
    if (s.size() != signals.front().size()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "masking needs equal-length tracks");
    }
  }
}

std::vector<double> sum_except(std::span<const std::span<const double>> signals,
                               std::size_t target) {
  std::vector<double> sum(signals.front().size(), 0.0);
  for (std::size_t t = 0; t < signals.size(); ++t) {
    if (t == target) continue;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += signals[t][i];
  }
  return sum;
}

std::vector<MaskingThresholdFrame> thresholds_of(const SignalAnalysis& masker) {
  std::vector<MaskingThresholdFrame> out;
  out.reserve(masker.excitation.size());
  for (const auto& frame : masker.excitation) out.push_back(masking_threshold(frame));
  return out;
}

}  // namespace

std::vector<double> MaskingReport::scores() const {
  std::vector<double> out;
  out.reserve(per_track.size());
  for (const auto& t : per_track) out.push_back(t.m_n);
  return out;
}

BandVector msr_per_band(const BandVector& threshold, const BandVector& signal) {
  BandVector out;
  for (std::size_t i = 0; i < kBandCount; ++i) {
    out[i] = 10.0 * std::log10(std::max(threshold[i], kEnergyFloor) /
                               std::max(signal[i], kEnergyFloor));
  }
  return out;
}

std::vector<MaskingThresholdFrame> accompaniment_threshold(
    const PsychoacousticModel& model, std::size_t target,
    std::span<const std::span<const double>> signals) {
  check_signals(signals);
  if (target >= signals.size()) {
    throw Error(ErrorKind::kInvalidArgument, "target track index out of range");
  }
  return thresholds_of(model.analyze(sum_except(signals, target)));
}

TrackMaskingMetric track_masking_metric(
    std::span<const CriticalBandFrame> signal,
    std::span<const MaskingThresholdFrame> threshold,
    const std::vector<bool>& active) {
  if (signal.size() != threshold.size() || signal.size() != active.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "signal, threshold and activity frame counts differ");
  }
  TrackMaskingMetric metric;
  metric.per_frame.assign(signal.size(), 0.0);
  double total = 0.0;
  for (std::size_t f = 0; f < signal.size(); ++f) {
    if (!active[f]) continue;
    const BandVector msr = msr_per_band(threshold[f].threshold_energy, signal[f].energies);
    double frame_sum = 0.0;
    for (std::size_t i = 0; i < kBandCount; ++i) {
      metric.per_band_msr[i] += msr[i];
      if (signal[f].energies[i] < threshold[f].threshold_energy[i]) {
        frame_sum += std::min(msr[i], kMaxMaskingDb) / kMaxMaskingDb;
      }
    }
    metric.per_frame[f] = frame_sum;
    total += frame_sum;
    ++metric.active_frames;
  }
  if (metric.active_frames > 0) {
    const double count = static_cast<double>(metric.active_frames);
    metric.m_n = total / count;
    for (double& v : metric.per_band_msr) v /= count;
  }
  return metric;
}

std::vector<TrackMaskingMetric> channel_masking(
    const PsychoacousticModel& model,
    std::span<const std::span<const double>> signals) {
  check_signals(signals);
  std::vector<SignalAnalysis> own;
  own.reserve(signals.size());
  for (auto s : signals) own.push_back(model.analyze(s));

  std::vector<TrackMaskingMetric> out;
  out.reserve(signals.size());
  for (std::size_t t = 0; t < signals.size(); ++t) {
    // With two tracks the accompaniment is exactly the other track.
    std::vector<MaskingThresholdFrame> threshold =
        signals.size() == 2 ? thresholds_of(own[1 - t])
                            : accompaniment_threshold(model, t, signals);
    out.push_back(track_masking_metric(own[t].excitation, threshold, own[t].active));
  }
  return out;
}

double total_masking(std::span<const double> scores) {
  double sum = 0.0;
  for (double m : scores) sum += m * m;
  return sum;
}

double masking_spread(std::span<const double> scores) {
  if (scores.empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  return *hi - *lo;
}

MaskingReport mix_masking_report(const PsychoacousticModel& model,
                                 std::span<const std::string> track_ids,
                                 std::span<const StereoBuffer> rendered,
                                 ChannelCombine combine) {
  if (track_ids.size() != rendered.size()) {
    throw Error(ErrorKind::kInvalidArgument, "track id count mismatch");
  }
  std::vector<std::vector<TrackMaskingMetric>> channels;
  for (int c = 0; c < 2; ++c) {
    std::vector<std::span<const double>> signals;
    signals.reserve(rendered.size());
    for (const auto& r : rendered) signals.push_back(r.channel(c));
    channels.push_back(channel_masking(model, signals));
  }

  MaskingReport report;
  for (std::size_t t = 0; t < rendered.size(); ++t) {
    TrackMasking entry;
    entry.track_id = track_ids[t];
    entry.left = std::move(channels[0][t]);
    entry.right = std::move(channels[1][t]);
    entry.left.track_id = entry.right.track_id = entry.track_id;
    if (combine == ChannelCombine::kMean) {
      entry.m_n = 0.5 * (entry.left.m_n + entry.right.m_n);
    } else if (entry.left.inactive() != entry.right.inactive()) {
      // A channel where the track is silent cannot be listened to.
      entry.m_n = entry.left.inactive() ? entry.right.m_n : entry.left.m_n;
    } else {
      entry.m_n = std::min(entry.left.m_n, entry.right.m_n);
    }
    report.per_track.push_back(std::move(entry));
  }
  const std::vector<double> m = report.scores();
  report.m_total = total_masking(m);
  report.m_diff = masking_spread(m);
  return report;
}

}  // namespace automix
