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

#include "automix/loudness.hpp"

#include <cmath>
#include <string>

#include "automix/error.hpp"

namespace automix {
namespace {

constexpr std::size_t kBlockSamples = kSampleRateHz * 400 / 1000;
constexpr std::size_t kStepSamples = kBlockSamples / 4;
constexpr double kAbsoluteGateLufs = -70.0;
constexpr double kRelativeGateLu = -10.0;
constexpr double kLoudnessOffset = -0.691;

struct Sos {
  double b0, b1, b2, a1, a2;
};

// Published 48 kHz coefficients.
constexpr Sos kShelf{1.53512485958697, -2.69169618940638, 1.19839281085285,
                     -1.69065929318241, 0.73248077421585};
constexpr Sos kHighPass{1.0, -2.0, 1.0, -1.99004745483398, 0.99007225036621};

void filter_in_place(std::vector<double>& x, const Sos& s) {
  double z1 = 0.0, z2 = 0.0;
  for (double& v : x) {
    double y = s.b0 * v + z1;
    z1 = s.b1 * v - s.a1 * y + z2;
    z2 = s.b2 * v - s.a2 * y;
    v = y;
  }
}

// Mean square of each gating block, summed over channels.
std::vector<double> block_powers(
    const std::vector<std::span<const double>>& channels) {
  const std::size_t n = channels.front().size();
  if (n < kBlockSamples) {
    throw Error(ErrorKind::kTooShort,
                "loudness measurement needs at least 400 ms of audio (got " +
                    std::to_string(n) + " samples)");
  }
  const std::size_t blocks = 1 + (n - kBlockSamples) / kStepSamples;
  std::vector<double> power(blocks, 0.0);
  for (auto channel : channels) {
    std::vector<double> weighted = k_weight(channel);
    // Prefix sums of squares keep this linear in the signal length.
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      prefix[i + 1] = prefix[i] + weighted[i] * weighted[i];
    }
    for (std::size_t b = 0; b < blocks; ++b) {
      std::size_t start = b * kStepSamples;
      power[b] += (prefix[start + kBlockSamples] - prefix[start]) /
                  static_cast<double>(kBlockSamples);
    }
  }
  return power;
}

double to_lufs(double power) { return kLoudnessOffset + 10.0 * std::log10(power); }

LoudnessMeasurement integrate(const std::vector<double>& power) {
  double sum = 0.0;
  std::size_t count = 0;
  for (double p : power) {
    if (p > 0.0 && to_lufs(p) > kAbsoluteGateLufs) {
      sum += p;
      ++count;
    }
  }
  LoudnessMeasurement m;
  if (count == 0) return m;
  const double relative_gate = to_lufs(sum / count) + kRelativeGateLu;
  double gated_sum = 0.0;
  std::size_t gated_count = 0;
  for (double p : power) {
    if (p > 0.0 && to_lufs(p) > kAbsoluteGateLufs && to_lufs(p) > relative_gate) {
      gated_sum += p;
      ++gated_count;
    }
  }
  if (gated_count == 0) return m;
  m.integrated_lufs = to_lufs(gated_sum / gated_count);
  return m;
}

}  // namespace

std::vector<double> k_weight(std::span<const double> samples) {
  std::vector<double> out(samples.begin(), samples.end());
  filter_in_place(out, kShelf);
  filter_in_place(out, kHighPass);
  return out;
}

LoudnessMeasurement measure_lufs(std::span<const double> mono) {
  return integrate(block_powers({mono}));
}

LoudnessMeasurement measure_lufs(const TrackBuffer& track) {
  return measure_lufs(track.view());
}

LoudnessMeasurement measure_lufs(const StereoBuffer& stereo) {
  stereo.validate();
  return integrate(block_powers({stereo.channel(0), stereo.channel(1)}));
}

NormalizedTrack normalize_to_target(const TrackBuffer& track,
                                    double target_lufs) {
  LoudnessMeasurement m = measure_lufs(track);
  if (m.is_silence()) {
    throw Error(ErrorKind::kSilence, "track '" + track.track_id +
                                         "' is below the loudness gate and "
                                         "cannot be normalized");
  }
  m.applied_gain_db = target_lufs - *m.integrated_lufs;
  NormalizedTrack out{track, m};
  if (m.applied_gain_db != 0.0) {
    const double gain = std::pow(10.0, m.applied_gain_db / 20.0);
    for (double& s : out.track.samples) s *= gain;
  }
  return out;
}

}  // namespace automix
