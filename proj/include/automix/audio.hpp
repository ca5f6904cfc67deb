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

#ifndef AUTOMIX_AUDIO_HPP_
#define AUTOMIX_AUDIO_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace automix {

// The only rate the engine accepts; band tables and filters are designed for it.
inline constexpr int kSampleRateHz = 48000;

// One mono stem.
struct TrackBuffer {
  std::string track_id;
  std::vector<double> samples;
  int sample_rate_hz = kSampleRateHz;

  std::size_t size() const { return samples.size(); }
  std::span<const double> view() const { return samples; }

  // Throws Error if the rate is not 48 kHz, the buffer is empty, or any
  // sample is non-finite.
  void validate() const;
};

struct StereoBuffer {
  std::vector<double> left;
  std::vector<double> right;
  int sample_rate_hz = kSampleRateHz;

  StereoBuffer() = default;
  explicit StereoBuffer(std::size_t frames, int rate = kSampleRateHz)
      : left(frames, 0.0), right(frames, 0.0), sample_rate_hz(rate) {}

  std::size_t size() const { return left.size(); }
  std::span<const double> channel(int index) const {
    return index == 0 ? std::span<const double>(left)
                      : std::span<const double>(right);
  }

  // Throws Error(kInvariant) on unequal channel lengths or non-finite samples.
  void validate() const;

  double peak() const;
  void scale(double gain);
  void accumulate(const StereoBuffer& other);
};

double peak_abs(std::span<const double> samples);

}  // namespace automix

#endif  // AUTOMIX_AUDIO_HPP_
