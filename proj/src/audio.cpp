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

#include "automix/audio.hpp"

#include <algorithm>
#include <cmath>

#include "automix/error.hpp"

namespace automix {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kFileNotFound: return "file not found";
    case ErrorKind::kIo: return "i/o error";
    case ErrorKind::kMalformedFile: return "malformed file";
    case ErrorKind::kNotMono: return "not mono";
    case ErrorKind::kSampleRate: return "unsupported sample rate";
    case ErrorKind::kUnsupportedEncoding: return "unsupported encoding";
    case ErrorKind::kInvalidManifest: return "invalid manifest";
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kTooShort: return "input too short";
    case ErrorKind::kSilence: return "silence";
    case ErrorKind::kInvariant: return "invariant violation";
  }
  return "unknown";
}

namespace {

bool all_finite(std::span<const double> samples) {
  return std::all_of(samples.begin(), samples.end(),
                     [](double s) { return std::isfinite(s); });
}

}  // namespace

void TrackBuffer::validate() const {
  if (sample_rate_hz != kSampleRateHz) {
    throw Error(ErrorKind::kSampleRate,
                "track '" + track_id + "': sample rate must be 48000");
  }
  if (samples.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "track '" + track_id + "' is empty");
  }
  if (!all_finite(samples)) {
    throw Error(ErrorKind::kInvariant,
                "track '" + track_id + "' contains non-finite samples");
  }
}

void StereoBuffer::validate() const {
  if (left.size() != right.size()) {
    throw Error(ErrorKind::kInvariant,
                "stereo buffer channels have unequal length");
  }
  if (!all_finite(left) || !all_finite(right)) {
    throw Error(ErrorKind::kInvariant,
                "stereo buffer contains non-finite samples");
  }
}

double peak_abs(std::span<const double> samples) {
  double peak = 0.0;
  for (double s : samples) peak = std::max(peak, std::abs(s));
  return peak;
}

double StereoBuffer::peak() const {
  return std::max(peak_abs(left), peak_abs(right));
}

void StereoBuffer::scale(double gain) {
  for (double& s : left) s *= gain;
  for (double& s : right) s *= gain;
}

void StereoBuffer::accumulate(const StereoBuffer& other) {
  if (other.size() != size()) {
    throw Error(ErrorKind::kInvariant, "cannot sum buffers of unequal length");
  }
  for (std::size_t i = 0; i < left.size(); ++i) {
    left[i] += other.left[i];
    right[i] += other.right[i];
  }
}

}  // namespace automix
