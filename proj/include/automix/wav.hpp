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

#ifndef AUTOMIX_WAV_HPP_
#define AUTOMIX_WAV_HPP_

#include <filesystem>
#include <vector>

#include "automix/audio.hpp"

namespace automix {

enum class SampleFormat {
  kPcm16,
  kFloat32,
};

// Raw decoded RIFF/WAVE contents, any channel count and rate.
struct WavData {
  int sample_rate_hz = 0;
  SampleFormat format = SampleFormat::kPcm16;
  int bits_per_sample = 0;
  std::vector<std::vector<double>> channels;
};

// Decodes PCM (16/24/32-bit) and IEEE float (32/64-bit) WAV files. Integer
// sample s of bit depth b maps to s / 2^(b-1).
WavData read_wav_file(const std::filesystem::path& path);

// Reads one mono 48 kHz stem. The track id is the file stem.
TrackBuffer read_wav(const std::filesystem::path& path);

// Writes interleaved stereo. Every sample must lie in [-1, 1].
void write_wav(const StereoBuffer& buffer, const std::filesystem::path& path,
               SampleFormat format = SampleFormat::kFloat32);

// Mono writer, used for fixtures and tooling.
void write_wav(const TrackBuffer& buffer, const std::filesystem::path& path,
               SampleFormat format = SampleFormat::kPcm16);

}  // namespace automix

#endif  // AUTOMIX_WAV_HPP_
