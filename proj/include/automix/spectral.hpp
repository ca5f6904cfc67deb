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

#ifndef AUTOMIX_SPECTRAL_HPP_
#define AUTOMIX_SPECTRAL_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace automix {

// Forward real FFT of `input` (power-of-two length n) into n/2 + 1 bins.
// Plans are cached per thread and per size.
void real_fft(std::span<const double> input,
              std::span<std::complex<double>> output);

// Symmetric Hann window, w[n] = 0.5 (1 - cos(2 pi n / (N - 1))).
std::vector<double> hann_window(std::size_t size);

// Number of full frames of `frame` samples advanced by `hop`; zero if the
// signal is shorter than one frame.
inline std::size_t frame_count(std::size_t length, std::size_t frame,
                               std::size_t hop) {
  return length < frame ? 0 : 1 + (length - frame) / hop;
}

}  // namespace automix

#endif  // AUTOMIX_SPECTRAL_HPP_
