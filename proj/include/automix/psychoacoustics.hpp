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

// FFT-based peripheral ear model (PEAQ basic version) producing per-frame
// critical-band excitation and masking thresholds.
//
// Pipeline per frame: Hann-windowed FFT -> outer/middle ear weighting ->
// grouping into 109 quarter-Bark bands -> internal noise -> frequency
// spreading. Time spreading then runs across the frame sequence. All energies
// between stages are linear.

#ifndef AUTOMIX_PSYCHOACOUSTICS_HPP_
#define AUTOMIX_PSYCHOACOUSTICS_HPP_

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace automix {

inline constexpr std::size_t kBandCount = 109;

// Lower edge of the first band in Bark, 7 asinh(80 / 650).
inline constexpr double kLowestBandBark = 0.8594;

// Floor applied before any logarithm.
inline constexpr double kEnergyFloor = 1e-12;

using BandVector = std::array<double, kBandCount>;
using ComplexSpectrum = std::vector<std::complex<double>>;
using PowerSpectrum = std::vector<double>;

struct AnalysisConfig {
  std::size_t fft_size = 2048;
  std::size_t hop_size = 1024;
  std::size_t band_count = kBandCount;
  double bark_resolution = 0.25;
  double z_lower_bark = kLowestBandBark;
  // A full-scale sine at a bin centre maps to this level (dB SPL) in its bin.
  double listening_level_db_spl = 92.0;
  int sample_rate_hz = 48000;

  void validate() const;
};

struct BandTable {
  BandVector f_lower_hz;
  BandVector f_center_hz;
  BandVector f_upper_hz;
  BandVector z_center_bark;
};

// Quarter-Bark grid from 80 Hz to 18 kHz with z = 7 asinh(f / 650).
const BandTable& band_table();

double hz_to_bark(double hz);
double bark_to_hz(double bark);

struct CriticalBandFrame {
  BandVector energies{};
  std::size_t frame_index = 0;
};

struct MaskingThresholdFrame {
  BandVector threshold_energy{};
};

// Outer/middle ear transfer function in dB at `hz` (-inf at DC).
double ear_weight_db(double hz);

// Internal noise energy added to band `band`.
double internal_noise_energy(std::size_t band);

// Offset between excitation and masking threshold in dB at Bark position z:
// 3 dB up to z_L + 12 Bark, then 0.25 (z - z_L).
double masking_offset(double z_bark);

// threshold = excitation * 10^(-offset(z_c) / 10), per band.
MaskingThresholdFrame masking_threshold(const CriticalBandFrame& spread);

// Excitation of one signal after every stage, plus a per-frame activity flag
// (frame mean square above 1e-10 of a full-scale sine).
struct SignalAnalysis {
  std::vector<CriticalBandFrame> excitation;
  std::vector<bool> active;
};

class PsychoacousticModel {
 public:
  explicit PsychoacousticModel(AnalysisConfig config = {});

  const AnalysisConfig& config() const { return config_; }

  // Throws Error(kTooShort) if the signal is shorter than one FFT frame.
  std::vector<ComplexSpectrum> frame_spectrum(std::span<const double> signal) const;

  // Weighted power |X_k|^2 * 10^(W(f_k) / 10) per bin.
  PowerSpectrum outer_mid_ear_weight(const ComplexSpectrum& spectrum) const;

  // Sums bin powers into bands; bins straddling an edge are split in
  // proportion to their overlap.
  CriticalBandFrame to_critical_bands(const PowerSpectrum& weighted) const;

  CriticalBandFrame add_internal_noise(const CriticalBandFrame& frame) const;

  // Level-dependent two-sided spreading over Bark (27 dB/Bark below the
  // masker, 24 + 230/f - 0.2 L above), combined with exponent 0.4 and
  // normalised so a unit excitation in every band maps to itself.
  CriticalBandFrame spread_frequency(const CriticalBandFrame& frame) const;

  // First-order forward smearing E~[n] = a E~[n-1] + (1 - a) E[n],
  // output max(E~[n], E[n]), with band-dependent time constants.
  std::vector<CriticalBandFrame> spread_time(
      std::span<const CriticalBandFrame> frames) const;

  // Whole pipeline.
  SignalAnalysis analyze(std::span<const double> signal) const;

  // Weight applied to bin k, linear power.
  double bin_weight(std::size_t bin) const { return bin_weight_[bin]; }
  double time_smoothing(std::size_t band) const { return time_alpha_[band]; }

 private:
  void weight_into(const ComplexSpectrum& spectrum, PowerSpectrum& out) const;
  void bands_into(const PowerSpectrum& weighted, BandVector& out) const;
  void spread_into(const BandVector& in, BandVector& out) const;
  bool frame_active(std::span<const double> frame) const;

  struct BinSpan {
    std::size_t bin;
    double fraction;
  };

  AnalysisConfig config_;
  std::vector<double> window_;
  double spectrum_scale_ = 1.0;
  std::vector<double> bin_weight_;
  std::array<std::vector<BinSpan>, kBandCount> band_bins_;
  BandVector internal_noise_{};
  BandVector spread_norm_{};
  BandVector time_alpha_{};
};

}  // namespace automix

#endif  // AUTOMIX_PSYCHOACOUSTICS_HPP_
