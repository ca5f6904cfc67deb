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

#include "automix/psychoacoustics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "automix/error.hpp"
#include "automix/spectral.hpp"

namespace automix {
namespace {

constexpr double kLowestBandHz = 80.0;
constexpr double kHighestBandHz = 18000.0;
constexpr double kLowerSlopeDbPerBark = 27.0;
constexpr double kSpreadExponent = 0.4;
constexpr double kTauMinSeconds = 0.008;
constexpr double kTau100Seconds = 0.030;
// Mean square of a full-scale sine.
constexpr double kFullScalePower = 0.5;
constexpr double kActivityFloor = 1e-10;

BandTable make_band_table() {
  BandTable t{};
  const double dz = 0.25;
  const double z_low = hz_to_bark(kLowestBandHz);
  const double z_high = hz_to_bark(kHighestBandHz);
  for (std::size_t i = 0; i < kBandCount; ++i) {
    const double zl = z_low + dz * static_cast<double>(i);
    const double zu = std::min(z_low + dz * static_cast<double>(i + 1), z_high);
    const double zc = 0.5 * (zl + zu);
    t.f_lower_hz[i] = bark_to_hz(zl);
    t.f_upper_hz[i] = bark_to_hz(zu);
    t.f_center_hz[i] = bark_to_hz(zc);
    t.z_center_bark[i] = zc;
  }
  return t;
}

}  // namespace

double hz_to_bark(double hz) { return 7.0 * std::asinh(hz / 650.0); }
double bark_to_hz(double bark) { return 650.0 * std::sinh(bark / 7.0); }

const BandTable& band_table() {
  static const BandTable table = make_band_table();
  return table;
}

void AnalysisConfig::validate() const {
  if (band_count != kBandCount) {
    throw Error(ErrorKind::kInvalidArgument, "band_count must be 109");
  }
  if (fft_size < 2 || (fft_size & (fft_size - 1)) != 0) {
    throw Error(ErrorKind::kInvalidArgument, "fft_size must be a power of two");
  }
  if (hop_size * 2 != fft_size) {
    throw Error(ErrorKind::kInvalidArgument, "hop_size must be fft_size / 2");
  }
  if (sample_rate_hz != 48000) {
    throw Error(ErrorKind::kSampleRate, "analysis requires 48000 Hz");
  }
}

double ear_weight_db(double hz) {
  if (hz <= 0.0) return -std::numeric_limits<double>::infinity();
  const double khz = hz / 1000.0;
  return -0.6 * 3.64 * std::pow(khz, -0.8) +
         6.5 * std::exp(-0.6 * (khz - 3.3) * (khz - 3.3)) -
         1e-3 * std::pow(khz, 3.6);
}

double internal_noise_energy(std::size_t band) {
  const double khz = band_table().f_center_hz[band] / 1000.0;
  return std::pow(10.0, 0.1456 * std::pow(khz, -0.8));
}

double masking_offset(double z_bark) {
  if (z_bark <= kLowestBandBark + 12.0) return 3.0;
  return 0.25 * (z_bark - kLowestBandBark);
}

MaskingThresholdFrame masking_threshold(const CriticalBandFrame& spread) {
  const auto& table = band_table();
  MaskingThresholdFrame out;
  for (std::size_t i = 0; i < kBandCount; ++i) {
    const double level_db = 10.0 * std::log10(std::max(spread.energies[i], kEnergyFloor));
    out.threshold_energy[i] =
        std::pow(10.0, (level_db - masking_offset(table.z_center_bark[i])) / 10.0);
  }
  return out;
}

PsychoacousticModel::PsychoacousticModel(AnalysisConfig config)
    : config_(config) {
  config_.validate();
  const std::size_t n = config_.fft_size;
  window_ = hann_window(n);
  double window_sum = 0.0;
  for (double w : window_) window_sum += w;
  // A unit sine at a bin centre has |X_k| = sum(w) / 2 before scaling.
  spectrum_scale_ =
      std::pow(10.0, config_.listening_level_db_spl / 20.0) / (window_sum / 2.0);

  const double bin_hz = static_cast<double>(config_.sample_rate_hz) / n;
  bin_weight_.resize(n / 2 + 1);
  for (std::size_t k = 0; k < bin_weight_.size(); ++k) {
    bin_weight_[k] = k == 0 ? 0.0 : std::pow(10.0, ear_weight_db(k * bin_hz) / 10.0);
  }

  const auto& table = band_table();
  for (std::size_t i = 0; i < kBandCount; ++i) {
    const double lo = table.f_lower_hz[i];
    const double hi = table.f_upper_hz[i];
    const auto first = static_cast<std::size_t>(std::floor(lo / bin_hz + 0.5));
    const auto last = std::min(
        static_cast<std::size_t>(std::floor(hi / bin_hz + 0.5)), n / 2);
    for (std::size_t k = first; k <= last; ++k) {
      const double bin_lo = (static_cast<double>(k) - 0.5) * bin_hz;
      const double bin_hi = (static_cast<double>(k) + 0.5) * bin_hz;
      const double overlap = std::min(hi, bin_hi) - std::max(lo, bin_lo);
      if (overlap > 0.0) band_bins_[i].push_back({k, overlap / bin_hz});
    }
    internal_noise_[i] = internal_noise_energy(i);
    const double tau = kTauMinSeconds +
                       100.0 / table.f_center_hz[i] * (kTau100Seconds - kTauMinSeconds);
    time_alpha_[i] = std::exp(-static_cast<double>(config_.hop_size) /
                              (config_.sample_rate_hz * tau));
  }

  // Spreading normaliser: response to unit excitation in every band.
  spread_norm_.fill(1.0);
  BandVector unit;
  unit.fill(1.0);
  BandVector response;
  spread_into(unit, response);
  spread_norm_ = response;
}

std::vector<ComplexSpectrum> PsychoacousticModel::frame_spectrum(
    std::span<const double> signal) const {
  const std::size_t n = config_.fft_size;
  const std::size_t frames = frame_count(signal.size(), n, config_.hop_size);
  if (frames == 0) {
    throw Error(ErrorKind::kTooShort,
                "signal shorter than one analysis frame (" + std::to_string(n) +
                    " samples)");
  }
  std::vector<ComplexSpectrum> out(frames, ComplexSpectrum(n / 2 + 1));
  std::vector<double> buffer(n);
  for (std::size_t f = 0; f < frames; ++f) {
    const double* x = signal.data() + f * config_.hop_size;
    for (std::size_t i = 0; i < n; ++i) buffer[i] = x[i] * window_[i];
    real_fft(buffer, out[f]);
    for (auto& bin : out[f]) bin *= spectrum_scale_;
  }
  return out;
}

void PsychoacousticModel::weight_into(const ComplexSpectrum& spectrum,
                                      PowerSpectrum& out) const {
  out.resize(spectrum.size());
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    out[k] = std::norm(spectrum[k]) * bin_weight_[k];
  }
}

PowerSpectrum PsychoacousticModel::outer_mid_ear_weight(
    const ComplexSpectrum& spectrum) const {
  if (spectrum.size() != bin_weight_.size()) {
    throw Error(ErrorKind::kInvalidArgument, "spectrum size mismatch");
  }
  PowerSpectrum out;
  weight_into(spectrum, out);
  return out;
}

void PsychoacousticModel::bands_into(const PowerSpectrum& weighted,
                                     BandVector& out) const {
  for (std::size_t i = 0; i < kBandCount; ++i) {
    double sum = 0.0;
    for (const auto& span : band_bins_[i]) sum += span.fraction * weighted[span.bin];
    out[i] = sum;
  }
}

CriticalBandFrame PsychoacousticModel::to_critical_bands(
    const PowerSpectrum& weighted) const {
  if (weighted.size() != bin_weight_.size()) {
    throw Error(ErrorKind::kInvalidArgument, "spectrum size mismatch");
  }
  CriticalBandFrame out;
  bands_into(weighted, out.energies);
  return out;
}

CriticalBandFrame PsychoacousticModel::add_internal_noise(
    const CriticalBandFrame& frame) const {
  CriticalBandFrame out = frame;
  for (std::size_t i = 0; i < kBandCount; ++i) out.energies[i] += internal_noise_[i];
  return out;
}

void PsychoacousticModel::spread_into(const BandVector& in, BandVector& out) const {
  const auto& table = band_table();
  const double dz = config_.bark_resolution;
  const double lower = std::pow(10.0, -kLowerSlopeDbPerBark * dz / 10.0);
  const double lower_q = std::pow(lower, kSpreadExponent);

  // Per-masker weight (E_k / A_k)^0.4 and upper-slope ratio.
  BandVector weight{};
  BandVector upper_q{};
  for (std::size_t k = 0; k < kBandCount; ++k) {
    if (in[k] <= 0.0) continue;
    const double level_db = 10.0 * std::log10(std::max(in[k], kEnergyFloor));
    const double slope = 24.0 + 230.0 / table.f_center_hz[k] - 0.2 * level_db;
    const double upper = std::pow(10.0, -slope * dz / 10.0);
    double norm = 0.0;
    double p = lower;
    for (std::size_t j = 1; j <= k; ++j, p *= lower) norm += p;
    p = 1.0;
    for (std::size_t j = k; j < kBandCount; ++j, p *= upper) norm += p;
    weight[k] = std::pow(in[k] / norm, kSpreadExponent);
    upper_q[k] = std::pow(upper, kSpreadExponent);
  }

  BandVector acc{};
  // Contributions from maskers above each band (lower skirt).
  double below = 0.0;
  for (std::size_t i = kBandCount; i-- > 0;) {
    acc[i] = below;
    below = lower_q * (weight[i] + below);
  }
  // Contributions from maskers at or below each band (upper skirt).
  for (std::size_t k = 0; k < kBandCount; ++k) {
    double p = weight[k];
    for (std::size_t i = k; i < kBandCount && p > 0.0; ++i) {
      acc[i] += p;
      p *= upper_q[k];
    }
  }
  for (std::size_t i = 0; i < kBandCount; ++i) {
    out[i] = std::pow(acc[i], 1.0 / kSpreadExponent) / spread_norm_[i];
  }
}

CriticalBandFrame PsychoacousticModel::spread_frequency(
    const CriticalBandFrame& frame) const {
  CriticalBandFrame out;
  out.frame_index = frame.frame_index;
  spread_into(frame.energies, out.energies);
  return out;
}

std::vector<CriticalBandFrame> PsychoacousticModel::spread_time(
    std::span<const CriticalBandFrame> frames) const {
  std::vector<CriticalBandFrame> out(frames.begin(), frames.end());
  BandVector state{};
  for (auto& frame : out) {
    for (std::size_t i = 0; i < kBandCount; ++i) {
      const double a = time_alpha_[i];
      state[i] = frame.energies[i] + a * (state[i] - frame.energies[i]);
      frame.energies[i] = std::max(state[i], frame.energies[i]);
    }
  }
  return out;
}

bool PsychoacousticModel::frame_active(std::span<const double> frame) const {
  double sum = 0.0;
  for (double s : frame) sum += s * s;
  return sum / static_cast<double>(frame.size()) > kActivityFloor * kFullScalePower;
}

SignalAnalysis PsychoacousticModel::analyze(std::span<const double> signal) const {
  const std::size_t n = config_.fft_size;
  const std::size_t frames = frame_count(signal.size(), n, config_.hop_size);
  if (frames == 0) {
    throw Error(ErrorKind::kTooShort,
                "signal shorter than one analysis frame (" + std::to_string(n) +
                    " samples)");
  }
  SignalAnalysis result;
  result.excitation.resize(frames);
  result.active.resize(frames);
  std::vector<double> buffer(n);
  ComplexSpectrum spectrum(n / 2 + 1);
  PowerSpectrum weighted;
  BandVector bands;
  for (std::size_t f = 0; f < frames; ++f) {
    std::span<const double> x = signal.subspan(f * config_.hop_size, n);
    result.active[f] = frame_active(x);
    for (std::size_t i = 0; i < n; ++i) buffer[i] = x[i] * window_[i];
    real_fft(buffer, spectrum);
    for (auto& bin : spectrum) bin *= spectrum_scale_;
    weight_into(spectrum, weighted);
    bands_into(weighted, bands);
    for (std::size_t i = 0; i < kBandCount; ++i) bands[i] += internal_noise_[i];
    result.excitation[f].frame_index = f;
    spread_into(bands, result.excitation[f].energies);
  }
  result.excitation = spread_time(result.excitation);
  return result;
}

}  // namespace automix
