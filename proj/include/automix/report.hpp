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

#ifndef AUTOMIX_REPORT_HPP_
#define AUTOMIX_REPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "automix/audio.hpp"
#include "automix/effects.hpp"
#include "automix/masking.hpp"
#include "automix/objective.hpp"
#include "automix/optimizer.hpp"
#include "json.hpp"

namespace automix {

inline constexpr int kReportSchema = 1;
inline constexpr double kMixPeakLimit = 0.99;
inline constexpr std::string_view kTotalRowId = "total";

struct LoudnessRow {
  std::string track_id;
  // Empty means below the gate (silence).
  std::optional<double> lufs_before;
  std::optional<double> lufs_after;
  double applied_gain_db = 0.0;
};

struct MixResult {
  std::string scenario;
  std::uint64_t seed = 0;
  double target_lufs = 0.0;
  ChannelCombine channel_combine = ChannelCombine::kBetterEar;

  StereoBuffer mix;
  // Rendered per-track stems, scaled by the limiter gain.
  std::vector<StereoBuffer> stems;
  std::vector<std::string> track_ids;
  std::vector<EffectParams> params;
  // One row per track, then the "total" row.
  std::vector<LoudnessRow> loudness_table;
  MaskingReport masking;
  double combined_objective = 0.0;
  ObjectiveTrace trace;
  std::size_t iterations = 0;
  // Global gain applied so the mix peak stays at or below 0.99.
  double limiter_gain = 1.0;
};

// Renders and sums every track with `params`, applies a single global gain if
// the sum peaks above 0.99, and fills the "after" loudness column and the
// masking report. The "before" column and the search fields are left for the
// caller.
MixResult render_mix(const MixObjective& objective,
                     std::span<const EffectParams> params);

struct SpectrumPoint {
  double frequency_hz = 0.0;
  double power_db = 0.0;
};

// Mean Hann-windowed periodogram (2048 points, 50 % overlap) in dB, where a
// full-scale sine at a bin centre reads 0 dB. Floored at 1e-12 before the log.
// Throws Error(kTooShort) if the buffer is shorter than one frame.
std::vector<SpectrumPoint> long_term_average_spectrum(std::span<const double> signal);

// Power average of both channels.
std::vector<SpectrumPoint> long_term_average_spectrum(const StereoBuffer& stereo);

nlohmann::json report_json(const MixResult& result);

struct EmitOptions {
  bool dump_bands = false;
};

// Writes mix.wav, report.json, trace.csv, spectrum_<id>.csv per track,
// spectrum_mix.left.csv / spectrum_mix.right.csv, positions.csv and, on
// request, bands.csv. Creates `out_dir` if needed.
void emit_report(const MixResult& result, const std::filesystem::path& out_dir,
                 const EmitOptions& options = {});

// Band table as CSV rows: band,f_lower_hz,f_center_hz,f_upper_hz,z_center_bark.
std::string band_table_csv();

}  // namespace automix

#endif  // AUTOMIX_REPORT_HPP_
