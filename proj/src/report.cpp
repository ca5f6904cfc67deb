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

#include "automix/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "automix/error.hpp"
#include "automix/loudness.hpp"
#include "automix/psychoacoustics.hpp"
#include "automix/session.hpp"
#include "automix/spectral.hpp"
#include "automix/wav.hpp"

namespace automix {
namespace {

using nlohmann::json;

constexpr std::size_t kSpectrumFrame = 2048;
constexpr std::size_t kSpectrumHop = 1024;

std::optional<double> loudness_of(const StereoBuffer& buffer) {
  if (buffer.size() < static_cast<std::size_t>(kSampleRateHz * 4 / 10)) {
    return std::nullopt;
  }
  return measure_lufs(buffer).integrated_lufs;
}

std::vector<double> mean_power(std::span<const double> signal) {
  const std::size_t frames = frame_count(signal.size(), kSpectrumFrame, kSpectrumHop);
  if (frames == 0) {
    throw Error(ErrorKind::kTooShort,
                "spectrum needs at least 2048 samples");
  }
  const std::vector<double> window = hann_window(kSpectrumFrame);
  double window_sum = 0.0;
  for (double w : window) window_sum += w;
  const double norm = 1.0 / ((window_sum / 2.0) * (window_sum / 2.0));

  std::vector<double> buffer(kSpectrumFrame);
  std::vector<std::complex<double>> spectrum(kSpectrumFrame / 2 + 1);
  std::vector<double> power(spectrum.size(), 0.0);
  for (std::size_t f = 0; f < frames; ++f) {
    const double* x = signal.data() + f * kSpectrumHop;
    for (std::size_t i = 0; i < kSpectrumFrame; ++i) buffer[i] = x[i] * window[i];
    real_fft(buffer, spectrum);
    for (std::size_t k = 0; k < spectrum.size(); ++k) power[k] += std::norm(spectrum[k]);
  }
  for (double& p : power) p *= norm / static_cast<double>(frames);
  return power;
}

std::vector<SpectrumPoint> to_points(const std::vector<double>& power) {
  std::vector<SpectrumPoint> out(power.size());
  const double bin_hz = static_cast<double>(kSampleRateHz) / kSpectrumFrame;
  for (std::size_t k = 0; k < power.size(); ++k) {
    out[k] = {k * bin_hz, 10.0 * std::log10(std::max(power[k], kEnergyFloor))};
  }
  return out;
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json params_json(const EffectParams& p) {
  return {{"eq_gains_db", p.eq_gains_db},
          {"drc_ratio", p.drc_ratio},
          {"drc_threshold_db", p.drc_threshold_db},
          {"drc_attack_s", p.drc_attack_s},
          {"drc_release_s", p.drc_release_s},
          {"position_xyz", p.position_xyz}};
}

json channel_json(const TrackMaskingMetric& m) {
  return {{"m_n", m.m_n},
          {"active_frames", m.active_frames},
          {"per_band_msr", m.per_band_msr},
          {"per_frame", m.per_frame}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "write failed for '" + path.string() + "'");
}

std::string spectrum_csv(const std::vector<SpectrumPoint>& points) {
  std::ostringstream out;
  out.precision(10);
  out << "freq_hz,power_db\n";
  for (const auto& p : points) out << p.frequency_hz << ',' << p.power_db << '\n';
  return out.str();
}

}  // namespace

MixResult render_mix(const MixObjective& objective,
                     std::span<const EffectParams> params) {
  MixResult result;
  result.track_ids = objective.track_ids();
  result.params.assign(params.begin(), params.end());
  result.stems = objective.render(params);
  result.channel_combine = objective.channel_combine();
  result.masking = mix_masking_report(objective.model(), result.track_ids,
                                      result.stems, result.channel_combine);
  result.combined_objective = objective.combined(result.masking);

  result.mix = StereoBuffer(objective.tracks().front().size());
  for (const auto& stem : result.stems) result.mix.accumulate(stem);
  const double peak = result.mix.peak();
  if (peak > kMixPeakLimit) {
    result.limiter_gain = kMixPeakLimit / peak;
    result.mix.scale(result.limiter_gain);
    for (auto& stem : result.stems) stem.scale(result.limiter_gain);
  }

  for (std::size_t t = 0; t < result.stems.size(); ++t) {
    LoudnessRow row;
    row.track_id = result.track_ids[t];
    row.lufs_after = loudness_of(result.stems[t]);
    result.loudness_table.push_back(row);
  }
  LoudnessRow total;
  total.track_id = std::string(kTotalRowId);
  total.lufs_after = loudness_of(result.mix);
  result.loudness_table.push_back(total);
  return result;
}

std::vector<SpectrumPoint> long_term_average_spectrum(std::span<const double> signal) {
  return to_points(mean_power(signal));
}

std::vector<SpectrumPoint> long_term_average_spectrum(const StereoBuffer& stereo) {
  std::vector<double> left = mean_power(stereo.left);
  const std::vector<double> right = mean_power(stereo.right);
  for (std::size_t k = 0; k < left.size(); ++k) left[k] = 0.5 * (left[k] + right[k]);
  return to_points(left);
}

json report_json(const MixResult& r) {
  json loudness = json::array();
  for (const auto& row : r.loudness_table) {
    loudness.push_back({{"track_id", row.track_id},
                        {"lufs_before", optional_number(row.lufs_before)},
                        {"lufs_after", optional_number(row.lufs_after)},
                        {"applied_gain_db", row.applied_gain_db}});
  }
  json params = json::object();
  for (std::size_t t = 0; t < r.params.size(); ++t) {
    params[r.track_ids[t]] = params_json(r.params[t]);
  }
  json per_track = json::array();
  for (const auto& m : r.masking.per_track) {
    per_track.push_back({{"track_id", m.track_id},
                         {"m_n", m.m_n},
                         {"left", channel_json(m.left)},
                         {"right", channel_json(m.right)}});
  }
  return {
      {"schema", kReportSchema},
      {"scenario", r.scenario},
      {"target_lufs", r.target_lufs},
      {"loudness_table", loudness},
      {"params", params},
      {"masking",
       {{"channel_combine", to_string(r.channel_combine)},
        {"t_max_db", kMaxMaskingDb},
        {"per_track", per_track},
        {"m_total", r.masking.m_total},
        {"m_diff", r.masking.m_diff}}},
      {"objective",
       {{"m_total", r.masking.m_total},
        {"m_diff", r.masking.m_diff},
        {"combined", r.combined_objective}}},
      {"iterations", r.iterations},
      {"evaluations", r.trace.evaluations},
      {"limiter_gain", r.limiter_gain},
      {"seed", r.seed},
  };
}

std::string band_table_csv() {
  const auto& t = band_table();
  std::ostringstream out;
  out.precision(10);
  out << "band,f_lower_hz,f_center_hz,f_upper_hz,z_center_bark\n";
  for (std::size_t i = 0; i < kBandCount; ++i) {
    out << i << ',' << t.f_lower_hz[i] << ',' << t.f_center_hz[i] << ','
        << t.f_upper_hz[i] << ',' << t.z_center_bark[i] << '\n';
  }
  return out.str();
}

void emit_report(const MixResult& result, const std::filesystem::path& out_dir,
                 const EmitOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw Error(ErrorKind::kIo, "cannot create output directory '" +
                                    out_dir.string() + "'");
  }

  write_wav(result.mix, out_dir / "mix.wav", SampleFormat::kFloat32);
  write_text(out_dir / "report.json", report_json(result).dump(2) + "\n");

  std::ostringstream trace;
  trace.precision(17);
  trace << "iteration,best_objective\n";
  for (std::size_t i = 0; i < result.trace.best_value.size(); ++i) {
    trace << i + 1 << ',' << result.trace.best_value[i] << '\n';
  }
  write_text(out_dir / "trace.csv", trace.str());

  for (std::size_t t = 0; t < result.stems.size(); ++t) {
    write_text(out_dir / ("spectrum_" + result.track_ids[t] + ".csv"),
               spectrum_csv(long_term_average_spectrum(result.stems[t])));
  }
  write_text(out_dir / "spectrum_mix.left.csv",
             spectrum_csv(long_term_average_spectrum(result.mix.left)));
  write_text(out_dir / "spectrum_mix.right.csv",
             spectrum_csv(long_term_average_spectrum(result.mix.right)));

  std::ostringstream positions;
  positions.precision(17);
  positions << "track_id,x,y,z\n";
  for (std::size_t t = 0; t < result.params.size(); ++t) {
    const auto& p = result.params[t].position_xyz;
    positions << result.track_ids[t] << ',' << p[0] << ',' << p[1] << ',' << p[2] << '\n';
  }
  write_text(out_dir / "positions.csv", positions.str());

  if (options.dump_bands) write_text(out_dir / "bands.csv", band_table_csv());
}

}  // namespace automix
