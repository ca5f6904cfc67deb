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

#include "automix/effects.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "automix/error.hpp"

namespace automix {
namespace {

constexpr double kAzimuthEpsilon = 1e-6;

constexpr std::array<std::string_view, EffectParams::kDimension> kFieldNames = {
    "eq_gains_db[0]", "eq_gains_db[1]", "eq_gains_db[2]", "eq_gains_db[3]",
    "eq_gains_db[4]", "eq_gains_db[5]", "eq_gains_db[6]", "eq_gains_db[7]",
    "drc_ratio",      "drc_threshold_db", "drc_attack_s", "drc_release_s",
    "position_xyz[0]", "position_xyz[1]", "position_xyz[2]"};

void check_gains(std::span<const double> gains_db) {
  if (gains_db.size() != kEqBandCount) {
    throw Error(ErrorKind::kInvalidArgument, "EQ needs exactly 8 gains");
  }
  for (double g : gains_db) {
    if (!kEqGainRangeDb.contains(g)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "EQ gain " + std::to_string(g) + " dB outside [-15, 15]");
    }
  }
}

void check_range(const char* name, double v, ParamRange r) {
  if (!r.contains(v)) {
    std::ostringstream msg;
    msg << name << " = " << v << " outside [" << r.min << ", " << r.max << "]";
    throw Error(ErrorKind::kInvalidArgument, msg.str());
  }
}

}  // namespace

const std::array<ParamRange, EffectParams::kDimension>& EffectParams::ranges() {
  static const std::array<ParamRange, kDimension> r = {
      kEqGainRangeDb,       kEqGainRangeDb,   kEqGainRangeDb,    kEqGainRangeDb,
      kEqGainRangeDb,       kEqGainRangeDb,   kEqGainRangeDb,    kEqGainRangeDb,
      kDrcRatioRange,       kDrcThresholdRangeDb, kDrcAttackRangeS, kDrcReleaseRangeS,
      kPositionRange,       kPositionRange,   kPositionRange};
  return r;
}

std::string_view EffectParams::field_name(std::size_t index) {
  return kFieldNames.at(index);
}

std::array<double, EffectParams::kDimension> EffectParams::to_vector() const {
  std::array<double, kDimension> v{};
  std::copy(eq_gains_db.begin(), eq_gains_db.end(), v.begin());
  v[8] = drc_ratio;
  v[9] = drc_threshold_db;
  v[10] = drc_attack_s;
  v[11] = drc_release_s;
  std::copy(position_xyz.begin(), position_xyz.end(), v.begin() + 12);
  return v;
}

EffectParams EffectParams::from_vector(std::span<const double> values) {
  if (values.size() != kDimension) {
    throw Error(ErrorKind::kInvalidArgument,
                "effect parameter vector must have 15 entries");
  }
  EffectParams p;
  std::copy(values.begin(), values.begin() + 8, p.eq_gains_db.begin());
  p.drc_ratio = values[8];
  p.drc_threshold_db = values[9];
  p.drc_attack_s = values[10];
  p.drc_release_s = values[11];
  std::copy(values.begin() + 12, values.end(), p.position_xyz.begin());
  return p;
}

void EffectParams::validate() const {
  const auto v = to_vector();
  const auto& r = ranges();
  for (std::size_t i = 0; i < kDimension; ++i) {
    check_range(kFieldNames[i].data(), v[i], r[i]);
  }
}

std::complex<double> Biquad::response(double hz, double sample_rate_hz) const {
  const double w = 2.0 * std::numbers::pi * hz / sample_rate_hz;
  const std::complex<double> z1 = std::polar(1.0, -w);
  const std::complex<double> z2 = z1 * z1;
  return (b0 + b1 * z1 + b2 * z2) / (1.0 + a1 * z1 + a2 * z2);
}

Biquad peaking_biquad(double center_hz, double gain_db, double q,
                      double sample_rate_hz) {
  const double a = std::pow(10.0, gain_db / 40.0);
  const double w0 = 2.0 * std::numbers::pi * center_hz / sample_rate_hz;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double cosw = std::cos(w0);
  const double a0 = 1.0 + alpha / a;
  Biquad bq;
  bq.b0 = (1.0 + alpha * a) / a0;
  bq.b1 = -2.0 * cosw / a0;
  bq.b2 = (1.0 - alpha * a) / a0;
  bq.a1 = -2.0 * cosw / a0;
  bq.a2 = (1.0 - alpha / a) / a0;
  return bq;
}

double eq_response_db(std::span<const double> gains_db, double hz,
                      double sample_rate_hz) {
  check_gains(gains_db);
  std::complex<double> h = 1.0;
  for (std::size_t b = 0; b < kEqBandCount; ++b) {
    h *= peaking_biquad(kEqCenterHz[b], gains_db[b], kEqQ, sample_rate_hz)
             .response(hz, sample_rate_hz);
  }
  return 20.0 * std::log10(std::abs(h));
}

TrackBuffer apply_eq(const TrackBuffer& track, std::span<const double> gains_db) {
  check_gains(gains_db);
  TrackBuffer out = track;
  for (std::size_t b = 0; b < kEqBandCount; ++b) {
    // A 0 dB peaking section is exactly unity.
    if (gains_db[b] == 0.0) continue;
    const Biquad bq =
        peaking_biquad(kEqCenterHz[b], gains_db[b], kEqQ, track.sample_rate_hz);
    double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
    for (double& s : out.samples) {
      const double y = bq.b0 * s + bq.b1 * x1 + bq.b2 * x2 - bq.a1 * y1 - bq.a2 * y2;
      x2 = x1;
      x1 = s;
      y2 = y1;
      y1 = y;
      s = y;
    }
  }
  return out;
}

double drc_static_curve_db(double input_db, double threshold_db, double ratio) {
  if (input_db <= threshold_db) return input_db;
  return threshold_db + (input_db - threshold_db) / ratio;
}

TrackBuffer apply_drc(const TrackBuffer& track, const DrcParams& params) {
  check_range("drc_ratio", params.ratio, kDrcRatioRange);
  check_range("drc_threshold_db", params.threshold_db, kDrcThresholdRangeDb);
  check_range("drc_attack_s", params.attack_s, kDrcAttackRangeS);
  check_range("drc_release_s", params.release_s, kDrcReleaseRangeS);
  TrackBuffer out = track;
  if (params.ratio == 1.0) return out;

  const double fs = track.sample_rate_hz;
  const double attack = std::exp(-1.0 / (params.attack_s * fs));
  const double release = std::exp(-1.0 / (params.release_s * fs));
  const double threshold = std::pow(10.0, params.threshold_db / 20.0);
  // Above threshold, gain = (env / threshold)^(1/ratio - 1), which is the
  // static curve expressed in linear terms.
  const double exponent = 1.0 / params.ratio - 1.0;
  double envelope = 0.0;
  for (double& s : out.samples) {
    const double level = std::abs(s);
    const double coef = level > envelope ? attack : release;
    envelope = coef * envelope + (1.0 - coef) * level;
    if (envelope > threshold) s *= std::pow(envelope / threshold, exponent);
  }
  return out;
}

PanGains spatial_gains(const std::array<double, 3>& position_xyz) {
  const auto [x, y, z] = position_xyz;
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  const double azimuth = std::clamp(
      std::atan2(x, std::max(std::abs(z), kAzimuthEpsilon)), -kHalfPi, kHalfPi);
  const double pan = (azimuth + kHalfPi) / std::numbers::pi;
  const double distance = std::sqrt(x * x + y * y + z * z);
  return {std::cos(pan * kHalfPi), std::sin(pan * kHalfPi),
          1.0 / std::max(distance, 1.0)};
}

StereoBuffer apply_spatial(const TrackBuffer& track,
                           const std::array<double, 3>& position_xyz) {
  for (double c : position_xyz) check_range("position", c, kPositionRange);
  const PanGains g = spatial_gains(position_xyz);
  const double left = g.left * g.distance;
  const double right = g.right * g.distance;
  StereoBuffer out(track.size(), track.sample_rate_hz);
  for (std::size_t i = 0; i < track.size(); ++i) {
    out.left[i] = track.samples[i] * left;
    out.right[i] = track.samples[i] * right;
  }
  return out;
}

StereoBuffer render_track(const TrackBuffer& track, const EffectParams& params) {
  params.validate();
  return apply_spatial(apply_drc(apply_eq(track, params.eq_gains_db), params.drc()),
                       params.position_xyz);
}

}  // namespace automix
