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

#ifndef AUTOMIX_EFFECTS_HPP_
#define AUTOMIX_EFFECTS_HPP_

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

#include "automix/audio.hpp"

namespace automix {

inline constexpr std::size_t kEqBandCount = 8;
inline constexpr std::array<double, kEqBandCount> kEqCenterHz = {
    60.0, 100.0, 200.0, 400.0, 800.0, 1600.0, 2500.0, 7500.0};
inline constexpr double kEqQ = 1.0;

struct ParamRange {
  double min;
  double max;

  double width() const { return max - min; }
  bool contains(double v) const { return v >= min && v <= max; }
};

inline constexpr ParamRange kEqGainRangeDb{-15.0, 15.0};
inline constexpr ParamRange kDrcRatioRange{1.0, 5.0};
inline constexpr ParamRange kDrcThresholdRangeDb{-15.0, 0.0};
inline constexpr ParamRange kDrcAttackRangeS{0.01, 0.5};
inline constexpr ParamRange kDrcReleaseRangeS{0.05, 1.0};
inline constexpr ParamRange kPositionRange{-3.0, 3.0};

struct DrcParams {
  double ratio = 1.0;
  double threshold_db = 0.0;
  double attack_s = 0.01;
  double release_s = 0.05;
};

// One track's slice of the decision vector, in this order:
// 8 EQ gains, ratio, threshold, attack, release, x, y, z.
struct EffectParams {
  static constexpr std::size_t kDimension = 15;

  std::array<double, kEqBandCount> eq_gains_db{};
  double drc_ratio = 1.0;
  double drc_threshold_db = 0.0;
  double drc_attack_s = 0.01;
  double drc_release_s = 0.05;
  std::array<double, 3> position_xyz{0.0, 0.0, 1.0};

  // Flat EQ, unity compressor, front centre at unit distance.
  static EffectParams neutral() { return {}; }

  static const std::array<ParamRange, kDimension>& ranges();
  static std::string_view field_name(std::size_t index);

  std::array<double, kDimension> to_vector() const;
  static EffectParams from_vector(std::span<const double> values);

  DrcParams drc() const {
    return {drc_ratio, drc_threshold_db, drc_attack_s, drc_release_s};
  }

  // Throws Error(kInvalidArgument) naming the first out-of-range field.
  void validate() const;

  bool operator==(const EffectParams&) const = default;
};

// Direct-form-I coefficients normalised by a0.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0, a1 = 0.0, a2 = 0.0;

  std::complex<double> response(double hz, double sample_rate_hz) const;
};

// RBJ cookbook peaking equaliser.
Biquad peaking_biquad(double center_hz, double gain_db, double q,
                      double sample_rate_hz);

// Magnitude response of the 8-band cascade in dB.
double eq_response_db(std::span<const double> gains_db, double hz,
                      double sample_rate_hz = kSampleRateHz);

TrackBuffer apply_eq(const TrackBuffer& track, std::span<const double> gains_db);

// Hard-knee static curve: identity below threshold, slope 1/ratio above.
double drc_static_curve_db(double input_db, double threshold_db, double ratio);

// Feed-forward compressor with a peak envelope follower; no makeup gain.
TrackBuffer apply_drc(const TrackBuffer& track, const DrcParams& params);

struct PanGains {
  double left = 0.0;
  double right = 0.0;
  double distance = 1.0;
};

// Equal-power pan from azimuth atan2(x, max(|z|, 1e-6)) and inverse-distance
// gain 1 / max(d, 1).
PanGains spatial_gains(const std::array<double, 3>& position_xyz);

StereoBuffer apply_spatial(const TrackBuffer& track,
                           const std::array<double, 3>& position_xyz);

// EQ -> compressor -> panner.
StereoBuffer render_track(const TrackBuffer& track, const EffectParams& params);

}  // namespace automix

#endif  // AUTOMIX_EFFECTS_HPP_
