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

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "automix/error.hpp"
#include "gtest/gtest.h"
#include "test_signals.hpp"

namespace automix {
namespace {

using testing::band_noise;
using testing::sine;

constexpr double kBinHz = 48000.0 / 2048.0;

// Direct O(N^2) evaluation of the level-dependent two-slope spreading with
// per-masker normalisation and 0.4-power summation.
BandVector direct_spread_unnormalised(const BandVector& e) {
  const auto& t = band_table();
  BandVector acc{};
  for (std::size_t k = 0; k < kBandCount; ++k) {
    if (e[k] <= 0.0) continue;
    const double level = 10.0 * std::log10(e[k]);
    const double su = 24.0 + 230.0 / t.f_center_hz[k] - 0.2 * level;
    std::vector<double> s(kBandCount);
    double a = 0.0;
    for (std::size_t i = 0; i < kBandCount; ++i) {
      const double dz = 0.25 * (static_cast<double>(i) - static_cast<double>(k));
      const double att_db = i < k ? -27.0 * dz : su * dz;
      s[i] = std::pow(10.0, -att_db / 10.0);
      a += s[i];
    }
    for (std::size_t i = 0; i < kBandCount; ++i) acc[i] += std::pow(e[k] * s[i] / a, 0.4);
  }
  for (double& v : acc) v = std::pow(v, 1.0 / 0.4);
  return acc;
}

BandVector direct_spread(const BandVector& e) {
  BandVector ones;
  ones.fill(1.0);
  const BandVector norm = direct_spread_unnormalised(ones);
  BandVector out = direct_spread_unnormalised(e);
  for (std::size_t i = 0; i < kBandCount; ++i) out[i] /= norm[i];
  return out;
}

void expect_valid_frame(const BandVector& v) {
  ASSERT_EQ(v.size(), 109u);
  for (double x : v) {
    ASSERT_TRUE(std::isfinite(x));
    ASSERT_GE(x, 0.0);
  }
}

TEST(BandTable, Shape) {
  const auto& t = band_table();
  EXPECT_EQ(t.f_center_hz.size(), 109u);
  EXPECT_NEAR(t.f_lower_hz[0], 80.0, 1e-9);
  EXPECT_NEAR(hz_to_bark(80.0), kLowestBandBark, 1e-4);
  EXPECT_LE(t.f_upper_hz[108], 18000.0 + 1e-9);
  for (std::size_t i = 0; i < kBandCount; ++i) {
    EXPECT_LT(t.f_lower_hz[i], t.f_center_hz[i]);
    EXPECT_LT(t.f_center_hz[i], t.f_upper_hz[i]);
    EXPECT_NEAR(t.z_center_bark[i],
                0.5 * (hz_to_bark(t.f_lower_hz[i]) + hz_to_bark(t.f_upper_hz[i])), 1e-9);
    if (i + 1 < kBandCount) {
      EXPECT_DOUBLE_EQ(t.f_upper_hz[i], t.f_lower_hz[i + 1]);
      EXPECT_NEAR(hz_to_bark(t.f_upper_hz[i]) - hz_to_bark(t.f_lower_hz[i]), 0.25, 1e-9);
    }
  }
}

TEST(AnalysisConfig, Validation) {
  EXPECT_NO_THROW(AnalysisConfig{}.validate());
  AnalysisConfig c;
  c.band_count = 100;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.fft_size = 2000;
  c.hop_size = 1000;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.hop_size = 512;
  EXPECT_THROW(c.validate(), Error);
}

class ModelTest : public ::testing::Test {
 protected:
  PsychoacousticModel model_;
};

TEST_F(ModelTest, FrameCount) {
  EXPECT_EQ(model_.frame_spectrum(std::vector<double>(2048, 0.0)).size(), 1u);
  EXPECT_EQ(model_.frame_spectrum(std::vector<double>(3071, 0.0)).size(), 1u);
  EXPECT_EQ(model_.frame_spectrum(std::vector<double>(3072, 0.0)).size(), 2u);
  EXPECT_THROW(model_.frame_spectrum(std::vector<double>(2047, 0.0)), Error);
}

TEST_F(ModelTest, ZeroInputGivesZeroSpectraAndBands) {
  auto spectra = model_.frame_spectrum(std::vector<double>(4096, 0.0));
  for (const auto& s : spectra) {
    for (auto c : s) ASSERT_EQ(c, std::complex<double>(0.0, 0.0));
    auto w = model_.outer_mid_ear_weight(s);
    for (double v : w) ASSERT_EQ(v, 0.0);
    auto b = model_.to_critical_bands(w);
    for (double v : b.energies) ASSERT_EQ(v, 0.0);
    auto spread = model_.spread_frequency(b);
    for (double v : spread.energies) ASSERT_EQ(v, 0.0);
  }
}

TEST_F(ModelTest, SineAtBinCentreMatchesDirectTransform) {
  const std::size_t k0 = 43;  // ~1008 Hz
  const double phase = 0.3;
  auto x = sine(k0 * kBinHz, 1.0, 0.1, phase);
  auto spectra = model_.frame_spectrum(x);
  const auto& s = spectra.front();

  // Oracle: naive DFT of the windowed frame with the symmetric Hann window.
  std::vector<double> w(2048);
  double wsum = 0.0;
  for (std::size_t n = 0; n < 2048; ++n) {
    w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / 2047.0);
    wsum += w[n];
  }
  const double scale = std::pow(10.0, 92.0 / 20.0) / (wsum / 2.0);
  double total = 0.0, near = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) total += std::norm(s[k]);
  for (std::size_t k = k0 - 4; k <= k0 + 4; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t n = 0; n < 2048; ++n) {
      acc += w[n] * x[n] * std::polar(1.0, -2.0 * std::numbers::pi * k * n / 2048.0);
    }
    acc *= scale;
    EXPECT_NEAR(std::abs(s[k]), std::abs(acc), 1e-6 * std::abs(s[k0])) << "bin " << k;
    if (k + 1 >= k0 && k <= k0 + 1) near += std::norm(s[k]);
  }
  // Full-scale sine at a bin centre lands at the 92 dB reference.
  EXPECT_NEAR(10.0 * std::log10(std::norm(s[k0])), 92.0, 1e-3);
  // Hann leakage: neighbours near a quarter of the peak power, rest tiny.
  EXPECT_NEAR(std::norm(s[k0 + 1]) / std::norm(s[k0]), 0.25, 1e-3);
  EXPECT_NEAR(std::norm(s[k0 - 1]) / std::norm(s[k0]), 0.25, 1e-3);
  EXPECT_GT(near / total, 0.999);
}

TEST_F(ModelTest, EarWeightFavoursThreeKilohertz) {
  EXPECT_GT(ear_weight_db(3000.0), ear_weight_db(100.0));
  // Published curve evaluated by hand at 1 kHz and 3.3 kHz.
  EXPECT_NEAR(ear_weight_db(1000.0),
              -0.6 * 3.64 + 6.5 * std::exp(-0.6 * 2.3 * 2.3) - 1e-3, 1e-12);
  EXPECT_NEAR(ear_weight_db(3300.0),
              -0.6 * 3.64 * std::pow(3.3, -0.8) + 6.5 - 1e-3 * std::pow(3.3, 3.6), 1e-12);

  const std::size_t k100 = 4, k3k = 128;  // ~93.75 Hz and 3000 Hz
  ComplexSpectrum flat(1025, std::complex<double>(0.0, 0.0));
  flat[k100] = flat[k3k] = std::complex<double>(1.0, 0.0);
  auto weighted = model_.outer_mid_ear_weight(flat);
  EXPECT_GT(weighted[k3k], weighted[k100]);
  EXPECT_NEAR(weighted[k3k], std::pow(10.0, ear_weight_db(k3k * kBinHz) / 10.0), 1e-12);
  EXPECT_EQ(model_.bin_weight(0), 0.0);
}

TEST_F(ModelTest, FlatSpectrumIntegratesToBandwidth) {
  PowerSpectrum flat(1025, 1.0);
  auto bands = model_.to_critical_bands(flat);
  const auto& t = band_table();
  double sum = 0.0;
  for (std::size_t i = 0; i < kBandCount; ++i) {
    EXPECT_NEAR(bands.energies[i], (t.f_upper_hz[i] - t.f_lower_hz[i]) / kBinHz,
                1e-9 * bands.energies[i])
        << "band " << i;
    sum += bands.energies[i];
  }
  const double covered = (t.f_upper_hz[108] - t.f_lower_hz[0]) / kBinHz;
  EXPECT_NEAR(sum, covered, 1e-3 * covered);
}

TEST_F(ModelTest, SingleBinToneStaysInItsBand) {
  const auto& t = band_table();
  // Pick a bin whose whole width sits inside one band.
  for (std::size_t k = 20; k < 700; ++k) {
    const double lo = (k - 0.5) * kBinHz, hi = (k + 0.5) * kBinHz;
    std::size_t band = kBandCount;
    for (std::size_t i = 0; i < kBandCount; ++i) {
      if (lo >= t.f_lower_hz[i] && hi <= t.f_upper_hz[i]) band = i;
    }
    if (band == kBandCount) continue;
    PowerSpectrum p(1025, 0.0);
    p[k] = 5.0;
    auto b = model_.to_critical_bands(p);
    for (std::size_t i = 0; i < kBandCount; ++i) {
      EXPECT_EQ(b.energies[i], i == band ? 5.0 : 0.0) << "bin " << k << " band " << i;
    }
  }
}

TEST_F(ModelTest, InternalNoise) {
  CriticalBandFrame zero;
  auto floor = model_.add_internal_noise(zero);
  const auto& t = band_table();
  for (std::size_t i = 0; i < kBandCount; ++i) {
    const double expected = std::pow(10.0, 0.1456 * std::pow(t.f_center_hz[i] / 1000.0, -0.8));
    EXPECT_EQ(floor.energies[i], internal_noise_energy(i));
    EXPECT_NEAR(floor.energies[i], expected, 1e-12 * expected);
    EXPECT_GT(floor.energies[i], 0.0);
  }
  CriticalBandFrame loud;
  loud.energies.fill(1e7);
  auto noisy = model_.add_internal_noise(loud);
  for (std::size_t i = 0; i < kBandCount; ++i) {
    EXPECT_GE(noisy.energies[i], loud.energies[i]);
    EXPECT_LT((noisy.energies[i] - loud.energies[i]) / loud.energies[i], 1e-3);
  }
}

TEST_F(ModelTest, FrequencySpreadingMatchesDirectEvaluation) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> level_db(0.0, 90.0);
  for (int trial = 0; trial < 5; ++trial) {
    CriticalBandFrame f;
    for (double& v : f.energies) v = std::pow(10.0, level_db(rng) / 10.0);
    auto got = model_.spread_frequency(f);
    auto want = direct_spread(f.energies);
    for (std::size_t i = 0; i < kBandCount; ++i) {
      EXPECT_NEAR(got.energies[i], want[i], 1e-9 * want[i]) << "band " << i;
    }
  }
}

TEST_F(ModelTest, SpreadingOfUnitFrameIsUnity) {
  CriticalBandFrame ones;
  ones.energies.fill(1.0);
  auto s = model_.spread_frequency(ones);
  for (double v : s.energies) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST_F(ModelTest, ImpulseSpreadsFurtherUpward) {
  CriticalBandFrame impulse;
  impulse.energies[50] = 1e8;
  auto s = model_.spread_frequency(impulse);
  for (std::size_t d = 1; d <= 8; ++d) {
    EXPECT_GT(s.energies[50 + d], s.energies[50 - d]) << "distance " << d;
  }
  // Louder maskers have shallower upper skirts.
  CriticalBandFrame soft;
  soft.energies[50] = 1e4;
  auto q = model_.spread_frequency(soft);
  EXPECT_GT(s.energies[58] / s.energies[50], q.energies[58] / q.energies[50]);
}

TEST_F(ModelTest, SeparatedTonesNearlySuperpose) {
  CriticalBandFrame a, b, both;
  a.energies[10] = 1e6;
  b.energies[90] = 1e6;
  both.energies[10] = both.energies[90] = 1e6;
  auto sa = model_.spread_frequency(a), sb = model_.spread_frequency(b),
       sab = model_.spread_frequency(both);
  for (std::size_t i : {5u, 10u, 15u, 85u, 90u, 100u}) {
    const double sum = sa.energies[i] + sb.energies[i];
    EXPECT_GE(sab.energies[i], sum * (1.0 - 1e-9));
    EXPECT_LT(sab.energies[i], 1.1 * sum) << "band " << i;
  }
}

TEST_F(ModelTest, TimeSpreadingClosedForm) {
  std::vector<CriticalBandFrame> frames(6);
  frames[0].energies.fill(1000.0);
  auto out = model_.spread_time(frames);
  for (std::size_t i = 0; i < kBandCount; ++i) {
    const double a = model_.time_smoothing(i);
    const double fc = band_table().f_center_hz[i];
    const double tau = 0.008 + 100.0 / fc * (0.030 - 0.008);
    EXPECT_NEAR(a, std::exp(-1024.0 / (48000.0 * tau)), 1e-15);
    EXPECT_EQ(out[0].energies[i], 1000.0);
    for (std::size_t n = 1; n < frames.size(); ++n) {
      const double expected = std::pow(a, static_cast<double>(n)) * (1.0 - a) * 1000.0;
      EXPECT_NEAR(out[n].energies[i], expected, 1e-12 * 1000.0);
      EXPECT_LT(out[n].energies[i], out[n - 1].energies[i]);
    }
  }
}

TEST_F(ModelTest, TimeSpreadingSteadyState) {
  std::vector<CriticalBandFrame> frames(10);
  for (auto& f : frames) f.energies.fill(42.0);
  for (const auto& f : model_.spread_time(frames)) {
    for (double v : f.energies) EXPECT_EQ(v, 42.0);
  }
}

TEST(MaskingOffset, Branches) {
  EXPECT_EQ(masking_offset(kLowestBandBark), 3.0);
  EXPECT_EQ(masking_offset(kLowestBandBark + 12.0), 3.0);
  EXPECT_EQ(masking_offset(kLowestBandBark + 16.0), 4.0);
  EXPECT_NEAR(masking_offset(kLowestBandBark + 20.0), 5.0, 1e-12);
  double prev = masking_offset(kLowestBandBark);
  for (double z = kLowestBandBark; z < 30.0; z += 0.01) {
    const double m = masking_offset(z);
    EXPECT_GE(m, prev);
    EXPECT_GE(m, 3.0);
    prev = m;
  }
}

TEST(MaskingThreshold, FixedDecibelShift) {
  CriticalBandFrame f;
  f.energies.fill(1.0);
  auto t = masking_threshold(f);
  EXPECT_NEAR(t.threshold_energy[0], std::pow(10.0, -0.3), 1e-12);
  EXPECT_NEAR(t.threshold_energy[0], 0.501, 1e-3);

  CriticalBandFrame doubled;
  doubled.energies.fill(2.0);
  auto t2 = masking_threshold(doubled);
  const auto& table = band_table();
  for (std::size_t i = 0; i < kBandCount; ++i) {
    EXPECT_NEAR(t2.threshold_energy[i], 2.0 * t.threshold_energy[i], 1e-12);
    const double z = table.z_center_bark[i];
    const double m = z <= kLowestBandBark + 12.0 ? 3.0 : 0.25 * (z - kLowestBandBark);
    EXPECT_NEAR(t.threshold_energy[i], std::pow(10.0, -m / 10.0), 1e-12);
  }
}

TEST_F(ModelTest, ZeroInputYieldsNoiseFloorExcitation) {
  auto a = model_.analyze(std::vector<double>(48000, 0.0));
  BandVector noise;
  for (std::size_t i = 0; i < kBandCount; ++i) noise[i] = internal_noise_energy(i);
  const BandVector floor = direct_spread(noise);
  for (std::size_t f = 0; f < a.excitation.size(); ++f) {
    EXPECT_FALSE(a.active[f]);
    for (std::size_t i = 0; i < kBandCount; ++i) {
      EXPECT_NEAR(a.excitation[f].energies[i], floor[i], 1e-12 * floor[i]);
    }
  }
}

TEST_F(ModelTest, AnalyzeMatchesStagewiseComposition) {
  auto x = band_noise(200.0, 6000.0, 0.5, 3);
  auto a = model_.analyze(x);
  auto spectra = model_.frame_spectrum(x);
  ASSERT_EQ(a.excitation.size(), spectra.size());
  std::vector<CriticalBandFrame> spread;
  for (std::size_t f = 0; f < spectra.size(); ++f) {
    auto b = model_.add_internal_noise(
        model_.to_critical_bands(model_.outer_mid_ear_weight(spectra[f])));
    spread.push_back(model_.spread_frequency(b));
  }
  auto timed = model_.spread_time(spread);
  for (std::size_t f = 0; f < timed.size(); ++f) {
    EXPECT_TRUE(a.active[f]);
    EXPECT_EQ(a.excitation[f].frame_index, f);
    for (std::size_t i = 0; i < kBandCount; ++i) {
      EXPECT_NEAR(a.excitation[f].energies[i], timed[f].energies[i],
                  1e-12 * timed[f].energies[i]);
    }
  }
}

TEST_F(ModelTest, EveryStageKeepsValidFramesAndThresholdBelowExcitation) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 4; ++trial) {
    auto x = band_noise(60.0, 16000.0, 0.4, 200 + trial, 0.9);
    for (const auto& s : model_.frame_spectrum(x)) {
      auto w = model_.outer_mid_ear_weight(s);
      auto b = model_.to_critical_bands(w);
      expect_valid_frame(b.energies);
      auto n = model_.add_internal_noise(b);
      expect_valid_frame(n.energies);
      auto sp = model_.spread_frequency(n);
      expect_valid_frame(sp.energies);
      auto th = masking_threshold(sp);
      for (std::size_t i = 0; i < kBandCount; ++i) {
        EXPECT_GT(th.threshold_energy[i], 0.0);
        EXPECT_LT(th.threshold_energy[i], sp.energies[i]);
      }
    }
    for (const auto& f : model_.analyze(x).excitation) expect_valid_frame(f.energies);
  }
}

TEST_F(ModelTest, DeterministicAndGainMonotone) {
  auto x = band_noise(100.0, 8000.0, 0.5, 17, 0.2);
  auto a1 = model_.analyze(x);
  auto a2 = model_.analyze(x);
  for (std::size_t f = 0; f < a1.excitation.size(); ++f) {
    EXPECT_EQ(a1.excitation[f].energies, a2.excitation[f].energies);
  }
  for (double g : {1.01, 1.5, 3.0, 4.5}) {
    std::vector<double> y = x;
    for (double& v : y) v *= g;
    auto sx = model_.frame_spectrum(x), sy = model_.frame_spectrum(y);
    for (std::size_t f = 0; f < sx.size(); ++f) {
      auto bx = model_.add_internal_noise(model_.to_critical_bands(model_.outer_mid_ear_weight(sx[f])));
      auto by = model_.add_internal_noise(model_.to_critical_bands(model_.outer_mid_ear_weight(sy[f])));
      auto px = model_.spread_frequency(bx), py = model_.spread_frequency(by);
      for (std::size_t i = 0; i < kBandCount; ++i) {
        EXPECT_GE(by.energies[i], bx.energies[i]);
        EXPECT_GE(py.energies[i], px.energies[i]) << "gain " << g << " band " << i;
      }
    }
    auto ay = model_.analyze(y);
    for (std::size_t f = 0; f < ay.excitation.size(); ++f) {
      for (std::size_t i = 0; i < kBandCount; ++i) {
        EXPECT_GE(ay.excitation[f].energies[i], a1.excitation[f].energies[i]);
      }
    }
  }
}

}  // namespace
}  // namespace automix
