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

#include "automix/masking.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "automix/effects.hpp"
#include "automix/error.hpp"
#include "gtest/gtest.h"
#include "masking_fixture.hpp"
#include "test_signals.hpp"

namespace automix {
namespace {

using testing::band_noise;

CriticalBandFrame uniform_frame(double v) {
  CriticalBandFrame f;
  f.energies.fill(v);
  return f;
}

MaskingThresholdFrame uniform_threshold(double v) {
  MaskingThresholdFrame t;
  t.threshold_energy.fill(v);
  return t;
}

TEST(MsrPerBand, Arithmetic) {
  BandVector signal, threshold;
  signal.fill(2.0);
  threshold.fill(2.0);
  threshold[1] = 200.0;
  threshold[2] = 0.2;
  auto msr = msr_per_band(threshold, signal);
  EXPECT_EQ(msr[0], 0.0);
  EXPECT_NEAR(msr[1], 20.0, 1e-12);
  EXPECT_NEAR(msr[2], -10.0, 1e-12);

  // Zero energies are floored instead of producing infinities.
  signal[3] = 0.0;
  threshold[3] = 0.0;
  EXPECT_EQ(msr_per_band(threshold, signal)[3], 0.0);
}

TEST(TrackMaskingMetric, HingeAndClamp) {
  std::vector<CriticalBandFrame> signal{uniform_frame(1.0)};
  std::vector<bool> active{true};

  // Threshold below the signal everywhere: nothing is masked.
  auto none = track_masking_metric(signal, std::vector{uniform_threshold(0.5)}, active);
  EXPECT_EQ(none.m_n, 0.0);

  auto one = uniform_threshold(0.5);
  one.threshold_energy[7] = 100.0;  // 20 dB
  EXPECT_NEAR(track_masking_metric(signal, std::vector{one}, active).m_n, 1.0, 1e-12);

  one.threshold_energy[7] = 10.0;  // 10 dB
  EXPECT_NEAR(track_masking_metric(signal, std::vector{one}, active).m_n, 0.5, 1e-12);

  one.threshold_energy[7] = 1e6;  // 60 dB clamps to one
  EXPECT_NEAR(track_masking_metric(signal, std::vector{one}, active).m_n, 1.0, 1e-12);

  // Every band at the clamp gives the 109 upper bound.
  auto all = track_masking_metric(signal, std::vector{uniform_threshold(1e9)}, active);
  EXPECT_NEAR(all.m_n, 109.0, 1e-9);
  EXPECT_NEAR(all.per_frame[0], 109.0, 1e-9);
}

TEST(TrackMaskingMetric, MeanOverActiveFramesOnly) {
  std::vector<CriticalBandFrame> signal(3, uniform_frame(1.0));
  auto t = uniform_threshold(0.5);
  t.threshold_energy[0] = 100.0;
  auto t2 = t;
  t2.threshold_energy[1] = 100.0;
  std::vector<MaskingThresholdFrame> threshold{t, t2, uniform_threshold(1e9)};
  auto m = track_masking_metric(signal, threshold, {true, true, false});
  EXPECT_EQ(m.active_frames, 2u);
  EXPECT_NEAR(m.m_n, 1.5, 1e-12);
  EXPECT_EQ(m.per_frame[2], 0.0);
}

TEST(TrackMaskingMetric, InactiveTrack) {
  std::vector<CriticalBandFrame> signal(2, uniform_frame(1.0));
  std::vector<MaskingThresholdFrame> threshold(2, uniform_threshold(1e9));
  auto m = track_masking_metric(signal, threshold, {false, false});
  EXPECT_TRUE(m.inactive());
  EXPECT_EQ(m.m_n, 0.0);
  EXPECT_THROW(track_masking_metric(signal, threshold, {true}), Error);
}

TEST(Aggregates, TotalAndSpread) {
  EXPECT_NEAR(total_masking(std::vector{0.3, 0.4}), 0.25, 1e-15);
  EXPECT_NEAR(masking_spread(std::vector{0.3, 0.4}), 0.1, 1e-15);
  EXPECT_NEAR(masking_spread(std::vector{0.1, 0.5, 0.2}), 0.4, 1e-15);
  EXPECT_EQ(total_masking(std::vector{0.0, 0.0, 0.0}), 0.0);
  EXPECT_EQ(masking_spread(std::vector{0.0, 0.0, 0.0}), 0.0);
}

TEST(Aggregates, FixtureMatchesDirectEvaluation) {
  testing::MaskingFixture fx;
  const auto want = testing::direct_masking(fx);
  const auto got = testing::pipeline_masking(fx);
  EXPECT_GT(want.m[0], 0.0);
  EXPECT_GT(want.m[1], 0.0);
  for (int t = 0; t < 2; ++t) EXPECT_NEAR(got.m[t], want.m[t], 1e-9);
  EXPECT_NEAR(got.m_total, want.m_total, 1e-9);
  EXPECT_NEAR(got.m_diff, want.m_diff, 1e-9);
}

class MixMaskingTest : public ::testing::Test {
 protected:
  std::vector<double> a_ = band_noise(300.0, 3000.0, 1.0, 1);
  std::vector<double> b_ = band_noise(300.0, 3000.0, 1.0, 2);
  std::vector<double> c_ = band_noise(1000.0, 6000.0, 1.0, 3);
  PsychoacousticModel model_;
};

TEST_F(MixMaskingTest, TwoTrackThresholdIsTheOtherTrack) {
  std::vector<std::span<const double>> signals{a_, b_};
  auto threshold = accompaniment_threshold(model_, 0, signals);
  auto other = model_.analyze(b_);
  ASSERT_EQ(threshold.size(), other.excitation.size());
  for (std::size_t f = 0; f < threshold.size(); ++f) {
    EXPECT_EQ(threshold[f].threshold_energy,
              masking_threshold(other.excitation[f]).threshold_energy);
  }
}

TEST_F(MixMaskingTest, TargetDoesNotInfluenceItsThreshold) {
  std::vector<double> loud = a_;
  for (double& v : loud) v *= 3.0;
  std::vector<std::span<const double>> s1{a_, b_, c_}, s2{loud, b_, c_};
  auto t1 = accompaniment_threshold(model_, 0, s1);
  auto t2 = accompaniment_threshold(model_, 0, s2);
  for (std::size_t f = 0; f < t1.size(); ++f) {
    EXPECT_EQ(t1[f].threshold_energy, t2[f].threshold_energy);
  }
  // The masker is the time-domain sum of the others.
  std::vector<double> sum(b_.size());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = b_[i] + c_[i];
  auto direct = model_.analyze(sum);
  for (std::size_t f = 0; f < t1.size(); ++f) {
    EXPECT_EQ(t1[f].threshold_energy,
              masking_threshold(direct.excitation[f]).threshold_energy);
  }
  EXPECT_THROW(accompaniment_threshold(model_, 3, s1), Error);
  std::vector<std::span<const double>> single{a_};
  EXPECT_THROW(accompaniment_threshold(model_, 0, single), Error);
}

TEST_F(MixMaskingTest, SilentAccompanimentGivesFloorThreshold) {
  std::vector<double> silence(a_.size(), 0.0);
  std::vector<std::span<const double>> signals{a_, silence};
  auto threshold = accompaniment_threshold(model_, 0, signals);
  auto floor = model_.analyze(std::vector<double>(a_.size(), 0.0));
  for (std::size_t f = 0; f < threshold.size(); ++f) {
    EXPECT_EQ(threshold[f].threshold_energy,
              masking_threshold(floor.excitation[f]).threshold_energy);
  }
  // Speech-level target clears the floor everywhere it has energy.
  auto metrics = channel_masking(model_, signals);
  EXPECT_EQ(metrics[0].m_n, 0.0);
  EXPECT_TRUE(metrics[1].inactive());
}

TEST_F(MixMaskingTest, DominantTargetIsUnmasked) {
  std::vector<double> whisper = b_;
  for (double& v : whisper) v *= 1e-4;
  std::vector<std::span<const double>> signals{a_, whisper};
  EXPECT_EQ(channel_masking(model_, signals)[0].m_n, 0.0);
}

TEST_F(MixMaskingTest, AccompanimentGainNeverReducesMasking) {
  double prev = -1.0;
  for (double g : {0.25, 0.5, 1.0, 1.5, 2.0, 4.0}) {
    std::vector<double> b = b_, c = c_;
    for (double& v : b) v *= g;
    for (double& v : c) v *= g;
    std::vector<std::span<const double>> signals{a_, b, c};
    const double m = channel_masking(model_, signals)[0].m_n;
    EXPECT_GE(m, prev) << "gain " << g;
    prev = m;
  }
  EXPECT_GT(prev, 0.0);
}

TEST_F(MixMaskingTest, PerFrameSumBounded) {
  std::vector<double> quiet = a_;
  for (double& v : quiet) v *= 1e-3;
  std::vector<std::span<const double>> signals{quiet, b_};
  for (const auto& m : channel_masking(model_, signals)) {
    for (double v : m.per_frame) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 109.0);
    }
  }
}

TEST_F(MixMaskingTest, IdenticalTracksAreSymmetric) {
  std::vector<StereoBuffer> stems{apply_spatial(testing::track("a", a_), {0, 0, 1}),
                                  apply_spatial(testing::track("b", a_), {0, 0, 1})};
  std::vector<std::string> ids{"a", "b"};
  for (auto mode : {ChannelCombine::kBetterEar, ChannelCombine::kMean}) {
    auto r = mix_masking_report(model_, ids, stems, mode);
    EXPECT_EQ(r.m_diff, 0.0);
    EXPECT_EQ(r.per_track[0].m_n, r.per_track[1].m_n);
    // A masker identical to the target sits at least 3 dB under it.
    EXPECT_EQ(r.m_total, 0.0);
  }
}

TEST_F(MixMaskingTest, ChannelCombination) {
  std::vector<StereoBuffer> stems{apply_spatial(testing::track("a", a_), {-1, 0, 1}),
                                  apply_spatial(testing::track("b", b_), {0.5, 0, 1})};
  std::vector<std::string> ids{"a", "b"};
  auto mean = mix_masking_report(model_, ids, stems, ChannelCombine::kMean);
  auto ear = mix_masking_report(model_, ids, stems, ChannelCombine::kBetterEar);
  for (std::size_t t = 0; t < 2; ++t) {
    const auto& m = mean.per_track[t];
    EXPECT_NEAR(m.m_n, 0.5 * (m.left.m_n + m.right.m_n), 1e-15);
    const auto& e = ear.per_track[t];
    EXPECT_EQ(e.m_n, std::min(e.left.m_n, e.right.m_n));
    EXPECT_EQ(e.track_id, ids[t]);
  }
  const auto scores = ear.scores();
  EXPECT_NEAR(ear.m_total, scores[0] * scores[0] + scores[1] * scores[1], 1e-15);
  EXPECT_NEAR(ear.m_diff, std::abs(scores[0] - scores[1]), 1e-15);
}

TEST_F(MixMaskingTest, BetterEarIgnoresChannelWhereTrackIsAbsent) {
  // Track a only in the left channel, where it is buried under b.
  StereoBuffer sa(a_.size()), sb(b_.size());
  std::vector<double> whisper = a_;
  for (double& v : whisper) v *= 0.05;
  sa.left = whisper;
  sb.left = b_;
  sb.right = b_;
  std::vector<StereoBuffer> stems{sa, sb};
  std::vector<std::string> ids{"a", "b"};
  auto r = mix_masking_report(model_, ids, stems, ChannelCombine::kBetterEar);
  EXPECT_TRUE(r.per_track[0].right.inactive());
  EXPECT_GT(r.per_track[0].left.m_n, 0.0);
  EXPECT_EQ(r.per_track[0].m_n, r.per_track[0].left.m_n);
}

}  // namespace
}  // namespace automix
