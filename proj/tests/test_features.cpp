// Copyright 2026 The enakit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "enakit/error.hpp"
#include "enakit/features.hpp"
#include "oracles.hpp"

using namespace enakit;
using namespace enakit::features;

namespace {

AudioBuffer sine(double hz, double seconds, double rate = 16000.0, double amplitude = 0.5) {
  AudioBuffer a;
  a.sample_rate = rate;
  const auto n = static_cast<std::size_t>(seconds * rate);
  for (std::size_t i = 0; i < n; ++i) a.samples.push_back(amplitude * std::sin(2 * std::numbers::pi * hz * i / rate));
  return a;
}

AudioBuffer noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  AudioBuffer a;
  a.sample_rate = 16000;
  for (std::size_t i = 0; i < n; ++i) a.samples.push_back(u(rng));
  return a;
}

PoseSequence random_pose(std::size_t frames, std::size_t joints, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  PoseSequence p;
  p.frames = frames;
  p.joints = joints;
  for (std::size_t i = 0; i < frames * joints * 3; ++i) p.coords.push_back(u(rng));
  return p;
}

double joint_distance(const PoseSequence& p, std::size_t t, std::size_t a, std::size_t b) {
  double s = 0;
  for (std::size_t k = 0; k < 3; ++k) s += std::pow(p.at(t, a, k) - p.at(t, b, k), 2);
  return std::sqrt(s);
}

}  // namespace

TEST(Mfcc, DefaultConfigAt16k) {
  const auto c = MfccConfig::for_sample_rate(16000);
  EXPECT_EQ(c.frame_length, 400u);
  EXPECT_EQ(c.hop, 160u);
  EXPECT_EQ(c.fft_size, 512u);
  EXPECT_EQ(c.mel_filters, 40u);
  EXPECT_EQ(c.coefficients, 40u);
}

TEST(Mfcc, FrameCountFormula) {
  const MfccConfig c;
  EXPECT_EQ(frame_count(16000, c), 98u);
  EXPECT_EQ(frame_count(400, c), 1u);
  EXPECT_EQ(frame_count(559, c), 1u);
  EXPECT_EQ(frame_count(560, c), 2u);
  const auto m = mfcc(sine(440, 1.0), c);
  EXPECT_EQ(m.rows, 98u);
  EXPECT_EQ(m.cols, 40u);
}

TEST(Mfcc, ShortOrInvalidInputFails) {
  AudioBuffer a = sine(440, 0.01);
  EXPECT_THROW(mfcc(a, MfccConfig{}), Error);
  MfccConfig bad;
  bad.coefficients = 41;
  EXPECT_THROW(bad.validate(), Error);
  bad = MfccConfig{};
  bad.fft_size = 300;
  EXPECT_THROW(bad.validate(), Error);
  bad = MfccConfig{};
  bad.hop = 500;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Mfcc, MelScaleRoundTrip) {
  EXPECT_NEAR(hz_to_mel(700), 2595 * std::log10(2.0), 1e-9);
  for (double hz : {0.0, 100.0, 440.0, 8000.0}) EXPECT_NEAR(mel_to_hz(hz_to_mel(hz)), hz, 1e-9);
}

TEST(Mfcc, FftMatchesDirectDft) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<std::complex<double>> x(64);
  for (auto& v : x) v = {u(rng), u(rng)};
  auto y = x;
  fft(y);
  for (std::size_t k = 0; k < x.size(); ++k) {
    std::complex<double> s = 0;
    for (std::size_t n = 0; n < x.size(); ++n)
      s += x[n] * std::polar(1.0, -2 * std::numbers::pi * double(k * n) / double(x.size()));
    EXPECT_NEAR(std::abs(s - y[k]), 0.0, 1e-10);
  }
  std::vector<std::complex<double>> odd(12);
  EXPECT_THROW(fft(odd), Error);
}

TEST(Mfcc, SinePeaksInNearestFilter) {
  const auto cfg = MfccConfig::for_sample_rate(16000);
  const auto energies = mel_energies(sine(440, 1.0), cfg);
  const MelFilterbank bank(16000, cfg.fft_size, cfg.mel_filters);
  std::size_t nearest = 0;
  for (std::size_t m = 1; m < bank.filters(); ++m)
    if (std::fabs(bank.peak_hz(m) - 440) < std::fabs(bank.peak_hz(nearest) - 440)) nearest = m;
  for (std::size_t r = 0; r < energies.rows; ++r) {
    std::size_t best = 0;
    for (std::size_t m = 1; m < energies.cols; ++m)
      if (energies.at(r, m) > energies.at(r, best)) best = m;
    ASSERT_EQ(best, nearest) << "frame " << r;
  }
}

TEST(Mfcc, DctStageMatchesDirectOracle) {
  const auto cfg = MfccConfig::for_sample_rate(16000);
  const auto audio = noise(8000, 3);
  const auto energies = mel_energies(audio, cfg);
  const auto coeffs = mfcc(audio, cfg);
  for (std::size_t r = 0; r < energies.rows; ++r) {
    std::vector<double> logs;
    for (std::size_t m = 0; m < energies.cols; ++m) logs.push_back(std::log(energies.at(r, m) + cfg.log_floor));
    const auto expected = oracle::dct2(logs, cfg.coefficients);
    for (std::size_t k = 0; k < cfg.coefficients; ++k) ASSERT_NEAR(coeffs.at(r, k), expected[k], 1e-9);
  }
  const std::vector<double> x{1, 2, 3, 4, 5};
  const auto direct = dct2(x, 5);
  const auto expected = oracle::dct2(x, 5);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(direct[k], expected[k], 1e-12);
}

TEST(Mfcc, HopShiftProperty) {
  const auto cfg = MfccConfig::for_sample_rate(16000);
  const auto audio = noise(6000, 5);
  AudioBuffer shifted = audio;
  shifted.samples.insert(shifted.samples.begin(), cfg.hop, 0.0);
  const auto a = mfcc(audio, cfg), b = mfcc(shifted, cfg);
  ASSERT_EQ(b.rows, a.rows + 1);
  for (std::size_t r = 0; r < a.rows; ++r)
    for (std::size_t k = 0; k < a.cols; ++k) ASSERT_NEAR(b.at(r + 1, k), a.at(r, k), 1e-9);
}

TEST(Mfcc, SilenceHitsLogFloor) {
  AudioBuffer silent;
  silent.sample_rate = 16000;
  silent.samples.assign(1600, 0.0);
  const auto e = mel_energies(silent, MfccConfig{});
  for (double v : e.data) EXPECT_EQ(v, 0.0);
  const auto c = mfcc(silent, MfccConfig{});
  EXPECT_NEAR(c.at(0, 0), std::log(1e-10) * std::sqrt(40.0), 1e-9);
  for (std::size_t k = 1; k < c.cols; ++k) EXPECT_NEAR(c.at(0, k), 0.0, 1e-9);
}

TEST(Wav, EncodeDecodeRoundTrip) {
  const auto a = sine(1000, 0.05);
  const auto bytes = encode_wav_pcm16(a);
  const auto b = decode_wav(bytes);
  EXPECT_EQ(b.sample_rate, 16000.0);
  ASSERT_EQ(b.samples.size(), a.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) EXPECT_NEAR(a.samples[i], b.samples[i], 1.0 / 32768);
  std::vector<std::uint8_t> junk{'R', 'I', 'F', 'F', 0, 0};
  EXPECT_THROW(decode_wav(junk), Error);
}

TEST(Pose, StandardizeEndpointsAndIdempotence) {
  for (std::size_t frames : {2u, 7u, 150u, 300u}) {
    const auto p = random_pose(frames, 4, frames);
    const auto s = standardize_pose(p, 150);
    ASSERT_EQ(s.frames, 150u);
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(s.at(0, j, k), p.at(0, j, k));
        EXPECT_EQ(s.at(149, j, k), p.at(frames - 1, j, k));
      }
    EXPECT_EQ(standardize_pose(s, 150).coords, s.coords);
  }
  const auto p = random_pose(150, 3, 1);
  EXPECT_EQ(standardize_pose(p, 150).coords, p.coords);
}

TEST(Pose, StandardizeInterpolatesLinearly) {
  PoseSequence p;
  p.frames = 2;
  p.joints = 1;
  p.coords = {0, 0, 0, 3, 6, 9};
  const auto s = standardize_pose(p, 4);
  EXPECT_NEAR(s.at(1, 0, 0), 1.0, 1e-15);
  EXPECT_NEAR(s.at(2, 0, 1), 4.0, 1e-15);
  PoseSequence one = p;
  one.frames = 1;
  one.coords.resize(3);
  EXPECT_THROW(standardize_pose(one, 5), Error);
}

TEST(Pose, RampResamplesByHand) {
  PoseSequence ramp;
  ramp.frames = 11;
  ramp.joints = 1;
  for (int t = 0; t <= 10; ++t) ramp.coords.insert(ramp.coords.end(), {t / 10.0, 2.0, -1.0});
  const auto s = standardize_pose(ramp, 5);
  const double expected[] = {0, 0.25, 0.5, 0.75, 1.0};
  for (std::size_t t = 0; t < 5; ++t) {
    EXPECT_NEAR(s.at(t, 0, 0), expected[t], 1e-15);
    EXPECT_EQ(s.at(t, 0, 1), 2.0);
    EXPECT_EQ(s.at(t, 0, 2), -1.0);
  }
}

TEST(Pose, ZeroRotationIsIdentity) {
  const auto p = random_pose(4, 3, 12);
  EXPECT_EQ(rotate_pose(p, 0.0).coords, p.coords);
  const auto there = rotate_pose(p, 10.0, Axis::kZ, 1);
  const auto back = rotate_pose(there, -10.0, Axis::kZ, 1);
  for (std::size_t i = 0; i < p.coords.size(); ++i) EXPECT_NEAR(back.coords[i], p.coords[i], 1e-12);
}

TEST(Pose, RotationPreservesInterJointDistances) {
  const auto p = random_pose(20, 6, 9);
  for (Axis axis : {Axis::kX, Axis::kY, Axis::kZ})
    for (double degrees : {5.0, 10.0, -37.0}) {
      const auto r = rotate_pose(p, degrees, axis, 2);
      for (std::size_t t = 0; t < p.frames; ++t) {
        for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(r.at(t, 2, k), p.at(t, 2, k));
        for (std::size_t a = 0; a < p.joints; ++a)
          for (std::size_t b = a + 1; b < p.joints; ++b)
            ASSERT_NEAR(joint_distance(r, t, a, b), joint_distance(p, t, a, b), 1e-9);
      }
    }
}

TEST(Pose, RotationAboutYMovesPointsAsExpected) {
  PoseSequence p;
  p.frames = 1;
  p.joints = 2;
  p.coords = {0, 0, 0, 1, 0, 0};
  const auto r = rotate_pose(p, 90, Axis::kY, 0);
  EXPECT_NEAR(r.at(0, 1, 0), 0.0, 1e-15);
  EXPECT_NEAR(r.at(0, 1, 1), 0.0, 1e-15);
  EXPECT_NEAR(std::fabs(r.at(0, 1, 2)), 1.0, 1e-15);
  const auto back = rotate_pose(r, -90, Axis::kY, 0);
  for (std::size_t i = 0; i < p.coords.size(); ++i) EXPECT_NEAR(back.coords[i], p.coords[i], 1e-15);
}

TEST(Pose, CsvRoundTrip) {
  const auto p = random_pose(5, 3, 4);
  const auto text = write_pose_csv(p);
  const auto q = parse_pose_csv(text);
  EXPECT_EQ(q.frames, 5u);
  EXPECT_EQ(q.joints, 3u);
  EXPECT_EQ(q.coords, p.coords);
  EXPECT_THROW(parse_pose_csv("frame,joint_0_x,joint_0_y\n0,1,2\n"), Error);
  EXPECT_THROW(parse_pose_csv("joint_0_x,joint_0_y,joint_0_z\n1,2,abc\n"), Error);
}
