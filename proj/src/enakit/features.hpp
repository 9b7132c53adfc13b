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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace enakit::features {

struct AudioBuffer {
  std::vector<double> samples;  // in [-1, 1]
  double sample_rate = 0.0;
};

// 16-bit PCM RIFF/WAVE. Multi-channel input is averaged to mono; samples are
// scaled by 1/32768.
AudioBuffer decode_wav(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_wav_pcm16(const AudioBuffer& audio);

struct MfccConfig {
  std::size_t frame_length = 400;
  std::size_t hop = 160;
  std::size_t fft_size = 512;
  std::size_t mel_filters = 40;
  std::size_t coefficients = 40;
  double log_floor = 1e-10;

  // 25 ms frames, 10 ms hop, FFT size the next power of two.
  static MfccConfig for_sample_rate(double sample_rate);
  void validate() const;
};

struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// In-place iterative radix-2 FFT; size must be a power of two.
void fft(std::vector<std::complex<double>>& values);

std::vector<double> hamming_window(std::size_t length);

// |X_k|^2 for k = 0..fft_size/2 of the zero-padded frame.
std::vector<double> power_spectrum(std::span<const double> frame, std::size_t fft_size);

// Triangular filters spaced evenly on the mel scale between 0 Hz and Nyquist.
class MelFilterbank {
 public:
  MelFilterbank(double sample_rate, std::size_t fft_size, std::size_t filters);

  std::size_t filters() const noexcept { return peaks_hz_.size(); }
  std::size_t bins() const noexcept { return bins_; }
  double weight(std::size_t filter, std::size_t bin) const { return weights_[filter * bins_ + bin]; }
  double peak_hz(std::size_t filter) const { return peaks_hz_[filter]; }
  double bin_hz(std::size_t bin) const { return bin * sample_rate_ / static_cast<double>(fft_size_); }

  std::vector<double> apply(std::span<const double> power) const;

 private:
  double sample_rate_;
  std::size_t fft_size_;
  std::size_t bins_;
  std::vector<double> peaks_hz_;
  std::vector<double> weights_;
};

// Orthonormal DCT-II, first `count` outputs.
std::vector<double> dct2(std::span<const double> input, std::size_t count);

std::size_t frame_count(std::size_t samples, const MfccConfig& config);

// Mel filterbank energies before the log, frames x filters.
FeatureMatrix mel_energies(const AudioBuffer& audio, const MfccConfig& config);

// frames x coefficients.
FeatureMatrix mfcc(const AudioBuffer& audio, const MfccConfig& config);

std::string feature_matrix_csv(const FeatureMatrix& m, std::string_view column_prefix);

struct PoseSequence {
  std::size_t frames = 0;
  std::size_t joints = 0;
  std::vector<double> coords;  // frames x joints x 3

  double at(std::size_t t, std::size_t j, std::size_t axis) const { return coords[(t * joints + j) * 3 + axis]; }
  double& at(std::size_t t, std::size_t j, std::size_t axis) { return coords[(t * joints + j) * 3 + axis]; }
};

// One row per frame with columns joint_<k>_x, joint_<k>_y, joint_<k>_z.
PoseSequence parse_pose_csv(std::string_view text);
std::string write_pose_csv(const PoseSequence& pose);

// Linear resampling onto `target_len` evenly spaced instants spanning the
// first to the last frame.
PoseSequence standardize_pose(const PoseSequence& pose, std::size_t target_len = 150);

enum class Axis { kX, kY, kZ };
Axis parse_axis(std::string_view name);

// Rotates every frame about `axis` through that frame's root joint.
PoseSequence rotate_pose(const PoseSequence& pose, double degrees, Axis axis = Axis::kY,
                         std::size_t root_joint = 0);

}  // namespace enakit::features
