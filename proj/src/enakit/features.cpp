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

#include "enakit/features.hpp"

#include <algorithm>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>

#include "enakit/csv.hpp"
#include "enakit/error.hpp"

namespace enakit::features {

namespace {

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | static_cast<std::uint32_t>(b[at + 1]) << 8 |
         static_cast<std::uint32_t>(b[at + 2]) << 16 | static_cast<std::uint32_t>(b[at + 3]) << 24;
}

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | b[at + 1] << 8);
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::equal(tag, tag + 4, b.begin() + static_cast<std::ptrdiff_t>(at));
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

bool is_power_of_two(std::size_t n) { return n && !(n & (n - 1)); }

}  // namespace

AudioBuffer decode_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE"))
    fail(ErrorCode::kValue, "wav: not a RIFF/WAVE file");
  std::uint16_t channels = 0, bits = 0, format = 0;
  std::uint32_t rate = 0;
  std::span<const std::uint8_t> data;
  bool have_fmt = false, have_data = false;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t size = read_u32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) fail(ErrorCode::kValue, "wav: truncated chunk");
    if (tag_is(bytes, pos, "fmt ")) {
      if (size < 16) fail(ErrorCode::kValue, "wav: short fmt chunk");
      format = read_u16(bytes, body);
      channels = read_u16(bytes, body + 2);
      rate = read_u32(bytes, body + 4);
      bits = read_u16(bytes, body + 14);
      if (format == 0xFFFE && size >= 26) format = read_u16(bytes, body + 24);
      have_fmt = true;
    } else if (tag_is(bytes, pos, "data")) {
      data = bytes.subspan(body, size);
      have_data = true;
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt || !have_data) fail(ErrorCode::kValue, "wav: missing fmt or data chunk");
  if (format != 1 || bits != 16) fail(ErrorCode::kValue, "wav: only 16-bit PCM is supported");
  if (channels == 0 || rate == 0) fail(ErrorCode::kValue, "wav: invalid channel count or sample rate");

  const std::size_t frame_bytes = 2u * channels;
  const std::size_t frames = data.size() / frame_bytes;
  if (frames == 0) fail(ErrorCode::kEmptyInput, "wav: no samples");
  AudioBuffer audio;
  audio.sample_rate = rate;
  audio.samples.resize(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    double acc = 0.0;
    for (std::uint16_t c = 0; c < channels; ++c)
      acc += static_cast<std::int16_t>(read_u16(data, f * frame_bytes + 2u * c)) / 32768.0;
    audio.samples[f] = acc / channels;
  }
  return audio;
}

std::vector<std::uint8_t> encode_wav_pcm16(const AudioBuffer& audio) {
  const auto data_bytes = static_cast<std::uint32_t>(audio.samples.size() * 2);
  const auto rate = static_cast<std::uint32_t>(audio.sample_rate);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  for (char c : std::string("RIFF")) out.push_back(static_cast<std::uint8_t>(c));
  put_u32(out, 36 + data_bytes);
  for (char c : std::string("WAVEfmt ")) out.push_back(static_cast<std::uint8_t>(c));
  put_u32(out, 16);
  put_u16(out, 1);
  put_u16(out, 1);
  put_u32(out, rate);
  put_u32(out, rate * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  for (char c : std::string("data")) out.push_back(static_cast<std::uint8_t>(c));
  put_u32(out, data_bytes);
  for (double s : audio.samples) {
    const double scaled = std::round(std::clamp(s, -1.0, 1.0) * 32768.0);
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0))));
  }
  return out;
}

MfccConfig MfccConfig::for_sample_rate(double sample_rate) {
  if (!(sample_rate > 0.0)) fail(ErrorCode::kParameter, "mfcc: sample rate must be positive");
  MfccConfig config;
  config.frame_length = static_cast<std::size_t>(std::lround(0.025 * sample_rate));
  config.hop = static_cast<std::size_t>(std::lround(0.010 * sample_rate));
  config.fft_size = 1;
  while (config.fft_size < config.frame_length) config.fft_size <<= 1;
  return config;
}

void MfccConfig::validate() const {
  if (frame_length == 0 || hop == 0) fail(ErrorCode::kParameter, "mfcc: frame length and hop must be positive");
  if (hop > frame_length) fail(ErrorCode::kParameter, "mfcc: hop must not exceed the frame length");
  if (!is_power_of_two(fft_size) || fft_size < frame_length)
    fail(ErrorCode::kParameter, "mfcc: fft size must be a power of two no smaller than the frame");
  if (mel_filters == 0 || coefficients == 0 || coefficients > mel_filters)
    fail(ErrorCode::kParameter, "mfcc: need 1 <= coefficients <= mel filters");
  if (!(log_floor > 0.0)) fail(ErrorCode::kParameter, "mfcc: log floor must be positive");
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

void fft(std::vector<std::complex<double>>& values) {
  const std::size_t n = values.size();
  if (!is_power_of_two(n)) fail(ErrorCode::kInvalidArgument, "fft: size must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(values[i], values[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> w(std::cos(angle * k), std::sin(angle * k));
        const auto even = values[start + k];
        const auto odd = values[start + k + len / 2] * w;
        values[start + k] = even + odd;
        values[start + k + len / 2] = even - odd;
      }
    }
  }
}

std::vector<double> hamming_window(std::size_t length) {
  std::vector<double> w(length, 1.0);
  if (length < 2) return w;
  for (std::size_t i = 0; i < length; ++i)
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / static_cast<double>(length - 1));
  return w;
}

std::vector<double> power_spectrum(std::span<const double> frame, std::size_t fft_size) {
  if (frame.size() > fft_size) fail(ErrorCode::kInvalidArgument, "power_spectrum: frame longer than fft");
  std::vector<std::complex<double>> buf(fft_size);
  std::copy(frame.begin(), frame.end(), buf.begin());
  fft(buf);
  std::vector<double> power(fft_size / 2 + 1);
  for (std::size_t k = 0; k < power.size(); ++k) power[k] = std::norm(buf[k]);
  return power;
}

MelFilterbank::MelFilterbank(double sample_rate, std::size_t fft_size, std::size_t filters)
    : sample_rate_(sample_rate), fft_size_(fft_size), bins_(fft_size / 2 + 1) {
  if (!(sample_rate > 0.0) || filters == 0 || !is_power_of_two(fft_size))
    fail(ErrorCode::kParameter, "mel filterbank: invalid configuration");
  const double top = hz_to_mel(sample_rate / 2.0);
  std::vector<double> edges(filters + 2);
  for (std::size_t i = 0; i < edges.size(); ++i)
    edges[i] = mel_to_hz(top * static_cast<double>(i) / static_cast<double>(filters + 1));
  peaks_hz_.assign(edges.begin() + 1, edges.end() - 1);
  weights_.assign(filters * bins_, 0.0);
  for (std::size_t m = 0; m < filters; ++m) {
    const double lo = edges[m], peak = edges[m + 1], hi = edges[m + 2];
    for (std::size_t b = 0; b < bins_; ++b) {
      const double f = bin_hz(b);
      double w = 0.0;
      if (f > lo && f < peak) w = (f - lo) / (peak - lo);
      else if (f >= peak && f < hi) w = (hi - f) / (hi - peak);
      weights_[m * bins_ + b] = w;
    }
  }
}

std::vector<double> MelFilterbank::apply(std::span<const double> power) const {
  if (power.size() != bins_) fail(ErrorCode::kInvalidArgument, "mel filterbank: spectrum size mismatch");
  std::vector<double> out(filters(), 0.0);
  for (std::size_t m = 0; m < out.size(); ++m) {
    double acc = 0.0;
    for (std::size_t b = 0; b < bins_; ++b) acc += weights_[m * bins_ + b] * power[b];
    out[m] = acc;
  }
  return out;
}

std::vector<double> dct2(std::span<const double> input, std::size_t count) {
  const std::size_t n = input.size();
  if (n == 0 || count > n) fail(ErrorCode::kInvalidArgument, "dct2: invalid size");
  std::vector<double> out(count);
  const double scale0 = std::sqrt(1.0 / static_cast<double>(n));
  const double scale = std::sqrt(2.0 / static_cast<double>(n));
  for (std::size_t k = 0; k < count; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      acc += input[i] * std::cos(std::numbers::pi * static_cast<double>(k) * (i + 0.5) / static_cast<double>(n));
    out[k] = (k == 0 ? scale0 : scale) * acc;
  }
  return out;
}

std::size_t frame_count(std::size_t samples, const MfccConfig& config) {
  if (samples < config.frame_length) return 0;
  return (samples - config.frame_length) / config.hop + 1;
}

FeatureMatrix mel_energies(const AudioBuffer& audio, const MfccConfig& config) {
  config.validate();
  if (!(audio.sample_rate > 0.0)) fail(ErrorCode::kParameter, "mfcc: sample rate must be positive");
  const std::size_t frames = frame_count(audio.samples.size(), config);
  if (frames == 0) fail(ErrorCode::kInvalidArgument, "mfcc: audio is shorter than one frame");

  const MelFilterbank bank(audio.sample_rate, config.fft_size, config.mel_filters);
  const auto window = hamming_window(config.frame_length);
  FeatureMatrix out{frames, config.mel_filters, std::vector<double>(frames * config.mel_filters)};
  std::vector<double> frame(config.frame_length);
  for (std::size_t f = 0; f < frames; ++f) {
    const std::size_t start = f * config.hop;
    for (std::size_t i = 0; i < config.frame_length; ++i) frame[i] = audio.samples[start + i] * window[i];
    const auto energies = bank.apply(power_spectrum(frame, config.fft_size));
    std::copy(energies.begin(), energies.end(), out.data.begin() + static_cast<std::ptrdiff_t>(f * out.cols));
  }
  return out;
}

FeatureMatrix mfcc(const AudioBuffer& audio, const MfccConfig& config) {
  const auto energies = mel_energies(audio, config);
  FeatureMatrix out{energies.rows, config.coefficients, std::vector<double>(energies.rows * config.coefficients)};
  std::vector<double> logs(energies.cols);
  for (std::size_t f = 0; f < energies.rows; ++f) {
    for (std::size_t m = 0; m < energies.cols; ++m) logs[m] = std::log(energies.at(f, m) + config.log_floor);
    const auto c = dct2(logs, config.coefficients);
    std::copy(c.begin(), c.end(), out.data.begin() + static_cast<std::ptrdiff_t>(f * out.cols));
  }
  return out;
}

std::string feature_matrix_csv(const FeatureMatrix& m, std::string_view column_prefix) {
  std::string out;
  csv::Row header;
  for (std::size_t c = 0; c < m.cols; ++c) header.push_back(std::string(column_prefix) + std::to_string(c));
  csv::append_row(out, header);
  csv::Row row(m.cols);
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) row[c] = format_number(m.at(r, c));
    csv::append_row(out, row);
  }
  return out;
}

PoseSequence parse_pose_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  if (rows.empty()) fail(ErrorCode::kEmptyInput, "pose: empty file");
  const auto& header = rows.front();
  // column index by (joint, axis)
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> columns;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto& name = header[c];
    if (name.rfind("joint_", 0) != 0 || name.size() < 9) continue;
    const char axis = name.back();
    if (name[name.size() - 2] != '_' || (axis != 'x' && axis != 'y' && axis != 'z')) continue;
    const std::string index = name.substr(6, name.size() - 8);
    if (index.empty() || !std::all_of(index.begin(), index.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      continue;
    columns[{std::stoul(index), static_cast<std::size_t>(axis - 'x')}] = c;
  }
  if (columns.empty()) fail(ErrorCode::kSchema, "pose: no joint_<k>_<axis> columns");
  const std::size_t joints = columns.rbegin()->first.first + 1;
  if (columns.size() != joints * 3) fail(ErrorCode::kSchema, "pose: joint columns are incomplete");

  PoseSequence pose;
  pose.joints = joints;
  pose.frames = rows.size() - 1;
  pose.coords.resize(pose.frames * joints * 3);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size())
      fail(ErrorCode::kValue, "pose: row " + std::to_string(r) + " has the wrong number of fields");
    for (const auto& [key, col] : columns) {
      const std::string& cell = rows[r][col];
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v))
        fail(ErrorCode::kValue, "pose: row " + std::to_string(r) + " has a non-numeric coordinate");
      pose.at(r - 1, key.first, key.second) = v;
    }
  }
  return pose;
}

std::string write_pose_csv(const PoseSequence& pose) {
  std::string out;
  csv::Row header;
  for (std::size_t j = 0; j < pose.joints; ++j)
    for (const char* axis : {"x", "y", "z"}) header.push_back("joint_" + std::to_string(j) + "_" + axis);
  csv::append_row(out, header);
  csv::Row row(header.size());
  for (std::size_t t = 0; t < pose.frames; ++t) {
    for (std::size_t c = 0; c < row.size(); ++c) row[c] = format_number(pose.coords[t * row.size() + c]);
    csv::append_row(out, row);
  }
  return out;
}

PoseSequence standardize_pose(const PoseSequence& pose, std::size_t target_len) {
  if (pose.frames < 2) fail(ErrorCode::kInvalidArgument, "standardize_pose: need at least 2 frames");
  if (target_len < 2) fail(ErrorCode::kParameter, "standardize_pose: target length must be at least 2");
  PoseSequence out;
  out.frames = target_len;
  out.joints = pose.joints;
  out.coords.resize(target_len * pose.joints * 3);
  const std::size_t last = pose.frames - 1;
  const std::size_t stride = pose.joints * 3;
  for (std::size_t k = 0; k < target_len; ++k) {
    const double position = static_cast<double>(k * last) / static_cast<double>(target_len - 1);
    auto lower = static_cast<std::size_t>(std::floor(position));
    double frac = position - static_cast<double>(lower);
    if (k == target_len - 1 || lower >= last) {
      lower = last;
      frac = 0.0;
    }
    for (std::size_t c = 0; c < stride; ++c) {
      const double a = pose.coords[lower * stride + c];
      out.coords[k * stride + c] = frac == 0.0 ? a : a + frac * (pose.coords[(lower + 1) * stride + c] - a);
    }
  }
  return out;
}

Axis parse_axis(std::string_view name) {
  if (name == "x") return Axis::kX;
  if (name == "y") return Axis::kY;
  if (name == "z") return Axis::kZ;
  fail(ErrorCode::kConfiguration, "unknown rotation axis '" + std::string(name) + "'");
}

PoseSequence rotate_pose(const PoseSequence& pose, double degrees, Axis axis, std::size_t root_joint) {
  if (pose.joints == 0) return pose;
  if (root_joint >= pose.joints) fail(ErrorCode::kParameter, "rotate_pose: root joint out of range");
  // exact identity; the root round trip would otherwise perturb the last bit
  if (degrees == 0.0) return pose;
  const double theta = degrees * std::numbers::pi / 180.0;
  const double c = std::cos(theta), s = std::sin(theta);
  // (u, v) is the rotated plane, right-handed about the axis.
  const auto [u, v] = axis == Axis::kX   ? std::pair<std::size_t, std::size_t>{1, 2}
                      : axis == Axis::kY ? std::pair<std::size_t, std::size_t>{2, 0}
                                         : std::pair<std::size_t, std::size_t>{0, 1};
  PoseSequence out = pose;
  for (std::size_t t = 0; t < pose.frames; ++t) {
    const double ou = pose.at(t, root_joint, u), ov = pose.at(t, root_joint, v);
    for (std::size_t j = 0; j < pose.joints; ++j) {
      const double du = pose.at(t, j, u) - ou, dv = pose.at(t, j, v) - ov;
      out.at(t, j, u) = ou + c * du - s * dv;
      out.at(t, j, v) = ov + s * du + c * dv;
    }
  }
  return out;
}

}  // namespace enakit::features
