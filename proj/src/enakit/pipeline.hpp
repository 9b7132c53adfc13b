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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "enakit/accumulation.hpp"
#include "enakit/autocoder.hpp"
#include "enakit/corpus.hpp"
#include "enakit/features.hpp"
#include "enakit/networks.hpp"
#include "enakit/projection.hpp"
#include "enakit/render.hpp"
#include "json.hpp"

namespace enakit::pipeline {

namespace fs = std::filesystem;

struct HandsetConfig {
  fs::path csv;
  std::string text_column = "text";
  // code id -> column holding the human rating
  std::vector<std::pair<std::string, std::string>> codes;
  double threshold_kappa = 0.65;
};

struct PoseOptions {
  std::size_t target_len = 150;
  std::vector<double> rotations{5.0, 10.0};
  features::Axis axis = features::Axis::kY;
  std::size_t root_joint = 0;
};

struct MfccOptions {
  double frame_ms = 25.0;
  double hop_ms = 10.0;
  std::size_t fft_size = 0;  // 0: next power of two above the frame
  std::size_t mel_filters = 40;
  std::size_t coefficients = 40;
  double log_floor = 1e-10;

  features::MfccConfig for_sample_rate(double sample_rate) const;
};

struct PipelineConfig {
  nlohmann::json effective;  // merged config document
  std::string config_hash;   // FNV-1a of `effective` without "output"

  std::optional<fs::path> corpus;
  std::optional<fs::path> codebook;
  std::optional<fs::path> classifier;
  CorpusSchema schema;
  StanzaStrategy segmentation = StanzaStrategy::kExplicitColumn;
  CooccurrenceMode accumulation = CooccurrenceMode::kStanzaUnion;
  GroupMode group_mode = GroupMode::kMeanOfNormalized;
  ModelOptions model;
  MonteCarloSettings mc{10000, 0};
  std::optional<HandsetConfig> handset;
  std::vector<std::string> compare;
  std::vector<fs::path> audio_inputs;
  std::vector<fs::path> pose_inputs;
  MfccOptions mfcc;
  PoseOptions pose;
  render::PlotStyle style;
  fs::path output = "enakit-out";
};

// Reads the config file (if any) and applies `overrides` as a JSON merge
// patch. Relative paths in the file resolve against its directory; relative
// paths in overrides resolve against the working directory. Directory
// entries (audio_dir, pose_dir) expand to their sorted .wav / .csv files.
PipelineConfig load_config(const std::optional<fs::path>& config_path, const nlohmann::json& overrides);

using LogSink = std::function<void(std::string_view)>;

enum class Stage { kIngest, kCode, kIrr, kModel, kCompare, kPlot, kMfcc, kPose };

std::optional<Stage> parse_stage(std::string_view name);
const char* stage_name(Stage stage);

// Runs one stage reading earlier artifacts from and writing its own into
// `out_dir`. Each file is written to a temporary name and renamed.
void run_stage(Stage stage, const PipelineConfig& config, const fs::path& out_dir, const LogSink& log);

// All stages in order, staged in a sibling directory and moved into
// config.output only on success. On failure nothing is left behind.
void run_pipeline(const PipelineConfig& config, const LogSink& log);

// Entry point shared by the C API and the CLI: `command` is a stage name or
// "run".
void run_command(std::string_view command, const std::optional<fs::path>& config_path,
                 const nlohmann::json& overrides, const LogSink& log);

std::string fnv1a_hex(std::string_view bytes);

}  // namespace enakit::pipeline
