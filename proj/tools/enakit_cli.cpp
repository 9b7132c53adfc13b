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

// Command-line front end over the enakit C API.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "enakit/enakit.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string mode;
  std::string group_mode;
  std::optional<std::size_t> dims;
  std::vector<std::string> inputs;
  std::vector<std::string> sets;
};

std::string absolute(const std::string& p) { return fs::absolute(p).lexically_normal().string(); }

void log_to_stderr(const char* message, void*) { std::fprintf(stderr, "enakit: %s\n", message); }

// What --input means depends on the subcommand.
void apply_inputs(const std::string& command, const std::vector<std::string>& inputs, json& overrides) {
  if (inputs.empty()) return;
  if (command == "mfcc" || command == "pose") {
    json list = json::array();
    for (const auto& p : inputs) list.push_back(absolute(p));
    overrides[command == "mfcc" ? "audio_inputs" : "pose_inputs"] = list;
    overrides[command == "mfcc" ? "audio_dir" : "pose_dir"] = nullptr;
    return;
  }
  if (inputs.size() != 1) throw CLI::ValidationError("--input", "expects one corpus CSV for '" + command + "'");
  overrides["corpus"] = absolute(inputs.front());
}

json build_overrides(const std::string& command, const Options& o) {
  json overrides = json::object();
  if (o.seed) overrides["mc"]["seed"] = *o.seed;
  if (!o.out.empty()) overrides["output"] = absolute(o.out);
  if (!o.mode.empty()) overrides["accumulation"] = o.mode;
  if (!o.group_mode.empty()) overrides["group_mode"] = o.group_mode;
  if (o.dims) overrides["dims"] = *o.dims;
  apply_inputs(command, o.inputs, overrides);
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--set", "expects KEY=JSON, got '" + kv + "'");
    json value;
    try {
      value = json::parse(kv.substr(eq + 1));
    } catch (const json::exception&) {
      value = kv.substr(eq + 1);
    }
    overrides[json::json_pointer("/" + kv.substr(0, eq))] = value;
  }
  return overrides;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"enakit: epistemic network analysis toolkit"};
  app.set_version_flag("--version", std::string("enakit ") + enakit_version());
  app.require_subcommand(1);

  Options o;
  const std::pair<const char*, const char*> commands[] = {
      {"ingest", "Parse the corpus CSV and segment stanzas"},
      {"code", "Apply the regex classifier to the ingested corpus"},
      {"irr", "Score the classifier against the handset (kappa, rho)"},
      {"model", "Accumulate networks, fit the projection and node layout"},
      {"compare", "Group and subtracted networks, per-dimension statistics"},
      {"plot", "Render network and comparison SVGs"},
      {"mfcc", "Extract MFCC features from WAV files"},
      {"pose", "Standardize and rotate pose sequences"},
      {"run", "Run every stage into a fresh output directory"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config, "Config JSON file")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "Seed for every random draw");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--mode", o.mode, "Co-occurrence mode: stanza-union or per-line");
    sub->add_option("--group-mode", o.group_mode, "Group network mode: sum or mean");
    sub->add_option("--dims", o.dims, "Retained dimensions")->check(CLI::PositiveNumber);
    sub->add_option("--input", o.inputs, name == std::string("mfcc") || name == std::string("pose")
                                             ? "Input files (replace the configured set)"
                                             : "Corpus CSV");
    sub->add_option("--set", o.sets, "Config override KEY=JSON, KEY may be a path like mc/replicates");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::string overrides;
  try {
    overrides = build_overrides(command, o).dump();
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "enakit: invalid override: %s\n", e.what());
    return 2;
  }

  enakit_set_log_callback(log_to_stderr, nullptr);
  const std::string config = o.config.empty() ? std::string() : absolute(o.config);
  const enakit_status status =
      enakit_run(command.c_str(), config.empty() ? nullptr : config.c_str(), overrides.c_str());
  if (status != ENAKIT_OK) {
    std::fprintf(stderr, "enakit %s: %s: %s\n", command.c_str(), enakit_status_name(status),
                 enakit_last_error());
    return 1;
  }
  return 0;
}
