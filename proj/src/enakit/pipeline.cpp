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

#include "enakit/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "enakit/csv.hpp"
#include "enakit/error.hpp"
#include "enakit/serialize.hpp"
#include "enakit/stats.hpp"

namespace enakit::pipeline {

using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "enakit 0.1.0";

const std::set<std::string> kConfigKeys{
    "corpus",  "codebook", "classifier", "schema",       "segmentation", "accumulation", "group_mode",
    "dims",    "centering", "mc",        "handset",      "compare",      "audio_dir",    "audio_inputs",
    "pose_dir", "pose_inputs", "mfcc",   "pose",         "style",        "output"};

std::string read_file(const fs::path& path, const std::string& what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, what + ": cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) fail(ErrorCode::kIo, "cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kIo, "cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail(ErrorCode::kIo, "write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::kIo, "cannot rename '" + tmp.string() + "': " + ec.message());
}

void write_json(const fs::path& path, const json& doc) { write_file_atomic(path, doc.dump(2) + "\n"); }

json read_artifact(const fs::path& out_dir, const char* name, const char* producer) {
  const fs::path path = out_dir / name;
  if (!fs::exists(path))
    fail(ErrorCode::kIo, std::string("missing artifact '") + path.string() + "'; run '" + producer + "' first");
  try {
    return json::parse(read_file(path, name));
  } catch (const json::exception& e) {
    fail(ErrorCode::kSchema, std::string("artifact '") + name + "' is not valid JSON: " + e.what());
  }
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfiguration, what + ": invalid JSON: " + e.what());
  }
}

fs::path resolve_path(const std::string& value, const fs::path& base) {
  fs::path p(value);
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

// Rewrites relative path values in a config fragment against `base`.
json resolve_paths(json doc, const fs::path& base) {
  if (!doc.is_object()) return doc;
  for (const char* key : {"corpus", "codebook", "classifier", "audio_dir", "pose_dir", "output"})
    if (doc.contains(key) && doc[key].is_string()) doc[key] = resolve_path(doc[key].get<std::string>(), base).string();
  for (const char* key : {"schema", "style"})
    if (doc.contains(key) && doc[key].is_string()) doc[key] = resolve_path(doc[key].get<std::string>(), base).string();
  for (const char* key : {"audio_inputs", "pose_inputs"})
    if (doc.contains(key) && doc[key].is_array())
      for (auto& entry : doc[key])
        if (entry.is_string()) entry = resolve_path(entry.get<std::string>(), base).string();
  if (doc.contains("handset") && doc["handset"].is_object() && doc["handset"].contains("csv") &&
      doc["handset"]["csv"].is_string())
    doc["handset"]["csv"] = resolve_path(doc["handset"]["csv"].get<std::string>(), base).string();
  return doc;
}

std::vector<fs::path> list_files(const fs::path& dir, const std::string& extension) {
  if (!fs::is_directory(dir)) fail(ErrorCode::kIo, "input directory '" + dir.string() + "' does not exist");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == extension) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

json object_or_file(const json& value, const char* what) {
  if (value.is_string()) return parse_json_text(read_file(value.get<std::string>(), what), what);
  if (!value.is_object()) fail(ErrorCode::kConfiguration, std::string(what) + " must be an object or a file path");
  return value;
}

std::string safe_name(const std::string& label) {
  std::string out;
  for (char c : label) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  return out.empty() ? "_" : out;
}

std::string degrees_label(double degrees) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", degrees);
  return buf;
}

json provenance(const PipelineConfig& config) {
  return {{"config_hash", config.config_hash}, {"seed", config.mc.seed}, {"tool", kToolVersion}};
}

std::uint8_t parse_rating(const std::string& cell, std::size_t row, const std::string& column) {
  if (cell == "0") return 0;
  if (cell == "1") return 1;
  fail(ErrorCode::kValue, "handset row " + std::to_string(row) + ": column '" + column + "' has value '" + cell +
                              "', expected 0 or 1");
}

const Codebook& require_codebook_for(std::optional<Codebook>& cache, const PipelineConfig& config) {
  if (!cache) {
    if (!config.codebook) fail(ErrorCode::kConfiguration, "config does not name a codebook");
    cache = parse_codebook_json(read_file(*config.codebook, "codebook"));
  }
  return *cache;
}

// --- stages --------------------------------------------------------------

void stage_ingest(const PipelineConfig& config, const fs::path& out, const LogSink&) {
  if (!config.corpus) fail(ErrorCode::kConfiguration, "config does not name a corpus CSV");
  std::optional<Codebook> codebook;
  require_codebook_for(codebook, config);
  const auto csv_text = read_file(*config.corpus, "corpus");
  const Corpus parsed = parse_corpus(csv_text, config.schema, *codebook);
  const Corpus segmented = segment_stanzas(parsed, config.segmentation);
  json doc = io::corpus_to_json(segmented);
  doc["provenance"] = provenance(config);
  doc["segmentation"] = stanza_strategy_name(config.segmentation);
  write_json(out / "corpus.json", doc);
}

void stage_code(const PipelineConfig& config, const fs::path& out, const LogSink& log) {
  const Corpus corpus = io::corpus_from_json(read_artifact(out, "corpus.json", "ingest"));
  Corpus coded = corpus;
  std::vector<std::string> coded_ids;
  if (config.classifier) {
    const auto classifier = parse_classifier_json(read_file(*config.classifier, "classifier"));
    coded = apply_classifier(classifier, corpus);
    coded_ids = classifier.code_ids();
  } else if (log) {
    log("code: no classifier configured; keeping the ingested codes");
  }
  json doc = io::corpus_to_json(coded);
  doc["provenance"] = provenance(config);
  doc["classifier_codes"] = coded_ids;
  write_json(out / "coded_corpus.json", doc);
}

void stage_irr(const PipelineConfig& config, const fs::path& out, const LogSink& log) {
  json doc{{"provenance", provenance(config)}, {"reports", json::array()}};
  if (!config.handset || !config.classifier) {
    if (log) log("irr: no handset or classifier configured; writing an empty report");
    doc["handset_size"] = 0;
    write_json(out / "irr.json", doc);
    return;
  }
  const auto& handset = *config.handset;
  const auto classifier = parse_classifier_json(read_file(*config.classifier, "classifier"));
  const auto rows = csv::parse(read_file(handset.csv, "handset"));
  if (rows.size() < 2) fail(ErrorCode::kEmptyInput, "handset '" + handset.csv.string() + "' has no data rows");
  const auto& header = rows.front();
  auto column = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) fail(ErrorCode::kSchema, "handset: missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t text_col = column(handset.text_column);
  std::vector<std::string> code_ids;
  std::vector<std::size_t> human_cols;
  for (const auto& [code, col] : handset.codes) {
    code_ids.push_back(code);
    human_cols.push_back(column(col));
  }
  std::vector<std::vector<std::uint8_t>> human(code_ids.size()), machine(code_ids.size());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size())
      fail(ErrorCode::kValue, "handset row " + std::to_string(r) + " has the wrong number of fields");
    const auto auto_codes = classify_text(classifier, rows[r][text_col], code_ids);
    for (std::size_t c = 0; c < code_ids.size(); ++c) {
      human[c].push_back(parse_rating(rows[r][human_cols[c]], r, header[human_cols[c]]));
      machine[c].push_back(auto_codes[c]);
    }
  }
  for (std::size_t c = 0; c < code_ids.size(); ++c)
    doc["reports"].push_back(io::irr_report_to_json(
        irr_report(code_ids[c], human[c], machine[c], handset.threshold_kappa, config.mc)));
  doc["handset_size"] = rows.size() - 1;
  write_json(out / "irr.json", doc);
}

std::vector<UnitNetwork> unit_networks(const json& networks_doc, const Codebook& codebook) {
  std::vector<UnitNetwork> units;
  for (const auto& u : networks_doc.at("units"))
    units.push_back(make_unit_network(io::cumulative_from_json(u, codebook.size())));
  return units;
}

void stage_model(const PipelineConfig& config, const fs::path& out, const LogSink& log) {
  const Corpus corpus = io::corpus_from_json(read_artifact(out, "coded_corpus.json", "code"));
  const auto& codebook = corpus.codebook();
  const auto cumulative = accumulate_corpus(corpus, config.accumulation);

  json units = json::array();
  for (const auto& net : cumulative) units.push_back(io::cumulative_to_json(net));
  write_json(out / "networks.json", {{"provenance", provenance(config)},
                                     {"accumulation", cooccurrence_mode_name(config.accumulation)},
                                     {"codebook", io::codebook_to_json(codebook)},
                                     {"units", units}});

  if (cumulative.size() < 2) {
    if (log) log("model: skipped, the corpus has " + std::to_string(cumulative.size()) + " unit(s) and a model needs 2");
    return;
  }
  std::vector<NormalizedVector> normalized;
  std::vector<UnitKey> keys;
  for (const auto& net : cumulative) {
    normalized.push_back(spherical_normalize(vectorize(net)));
    keys.push_back(net.unit);
  }
  ModelFit fit = fit_model(normalized, keys, config.model);
  const NodeLayout layout = optimize_node_positions(fit.scores, normalized, &fit.warnings);
  if (log)
    for (const auto& w : fit.warnings) log("model: " + w);
  json doc = io::model_to_json(fit, layout, codebook);
  doc["provenance"] = provenance(config);
  write_json(out / "model.json", doc);
}

void stage_compare(const PipelineConfig& config, const fs::path& out, const LogSink& log) {
  const json networks_doc = read_artifact(out, "networks.json", "model");
  const Codebook codebook = io::codebook_from_json(networks_doc.at("codebook"));
  if (!fs::exists(out / "model.json")) {
    if (log) log("compare: skipped, no model was fitted");
    return;
  }
  const ModelFit fit = io::model_from_json(read_artifact(out, "model.json", "model"));
  const auto units = unit_networks(networks_doc, codebook);

  std::vector<std::string> conditions;
  for (const auto& u : units)
    if (std::find(conditions.begin(), conditions.end(), u.cumulative.unit.condition) == conditions.end())
      conditions.push_back(u.cumulative.unit.condition);

  json groups = json::array();
  std::map<std::string, GroupNetwork> by_condition;
  for (const auto& condition : conditions) {
    std::vector<UnitNetwork> members;
    for (const auto& u : units)
      if (u.cumulative.unit.condition == condition) members.push_back(u);
    auto group = group_network(members, condition, config.group_mode);
    groups.push_back(io::group_to_json(group, codebook));
    by_condition.emplace(condition, std::move(group));
  }

  std::vector<std::string> pair = config.compare;
  if (pair.empty()) {
    if (conditions.size() < 2) {
      if (log) log("compare: only one condition present; no subtracted network or statistics");
      write_json(out / "groups.json", {{"provenance", provenance(config)},
                                       {"mode", group_mode_name(config.group_mode)},
                                       {"groups", groups},
                                       {"subtracted", nullptr}});
      return;
    }
    pair = {conditions[0], conditions[1]};
  }
  for (const auto& c : pair)
    if (!by_condition.count(c)) fail(ErrorCode::kConfiguration, "compare: condition '" + c + "' has no units");

  const auto subtracted = subtract_networks(by_condition.at(pair[0]), by_condition.at(pair[1]));
  write_json(out / "groups.json", {{"provenance", provenance(config)},
                                   {"mode", group_mode_name(config.group_mode)},
                                   {"groups", groups},
                                   {"subtracted", io::subtracted_to_json(subtracted, codebook)}});

  json reports = json::array();
  const std::size_t dims = fit.space.dims();
  for (std::size_t d = 0; d < dims; ++d) {
    std::vector<double> a, b;
    for (const auto& s : fit.scores) {
      if (s.unit.condition == pair[0]) a.push_back(s.coords[d]);
      if (s.unit.condition == pair[1]) b.push_back(s.coords[d]);
    }
    if (a.size() < 2 || b.size() < 2) {
      if (log) log("compare: statistics need at least 2 units per condition; skipped");
      return;
    }
    reports.push_back(io::stat_report_to_json(
        stats::compare_groups("SVD" + std::to_string(d + 1), pair[0], a, pair[1], b)));
  }
  write_json(out / "stats.json", {{"provenance", provenance(config)}, {"reports", reports}});
}

void stage_plot(const PipelineConfig& config, const fs::path& out, const LogSink& log) {
  if (!fs::exists(out / "model.json") || !fs::exists(out / "groups.json")) {
    if (log) log("plot: skipped, model or group networks are missing");
    return;
  }
  const json networks_doc = read_artifact(out, "networks.json", "model");
  const Codebook codebook = io::codebook_from_json(networks_doc.at("codebook"));
  const json model_doc = read_artifact(out, "model.json", "model");
  const ModelFit fit = io::model_from_json(model_doc);
  const NodeLayout layout = io::layout_from_json(model_doc, codebook);
  const json groups_doc = read_artifact(out, "groups.json", "compare");

  render::AxisContext axes;
  for (const auto& code : codebook.codes()) axes.code_labels.push_back(code.id);
  axes.variance_explained = fit.space.variance_explained;

  std::vector<std::string> order;
  if (!groups_doc.at("subtracted").is_null()) {
    order.push_back(groups_doc["subtracted"].at("condition_a").get<std::string>());
    order.push_back(groups_doc["subtracted"].at("condition_b").get<std::string>());
  }
  for (const auto& g : groups_doc.at("groups")) {
    const auto condition = g.at("condition").get<std::string>();
    if (std::find(order.begin(), order.end(), condition) == order.end()) order.push_back(condition);
  }
  for (const auto& g : groups_doc.at("groups")) {
    const GroupNetwork group = io::group_from_json(g, codebook);
    const auto position = std::find(order.begin(), order.end(), group.condition) - order.begin();
    write_file_atomic(out / ("network_" + safe_name(group.condition) + ".svg"),
                      render::render_network_svg(group, layout, axes, config.style, static_cast<std::size_t>(position)));
  }

  if (groups_doc.at("subtracted").is_null() || !fs::exists(out / "stats.json")) return;
  const SubtractedNetwork subtracted = io::subtracted_from_json(groups_doc["subtracted"], codebook);
  std::vector<stats::StatReport> reports;
  const json stats_doc = read_artifact(out, "stats.json", "compare");
  for (const auto& r : stats_doc.at("reports"))
    reports.push_back(io::stat_report_from_json(r));
  write_file_atomic(out / "comparison.svg",
                    render::render_comparison_svg(subtracted, fit.scores, reports, layout, axes, config.style));
}

void check_unique_stems(const std::vector<fs::path>& inputs, const char* what) {
  std::set<std::string> stems;
  for (const auto& p : inputs)
    if (!stems.insert(p.stem().string()).second)
      fail(ErrorCode::kConfiguration, std::string(what) + ": two inputs share the name '" + p.stem().string() + "'");
}

void stage_mfcc(const PipelineConfig& config, const fs::path& out, const LogSink&) {
  check_unique_stems(config.audio_inputs, "mfcc");
  for (const auto& input : config.audio_inputs) {
    const auto bytes = read_file(input, "audio");
    const auto audio = features::decode_wav(
        std::span(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
    const auto coeffs = features::mfcc(audio, config.mfcc.for_sample_rate(audio.sample_rate));
    write_file_atomic(out / "mfcc" / (safe_name(input.stem().string()) + ".csv"), features::feature_matrix_csv(coeffs, "c"));
  }
}

void stage_pose(const PipelineConfig& config, const fs::path& out, const LogSink&) {
  check_unique_stems(config.pose_inputs, "pose");
  for (const auto& input : config.pose_inputs) {
    const auto pose = features::parse_pose_csv(read_file(input, "pose"));
    const auto standard = features::standardize_pose(pose, config.pose.target_len);
    const std::string stem = safe_name(input.stem().string());
    write_file_atomic(out / "pose" / (stem + ".csv"), features::write_pose_csv(standard));
    for (double degrees : config.pose.rotations)
      write_file_atomic(out / "pose" / (stem + "_rot" + degrees_label(degrees) + ".csv"),
                        features::write_pose_csv(
                            features::rotate_pose(standard, degrees, config.pose.axis, config.pose.root_joint)));
  }
}

constexpr Stage kAllStages[] = {Stage::kIngest, Stage::kCode, Stage::kIrr, Stage::kModel,
                                Stage::kCompare, Stage::kPlot, Stage::kMfcc, Stage::kPose};

}  // namespace

features::MfccConfig MfccOptions::for_sample_rate(double sample_rate) const {
  if (!(sample_rate > 0.0)) fail(ErrorCode::kParameter, "mfcc: sample rate must be positive");
  features::MfccConfig c;
  c.frame_length = static_cast<std::size_t>(std::llround(frame_ms * 1e-3 * sample_rate));
  c.hop = static_cast<std::size_t>(std::llround(hop_ms * 1e-3 * sample_rate));
  c.fft_size = fft_size;
  if (c.fft_size == 0) {
    c.fft_size = 1;
    while (c.fft_size < c.frame_length) c.fft_size <<= 1;
  }
  c.mel_filters = mel_filters;
  c.coefficients = coefficients;
  c.log_floor = log_floor;
  c.validate();
  return c;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

PipelineConfig load_config(const std::optional<fs::path>& config_path, const json& overrides) {
  json file_doc = json::object();
  fs::path base = fs::current_path();
  if (config_path) {
    file_doc = parse_json_text(read_file(*config_path, "config"), "config '" + config_path->string() + "'");
    if (!file_doc.is_object()) fail(ErrorCode::kConfiguration, "config must be a JSON object");
    base = fs::absolute(*config_path).parent_path();
  }
  if (!overrides.is_null() && !overrides.is_object())
    fail(ErrorCode::kConfiguration, "overrides must be a JSON object");

  json raw = file_doc;
  json doc = resolve_paths(file_doc, base);
  if (overrides.is_object()) {
    raw.merge_patch(overrides);
    doc.merge_patch(resolve_paths(overrides, fs::current_path()));
  }
  for (const auto& [key, value] : doc.items())
    if (!kConfigKeys.count(key)) fail(ErrorCode::kConfiguration, "config: unknown key '" + key + "'");

  PipelineConfig config;
  config.effective = doc;
  json hashed = raw;
  hashed.erase("output");
  config.config_hash = fnv1a_hex(hashed.dump());

  try {
    auto path_of = [&](const char* key) -> std::optional<fs::path> {
      if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
      return fs::path(doc[key].get<std::string>());
    };
    config.corpus = path_of("corpus");
    config.codebook = path_of("codebook");
    config.classifier = path_of("classifier");
    if (doc.contains("schema")) config.schema = parse_schema_json(object_or_file(doc["schema"], "schema").dump());
    if (doc.contains("segmentation")) config.segmentation = parse_stanza_strategy(doc["segmentation"].get<std::string>());
    if (doc.contains("accumulation"))
      config.accumulation = parse_cooccurrence_mode(doc["accumulation"].get<std::string>());
    if (doc.contains("group_mode")) config.group_mode = parse_group_mode(doc["group_mode"].get<std::string>());
    config.model.dims = doc.value("dims", config.model.dims);
    config.model.center = doc.value("centering", config.model.center);
    if (doc.contains("mc")) {
      config.mc.replicates = doc["mc"].value("replicates", config.mc.replicates);
      config.mc.seed = doc["mc"].value("seed", config.mc.seed);
    }
    if (doc.contains("handset") && !doc["handset"].is_null()) {
      const auto& h = doc["handset"];
      HandsetConfig handset;
      handset.csv = h.at("csv").get<std::string>();
      handset.text_column = h.value("text", handset.text_column);
      handset.threshold_kappa = h.value("threshold_kappa", handset.threshold_kappa);
      for (const auto& [code, column] : h.at("codes").items()) handset.codes.emplace_back(code, column.get<std::string>());
      config.handset = std::move(handset);
    }
    if (doc.contains("compare")) {
      config.compare = doc["compare"].get<std::vector<std::string>>();
      if (!config.compare.empty() && (config.compare.size() != 2 || config.compare[0] == config.compare[1]))
        fail(ErrorCode::kConfiguration, "compare must name two different conditions");
    }
    if (auto dir = path_of("audio_dir")) config.audio_inputs = list_files(*dir, ".wav");
    if (doc.contains("audio_inputs"))
      for (const auto& p : doc["audio_inputs"]) config.audio_inputs.emplace_back(p.get<std::string>());
    if (auto dir = path_of("pose_dir")) config.pose_inputs = list_files(*dir, ".csv");
    if (doc.contains("pose_inputs"))
      for (const auto& p : doc["pose_inputs"]) config.pose_inputs.emplace_back(p.get<std::string>());
    if (doc.contains("mfcc")) {
      const auto& m = doc["mfcc"];
      config.mfcc.frame_ms = m.value("frame_ms", config.mfcc.frame_ms);
      config.mfcc.hop_ms = m.value("hop_ms", config.mfcc.hop_ms);
      config.mfcc.fft_size = m.value("fft_size", config.mfcc.fft_size);
      config.mfcc.mel_filters = m.value("mel_filters", config.mfcc.mel_filters);
      config.mfcc.coefficients = m.value("coefficients", config.mfcc.coefficients);
      config.mfcc.log_floor = m.value("log_floor", config.mfcc.log_floor);
    }
    if (doc.contains("pose")) {
      const auto& p = doc["pose"];
      config.pose.target_len = p.value("target_len", config.pose.target_len);
      if (p.contains("rotations")) config.pose.rotations = p["rotations"].get<std::vector<double>>();
      if (p.contains("axis")) config.pose.axis = features::parse_axis(p["axis"].get<std::string>());
      config.pose.root_joint = p.value("root_joint", config.pose.root_joint);
    }
    if (doc.contains("style")) config.style = render::parse_style_json(object_or_file(doc["style"], "style").dump());
    if (auto out = path_of("output")) config.output = *out;
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfiguration, std::string("config: ") + e.what());
  }
  if (config.mc.replicates < 1000) fail(ErrorCode::kConfiguration, "config: mc.replicates must be at least 1000");
  return config;
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (Stage s : kAllStages)
    if (name == stage_name(s)) return s;
  return std::nullopt;
}

const char* stage_name(Stage stage) {
  switch (stage) {
    case Stage::kIngest: return "ingest";
    case Stage::kCode: return "code";
    case Stage::kIrr: return "irr";
    case Stage::kModel: return "model";
    case Stage::kCompare: return "compare";
    case Stage::kPlot: return "plot";
    case Stage::kMfcc: return "mfcc";
    case Stage::kPose: return "pose";
  }
  return "?";
}

void run_stage(Stage stage, const PipelineConfig& config, const fs::path& out_dir, const LogSink& log) {
  switch (stage) {
    case Stage::kIngest: return stage_ingest(config, out_dir, log);
    case Stage::kCode: return stage_code(config, out_dir, log);
    case Stage::kIrr: return stage_irr(config, out_dir, log);
    case Stage::kModel: return stage_model(config, out_dir, log);
    case Stage::kCompare: return stage_compare(config, out_dir, log);
    case Stage::kPlot: return stage_plot(config, out_dir, log);
    case Stage::kMfcc: return stage_mfcc(config, out_dir, log);
    case Stage::kPose: return stage_pose(config, out_dir, log);
  }
}

void run_pipeline(const PipelineConfig& config, const LogSink& log) {
  fs::path output = config.output.lexically_normal();
  if (output.filename().empty()) output = output.parent_path();
  const fs::path staging = output.parent_path() / (output.filename().string() + ".partial");
  std::error_code ec;
  fs::remove_all(staging, ec);
  fs::create_directories(staging, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create staging directory '" + staging.string() + "': " + ec.message());

  try {
    const bool has_corpus = config.corpus.has_value();
    for (Stage stage : kAllStages) {
      const bool corpus_stage = stage != Stage::kMfcc && stage != Stage::kPose;
      if (corpus_stage && !has_corpus) continue;
      run_stage(stage, config, staging, log);
    }
    std::vector<fs::path> produced;
    for (const auto& entry : fs::recursive_directory_iterator(staging))
      if (entry.is_regular_file()) produced.push_back(entry.path());
    std::sort(produced.begin(), produced.end());
    for (const auto& src : produced) {
      const fs::path dest = output / fs::relative(src, staging);
      fs::create_directories(dest.parent_path());
      fs::rename(src, dest);
    }
    fs::remove_all(staging);
  } catch (const fs::filesystem_error& e) {
    fs::remove_all(staging, ec);
    fail(ErrorCode::kIo, e.what());
  } catch (...) {
    fs::remove_all(staging, ec);
    throw;
  }
}

void run_command(std::string_view command, const std::optional<fs::path>& config_path, const json& overrides,
                 const LogSink& log) {
  const PipelineConfig config = load_config(config_path, overrides);
  if (command == "run") return run_pipeline(config, log);
  const auto stage = parse_stage(command);
  if (!stage) fail(ErrorCode::kConfiguration, "unknown command '" + std::string(command) + "'");
  try {
    run_stage(*stage, config, config.output, log);
  } catch (const fs::filesystem_error& e) {
    fail(ErrorCode::kIo, e.what());
  }
}

}  // namespace enakit::pipeline
