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

#include "enakit/enakit.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <mutex>
#include <new>
#include <string>

#include "enakit/accumulation.hpp"
#include "enakit/autocoder.hpp"
#include "enakit/corpus.hpp"
#include "enakit/error.hpp"
#include "enakit/features.hpp"
#include "enakit/pipeline.hpp"
#include "enakit/projection.hpp"
#include "enakit/serialize.hpp"
#include "enakit/stats.hpp"

struct enakit_corpus {
  enakit::Corpus corpus;
};

struct enakit_model {
  enakit::Codebook codebook;
  enakit::ModelFit fit;
  enakit::NodeLayout layout;
};

namespace {

thread_local std::string g_last_error;

std::mutex g_log_mutex;
enakit_log_fn g_log_fn = nullptr;
void* g_log_user = nullptr;

enakit_status set_error(enakit_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <typename F>
enakit_status guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return ENAKIT_OK;
  } catch (const enakit::Error& e) {
    return set_error(static_cast<enakit_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(ENAKIT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(ENAKIT_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(ENAKIT_ERR_INTERNAL, "unknown failure");
  }
}

void require(bool condition, const char* what) {
  if (!condition) enakit::fail(enakit::ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

double* dup_buffer(const std::vector<double>& values) {
  auto* out = static_cast<double*>(std::malloc(std::max<std::size_t>(values.size(), 1) * sizeof(double)));
  if (!out) throw std::bad_alloc();
  std::copy(values.begin(), values.end(), out);
  return out;
}

enakit::features::PoseSequence pose_from(const double* coords, size_t frames, size_t joints) {
  require(coords != nullptr || frames * joints == 0, "coords is NULL");
  enakit::features::PoseSequence pose;
  pose.frames = frames;
  pose.joints = joints;
  pose.coords.assign(coords, coords + frames * joints * 3);
  return pose;
}

std::span<const double> sample_span(const double* data, size_t n) {
  require(data != nullptr || n == 0, "sample pointer is NULL");
  return {data, n};
}

}  // namespace

extern "C" {

const char* enakit_version(void) { return "0.1.0"; }

const char* enakit_status_name(enakit_status status) {
  if (status == ENAKIT_OK) return "ok";
  if (status == ENAKIT_ERR_INTERNAL) return "internal";
  if (status >= ENAKIT_ERR_INVALID_ARGUMENT && status <= ENAKIT_ERR_IO)
    return enakit::error_code_name(static_cast<enakit::ErrorCode>(status));
  return "unknown";
}

const char* enakit_last_error(void) { return g_last_error.c_str(); }

void enakit_string_free(char* str) { std::free(str); }
void enakit_buffer_free(double* buffer) { std::free(buffer); }

void enakit_set_log_callback(enakit_log_fn fn, void* user_data) {
  std::lock_guard lock(g_log_mutex);
  g_log_fn = fn;
  g_log_user = user_data;
}

enakit_status enakit_corpus_parse(const char* csv_text, const char* codebook_json, const char* schema_json,
                                  enakit_corpus** out) {
  return guard([&] {
    require(csv_text && codebook_json && out, "csv_text, codebook_json and out are required");
    *out = nullptr;
    const auto codebook = enakit::parse_codebook_json(codebook_json);
    const auto schema = schema_json ? enakit::parse_schema_json(schema_json) : enakit::canonical_schema();
    *out = new enakit_corpus{enakit::parse_corpus(csv_text, schema, codebook)};
  });
}

enakit_status enakit_corpus_segment(enakit_corpus* corpus, const char* strategy) {
  return guard([&] {
    require(corpus && strategy, "corpus and strategy are required");
    corpus->corpus = enakit::segment_stanzas(corpus->corpus, enakit::parse_stanza_strategy(strategy));
  });
}

enakit_status enakit_corpus_apply_classifier(enakit_corpus* corpus, const char* classifier_json) {
  return guard([&] {
    require(corpus && classifier_json, "corpus and classifier_json are required");
    corpus->corpus = enakit::apply_classifier(enakit::parse_classifier_json(classifier_json), corpus->corpus);
  });
}

enakit_status enakit_corpus_record_count(const enakit_corpus* corpus, size_t* out) {
  return guard([&] {
    require(corpus && out, "corpus and out are required");
    *out = corpus->corpus.size();
  });
}

enakit_status enakit_corpus_code_count(const enakit_corpus* corpus, size_t* out) {
  return guard([&] {
    require(corpus && out, "corpus and out are required");
    *out = corpus->corpus.codebook().size();
  });
}

enakit_status enakit_corpus_to_json(const enakit_corpus* corpus, char** out) {
  return guard([&] {
    require(corpus && out, "corpus and out are required");
    *out = dup_string(enakit::io::corpus_to_json(corpus->corpus).dump());
  });
}

enakit_status enakit_corpus_cumulative_json(const enakit_corpus* corpus, const char* mode, char** out) {
  return guard([&] {
    require(corpus && out, "corpus and out are required");
    const auto m = mode ? enakit::parse_cooccurrence_mode(mode) : enakit::CooccurrenceMode::kStanzaUnion;
    nlohmann::json units = nlohmann::json::array();
    for (const auto& net : enakit::accumulate_corpus(corpus->corpus, m))
      units.push_back(enakit::io::cumulative_to_json(net));
    *out = dup_string(units.dump());
  });
}

void enakit_corpus_free(enakit_corpus* corpus) { delete corpus; }

enakit_status enakit_model_fit(const enakit_corpus* corpus, const char* mode, size_t dims, int center,
                               enakit_model** out) {
  return guard([&] {
    require(corpus && out, "corpus and out are required");
    *out = nullptr;
    const auto m = mode ? enakit::parse_cooccurrence_mode(mode) : enakit::CooccurrenceMode::kStanzaUnion;
    std::vector<enakit::NormalizedVector> normalized;
    std::vector<enakit::UnitKey> keys;
    for (const auto& net : enakit::accumulate_corpus(corpus->corpus, m)) {
      normalized.push_back(enakit::spherical_normalize(enakit::vectorize(net)));
      keys.push_back(net.unit);
    }
    auto model = std::make_unique<enakit_model>(
        enakit_model{corpus->corpus.codebook(), {}, {}});
    model->fit = enakit::fit_model(normalized, keys, {dims, center != 0});
    model->layout = enakit::optimize_node_positions(model->fit.scores, normalized, &model->fit.warnings);
    *out = model.release();
  });
}

enakit_status enakit_model_unit_count(const enakit_model* model, size_t* out) {
  return guard([&] {
    require(model && out, "model and out are required");
    *out = model->fit.scores.size();
  });
}

enakit_status enakit_model_dims(const enakit_model* model, size_t* out) {
  return guard([&] {
    require(model && out, "model and out are required");
    *out = model->fit.space.dims();
  });
}

enakit_status enakit_model_score(const enakit_model* model, size_t unit, double* coords) {
  return guard([&] {
    require(model && coords, "model and coords are required");
    require(unit < model->fit.scores.size(), "unit index out of range");
    const auto& c = model->fit.scores[unit].coords;
    std::copy(c.begin(), c.end(), coords);
  });
}

enakit_status enakit_model_variance_explained(const enakit_model* model, size_t dim, double* out) {
  return guard([&] {
    require(model && out, "model and out are required");
    require(dim < model->fit.space.dims(), "dimension out of range");
    *out = model->fit.space.variance_explained[dim];
  });
}

enakit_status enakit_model_node_position(const enakit_model* model, size_t code, double* coords) {
  return guard([&] {
    require(model && coords, "model and coords are required");
    require(code < model->layout.positions.size(), "code index out of range");
    const auto& p = model->layout.positions[code];
    std::copy(p.begin(), p.end(), coords);
  });
}

enakit_status enakit_model_to_json(const enakit_model* model, char** out) {
  return guard([&] {
    require(model && out, "model and out are required");
    *out = dup_string(enakit::io::model_to_json(model->fit, model->layout, model->codebook).dump());
  });
}

void enakit_model_free(enakit_model* model) { delete model; }

enakit_status enakit_cohen_kappa(const int64_t counts[4], double* kappa, double* agreement) {
  return guard([&] {
    require(counts && kappa, "counts and kappa are required");
    enakit::ConfusionMatrix cm;
    for (int k = 0; k < 4; ++k) {
      require(counts[k] >= 0, "counts must be non-negative");
      cm.counts[k / 2][k % 2] = static_cast<std::uint64_t>(counts[k]);
    }
    const auto r = enakit::cohen_kappa(cm);
    *kappa = r.kappa;
    if (agreement) *agreement = r.percent_agreement;
  });
}

enakit_status enakit_shaffer_rho(double observed_kappa, uint32_t handset_size, double baserate,
                                 double threshold_kappa, uint32_t replicates, uint64_t seed, double* out) {
  return guard([&] {
    require(out != nullptr, "out is required");
    *out = enakit::shaffer_rho(observed_kappa, handset_size, baserate, threshold_kappa, {replicates, seed});
  });
}

enakit_status enakit_welch_t(const double* a, size_t na, const double* b, size_t nb, double* t, double* df,
                             double* p_two_sided) {
  return guard([&] {
    const auto r = enakit::stats::welch_t(sample_span(a, na), sample_span(b, nb));
    if (t) *t = r.t;
    if (df) *df = r.df;
    if (p_two_sided) *p_two_sided = r.p_two_sided;
  });
}

enakit_status enakit_cohens_d(const double* a, size_t na, const double* b, size_t nb, double* out) {
  return guard([&] {
    require(out != nullptr, "out is required");
    *out = enakit::stats::cohens_d(sample_span(a, na), sample_span(b, nb));
  });
}

enakit_status enakit_mean_ci(const double* sample, size_t n, double level, double* lower, double* upper) {
  return guard([&] {
    require(lower && upper, "lower and upper are required");
    const auto ci = enakit::stats::mean_ci(sample_span(sample, n), level);
    *lower = ci.lower;
    *upper = ci.upper;
  });
}

enakit_status enakit_mfcc_default_config(double sample_rate, enakit_mfcc_config* out) {
  return guard([&] {
    require(out != nullptr, "out is required");
    const auto c = enakit::features::MfccConfig::for_sample_rate(sample_rate);
    *out = {c.frame_length, c.hop, c.fft_size, c.mel_filters, c.coefficients, c.log_floor};
  });
}

enakit_status enakit_mfcc(const double* samples, size_t n, double sample_rate, const enakit_mfcc_config* config,
                          double** out, size_t* frames, size_t* coefficients) {
  return guard([&] {
    require(out && frames && coefficients, "out, frames and coefficients are required");
    *out = nullptr;
    enakit::features::AudioBuffer audio;
    const auto span = sample_span(samples, n);
    audio.samples.assign(span.begin(), span.end());
    audio.sample_rate = sample_rate;
    auto c = enakit::features::MfccConfig::for_sample_rate(sample_rate);
    if (config)
      c = {config->frame_length, config->hop, config->fft_size, config->mel_filters, config->coefficients,
           config->log_floor};
    const auto m = enakit::features::mfcc(audio, c);
    *out = dup_buffer(m.data);
    *frames = m.rows;
    *coefficients = m.cols;
  });
}

enakit_status enakit_pose_standardize(const double* coords, size_t frames, size_t joints, size_t target_len,
                                      double** out) {
  return guard([&] {
    require(out != nullptr, "out is required");
    *out = nullptr;
    *out = dup_buffer(enakit::features::standardize_pose(pose_from(coords, frames, joints), target_len).coords);
  });
}

enakit_status enakit_pose_rotate(const double* coords, size_t frames, size_t joints, double degrees, char axis,
                                 size_t root_joint, double** out) {
  return guard([&] {
    require(out != nullptr, "out is required");
    *out = nullptr;
    const char name[2] = {axis, '\0'};
    const auto rotated = enakit::features::rotate_pose(pose_from(coords, frames, joints), degrees,
                                                      enakit::features::parse_axis(name), root_joint);
    *out = dup_buffer(rotated.coords);
  });
}

enakit_status enakit_run(const char* command, const char* config_path, const char* overrides_json) {
  return guard([&] {
    require(command != nullptr, "command is required");
    nlohmann::json overrides = nlohmann::json::object();
    if (overrides_json && *overrides_json) {
      try {
        overrides = nlohmann::json::parse(overrides_json);
      } catch (const nlohmann::json::exception& e) {
        enakit::fail(enakit::ErrorCode::kConfiguration, std::string("overrides: invalid JSON: ") + e.what());
      }
    }
    std::optional<std::filesystem::path> path;
    if (config_path && *config_path) path = config_path;
    enakit::pipeline::run_command(command, path, overrides, [](std::string_view line) {
      std::lock_guard lock(g_log_mutex);
      if (g_log_fn) g_log_fn(std::string(line).c_str(), g_log_user);
    });
  });
}

}  // extern "C"
