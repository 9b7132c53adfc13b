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

#include "enakit/autocoder.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <regex>
#include <set>

#include "enakit/error.hpp"
#include "json.hpp"

namespace enakit {

using nlohmann::json;

std::vector<std::string> PatternClassifier::code_ids() const {
  std::vector<std::string> ids;
  for (const auto& entry : patterns) ids.push_back(entry.first);
  return ids;
}

namespace {

std::regex compile(const std::string& pattern, bool case_sensitive, const std::string& code_id) {
  auto flags = std::regex::ECMAScript;
  if (!case_sensitive) flags |= std::regex::icase;
  try {
    return std::regex(pattern, flags);
  } catch (const std::regex_error& e) {
    fail(ErrorCode::kConfiguration,
         "classifier: pattern '" + pattern + "' for code '" + code_id + "' does not compile: " + e.what());
  }
}

struct CompiledCoder {
  std::size_t code_index;
  std::vector<std::regex> regexes;

  bool matches(const std::string& text) const {
    return std::any_of(regexes.begin(), regexes.end(),
                       [&](const std::regex& re) { return std::regex_search(text, re); });
  }
};

const std::vector<std::string>& find_patterns(const PatternClassifier& classifier,
                                              const std::string& code_id) {
  for (const auto& [id, patterns] : classifier.patterns)
    if (id == code_id) return patterns;
  fail(ErrorCode::kConfiguration, "classifier defines no patterns for code '" + code_id + "'");
}

std::vector<CompiledCoder> compile_targets(const PatternClassifier& classifier,
                                           const Codebook* codebook,
                                           std::span<const std::string> target_codes) {
  std::vector<std::string> targets(target_codes.begin(), target_codes.end());
  if (targets.empty()) targets = classifier.code_ids();
  std::vector<CompiledCoder> coders;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto& id = targets[t];
    std::size_t index = t;
    if (codebook) {
      auto found = codebook->index_of(id);
      if (!found) fail(ErrorCode::kConfiguration, "classifier: unknown code id '" + id + "'");
      index = *found;
    }
    CompiledCoder coder{index, {}};
    for (const auto& p : find_patterns(classifier, id))
      coder.regexes.push_back(compile(p, classifier.case_sensitive, id));
    coders.push_back(std::move(coder));
  }
  return coders;
}

}  // namespace

PatternClassifier parse_classifier_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfiguration, std::string("classifier: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::kConfiguration, "classifier: expected a JSON object");
  PatternClassifier classifier;
  if (doc.contains("options")) {
    const auto& options = doc["options"];
    if (!options.is_object()) fail(ErrorCode::kConfiguration, "classifier: 'options' must be an object");
    classifier.case_sensitive = options.value("case_sensitive", false);
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "options") continue;
    if (!value.is_array() || value.empty())
      fail(ErrorCode::kConfiguration, "classifier: code '" + key + "' needs a non-empty pattern list");
    std::vector<std::string> patterns;
    for (const auto& p : value) {
      if (!p.is_string()) fail(ErrorCode::kConfiguration, "classifier: patterns must be strings");
      patterns.push_back(p.get<std::string>());
      compile(patterns.back(), classifier.case_sensitive, key);
    }
    classifier.patterns.emplace_back(key, std::move(patterns));
  }
  return classifier;
}

Corpus apply_classifier(const PatternClassifier& classifier, const Corpus& corpus,
                        std::span<const std::string> target_codes) {
  const auto coders = compile_targets(classifier, &corpus.codebook(), target_codes);
  std::vector<UtteranceRecord> records = corpus.records();
  for (auto& rec : records)
    for (const auto& coder : coders)
      rec.code_values[coder.code_index] = coder.matches(rec.text) ? 1 : 0;
  return Corpus(corpus.codebook(), std::move(records));
}

std::vector<std::uint8_t> classify_text(const PatternClassifier& classifier, std::string_view text,
                                        std::span<const std::string> target_codes) {
  const auto coders = compile_targets(classifier, nullptr, target_codes);
  const std::string owned(text);
  std::vector<std::uint8_t> out;
  for (const auto& coder : coders) out.push_back(coder.matches(owned) ? 1 : 0);
  return out;
}

std::uint64_t ConfusionMatrix::total() const noexcept {
  return counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1];
}

ConfusionMatrix ConfusionMatrix::transposed() const noexcept {
  ConfusionMatrix t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) t.counts[i][j] = counts[j][i];
  return t;
}

ConfusionMatrix confusion_matrix(std::span<const std::uint8_t> rater1,
                                 std::span<const std::uint8_t> rater2) {
  if (rater1.size() != rater2.size())
    fail(ErrorCode::kInvalidArgument, "confusion matrix: rating vectors differ in length");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < rater1.size(); ++i) {
    if (rater1[i] > 1 || rater2[i] > 1) fail(ErrorCode::kValue, "confusion matrix: ratings must be 0 or 1");
    ++cm.counts[rater1[i]][rater2[i]];
  }
  return cm;
}

KappaResult cohen_kappa(const ConfusionMatrix& cm) {
  const std::uint64_t n = cm.total();
  if (n == 0) fail(ErrorCode::kEmptyInput, "cohen_kappa: confusion matrix is empty");
  const auto& c = cm.counts;
  const std::uint64_t agree = c[0][0] + c[1][1];
  const std::uint64_t row0 = c[0][0] + c[0][1], row1 = c[1][0] + c[1][1];
  const std::uint64_t col0 = c[0][0] + c[1][0], col1 = c[0][1] + c[1][1];

  // kappa = (n*agree - chance) / (n^2 - chance) with chance = sum row_i*col_i;
  // integer form keeps exactly representable results exact.
  long double numerator, denominator;
  if (n < (std::uint64_t{1} << 31)) {
    const auto chance = static_cast<std::int64_t>(row0 * col0 + row1 * col1);
    const auto nn = static_cast<std::int64_t>(n);
    numerator = static_cast<long double>(nn * static_cast<std::int64_t>(agree) - chance);
    denominator = static_cast<long double>(nn * nn - chance);
  } else {
    const long double ln = n;
    const long double chance = static_cast<long double>(row0) * col0 + static_cast<long double>(row1) * col1;
    numerator = ln * agree - chance;
    denominator = ln * ln - chance;
  }

  KappaResult result;
  result.percent_agreement = static_cast<double>(agree) / static_cast<double>(n);
  if (denominator == 0) {
    result.degenerate = true;
    result.kappa = agree == n ? 1.0 : 0.0;
  } else {
    result.kappa = static_cast<double>(numerator / denominator);
  }
  return result;
}

std::array<double, 4> kappa_population(double baserate, double kappa) {
  if (!(baserate > 0.0 && baserate < 1.0))
    fail(ErrorCode::kParameter, "baserate must lie in (0, 1)");
  if (!(kappa >= -1.0 && kappa <= 1.0)) fail(ErrorCode::kParameter, "kappa must lie in [-1, 1]");
  const double b = baserate;
  const double spread = b * (1.0 - b);
  const std::array<double, 4> p{
      (1.0 - b) * (1.0 - b) + kappa * spread,  // [0][0]
      (1.0 - kappa) * spread,                  // [0][1]
      (1.0 - kappa) * spread,                  // [1][0]
      b * b + kappa * spread,                  // [1][1]
  };
  for (double cell : p)
    if (cell < 0.0)
      fail(ErrorCode::kParameter, "no rater population has this kappa at this baserate");
  return p;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double unit_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace

double shaffer_rho(double observed_kappa, std::uint32_t handset_size, double baserate,
                   double threshold_kappa, const MonteCarloSettings& mc) {
  if (!(observed_kappa >= -1.0 && observed_kappa <= 1.0))
    fail(ErrorCode::kParameter, "observed kappa must lie in [-1, 1]");
  if (handset_size < 2) fail(ErrorCode::kParameter, "handset size must be at least 2");
  if (mc.replicates < 1000) fail(ErrorCode::kParameter, "rho needs at least 1000 replicates");
  const auto p = kappa_population(baserate, threshold_kappa);
  const double cut0 = p[0], cut1 = p[0] + p[1], cut2 = p[0] + p[1] + p[2];

  std::uint64_t reached = 0;
  for (std::uint64_t r = 0; r < mc.replicates; ++r) {
    std::mt19937_64 gen(splitmix64(mc.seed ^ splitmix64(r)));
    ConfusionMatrix cm;
    for (std::uint32_t i = 0; i < handset_size; ++i) {
      const double u = unit_uniform(gen);
      if (u < cut0) ++cm.counts[0][0];
      else if (u < cut1) ++cm.counts[0][1];
      else if (u < cut2) ++cm.counts[1][0];
      else ++cm.counts[1][1];
    }
    if (cohen_kappa(cm).kappa >= observed_kappa - 1e-12) ++reached;
  }
  return static_cast<double>(reached) / static_cast<double>(mc.replicates);
}

IrrReport irr_report(std::string code_id, std::span<const std::uint8_t> rater1,
                     std::span<const std::uint8_t> rater2, double threshold_kappa,
                     const MonteCarloSettings& mc) {
  IrrReport report;
  report.code_id = std::move(code_id);
  report.confusion = confusion_matrix(rater1, rater2);
  const auto k = cohen_kappa(report.confusion);
  report.kappa = k.kappa;
  report.percent_agreement = k.percent_agreement;
  report.degenerate = k.degenerate;
  report.handset_size = static_cast<std::uint32_t>(rater1.size());
  report.threshold_kappa = threshold_kappa;
  report.seed = mc.seed;
  report.replicates = mc.replicates;
  const auto& c = report.confusion.counts;
  const double positives = 2.0 * c[1][1] + c[0][1] + c[1][0];
  report.baserate = positives / (2.0 * static_cast<double>(report.handset_size));
  if (report.baserate > 0.0 && report.baserate < 1.0) {
    report.rho = shaffer_rho(report.kappa, report.handset_size, report.baserate, threshold_kappa, mc);
  } else {
    report.rho = 1.0;
    report.rho_defined = false;
  }
  return report;
}

}  // namespace enakit
