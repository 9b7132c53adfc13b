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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "enakit/corpus.hpp"

namespace enakit {

// Regular-expression coder. Codes without an entry are externally coded and
// left untouched by apply_classifier.
struct PatternClassifier {
  std::vector<std::pair<std::string, std::vector<std::string>>> patterns;
  bool case_sensitive = false;

  std::vector<std::string> code_ids() const;
};

// Parses {"<code id>": ["pattern", ...], ..., "options": {"case_sensitive": bool}}.
// Every pattern must compile and every listed code needs at least one.
PatternClassifier parse_classifier_json(std::string_view json_text);

// Sets code_value = 1 iff any pattern of the code matches anywhere in the
// text, for every code in `target_codes`. An empty target list means every
// code the classifier defines.
Corpus apply_classifier(const PatternClassifier& classifier, const Corpus& corpus,
                        std::span<const std::string> target_codes = {});

// Runs the classifier over bare text, one 0/1 per target code.
std::vector<std::uint8_t> classify_text(const PatternClassifier& classifier, std::string_view text,
                                        std::span<const std::string> target_codes);

// counts[rater1][rater2] over {0, 1}.
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, 2>, 2> counts{};

  std::uint64_t total() const noexcept;
  ConfusionMatrix transposed() const noexcept;
};

ConfusionMatrix confusion_matrix(std::span<const std::uint8_t> rater1,
                                 std::span<const std::uint8_t> rater2);

struct KappaResult {
  double kappa = 0.0;
  double percent_agreement = 0.0;
  // Chance agreement was 1 (both raters constant on the same value or
  // complementary); kappa is then 1 on full agreement and 0 otherwise.
  bool degenerate = false;
};

KappaResult cohen_kappa(const ConfusionMatrix& cm);

struct MonteCarloSettings {
  std::uint64_t replicates = 10000;
  std::uint64_t seed = 0;
};

// 2x2 joint distribution of two raters with the given positive base rate and
// true kappa. Symmetric, so both raters share the marginal.
std::array<double, 4> kappa_population(double baserate, double kappa);

// Fraction of simulated handsets, drawn from a rater pair whose true kappa is
// `threshold_kappa`, whose sample kappa reaches `observed_kappa`. Replicate i
// draws from its own generator seeded from (seed, i), so the result does not
// depend on evaluation order.
double shaffer_rho(double observed_kappa, std::uint32_t handset_size, double baserate,
                   double threshold_kappa, const MonteCarloSettings& mc);

struct IrrReport {
  std::string code_id;
  ConfusionMatrix confusion;
  double kappa = 0.0;
  double percent_agreement = 0.0;
  bool degenerate = false;
  double rho = 1.0;
  bool rho_defined = true;
  double baserate = 0.0;
  double threshold_kappa = 0.65;
  std::uint32_t handset_size = 0;
  std::uint64_t seed = 0;
  std::uint64_t replicates = 0;
};

// Full reliability check of one code: kappa and agreement from paired
// ratings, rho at the pooled base rate of both raters. When the pooled base
// rate is 0 or 1 rho is undefined and reported as 1.
IrrReport irr_report(std::string code_id, std::span<const std::uint8_t> rater1,
                     std::span<const std::uint8_t> rater2, double threshold_kappa,
                     const MonteCarloSettings& mc);

}  // namespace enakit
