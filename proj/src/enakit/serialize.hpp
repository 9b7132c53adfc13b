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

#include <span>
#include <vector>

#include "enakit/accumulation.hpp"
#include "enakit/autocoder.hpp"
#include "enakit/corpus.hpp"
#include "enakit/networks.hpp"
#include "enakit/projection.hpp"
#include "enakit/stats.hpp"
#include "json.hpp"

// JSON forms of the artifacts passed between pipeline stages. Every *_to_json
// has a matching reader where a later stage consumes the artifact.
namespace enakit::io {

using nlohmann::json;

json codebook_to_json(const Codebook& codebook);
Codebook codebook_from_json(const json& j);

json corpus_to_json(const Corpus& corpus);
Corpus corpus_from_json(const json& j);

// {unit, condition, stanza_count, code_counts, pairs: [{i, j, count}]}; only
// non-zero pairs are listed.
json cumulative_to_json(const CumulativeNetwork& network);
CumulativeNetwork cumulative_from_json(const json& j, std::size_t codes);

json model_to_json(const ModelFit& fit, const NodeLayout& layout, const Codebook& codebook);
ModelFit model_from_json(const json& j);
NodeLayout layout_from_json(const json& j, const Codebook& codebook);

json edges_to_json(std::span<const double> pair_weights, const Codebook& codebook);
json group_to_json(const GroupNetwork& group, const Codebook& codebook);
GroupNetwork group_from_json(const json& j, const Codebook& codebook);
json subtracted_to_json(const SubtractedNetwork& subtracted, const Codebook& codebook);
SubtractedNetwork subtracted_from_json(const json& j, const Codebook& codebook);

json stat_report_to_json(const stats::StatReport& report);
stats::StatReport stat_report_from_json(const json& j);

json irr_report_to_json(const IrrReport& report);

}  // namespace enakit::io
