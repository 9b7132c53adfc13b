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

#include "enakit/accumulation.hpp"

#include <cmath>
#include <map>
#include <string>

#include "enakit/error.hpp"

namespace enakit {

std::pair<std::size_t, std::size_t> pair_at(std::size_t index, std::size_t codes) {
  for (std::size_t i = 0; i + 1 < codes; ++i) {
    const std::size_t row = codes - i - 1;
    if (index < row) return {i, i + 1 + index};
    index -= row;
  }
  fail(ErrorCode::kInvalidArgument, "pair index out of range");
}

std::size_t codes_for_pairs(std::size_t pairs) {
  std::size_t k = 2;
  while (pair_count(k) < pairs) ++k;
  if (pair_count(k) != pairs)
    fail(ErrorCode::kInvalidArgument, "vector length " + std::to_string(pairs) + " is not k(k-1)/2");
  return k;
}

CooccurrenceMode parse_cooccurrence_mode(std::string_view name) {
  if (name == "stanza-union") return CooccurrenceMode::kStanzaUnion;
  if (name == "per-line") return CooccurrenceMode::kPerLine;
  fail(ErrorCode::kConfiguration, "unknown accumulation mode '" + std::string(name) + "'");
}

const char* cooccurrence_mode_name(CooccurrenceMode mode) {
  return mode == CooccurrenceMode::kStanzaUnion ? "stanza-union" : "per-line";
}

AdjacencyMatrix stanza_adjacency(std::span<const UtteranceRecord> stanza_records, CooccurrenceMode mode) {
  if (stanza_records.empty()) fail(ErrorCode::kEmptyInput, "stanza_adjacency: stanza has no records");
  const auto& first = stanza_records.front();
  AdjacencyMatrix adj;
  adj.key = StanzaKey{{first.unit_id, first.condition}, first.stanza_id};
  adj.size = first.code_values.size();
  const std::size_t k = adj.size;
  adj.entries.assign(k * k, 0);
  adj.presence.assign(k, 0);

  for (const auto& rec : stanza_records) {
    if (rec.unit_id != first.unit_id || rec.condition != first.condition || rec.stanza_id != first.stanza_id)
      fail(ErrorCode::kInvalidArgument, "stanza_adjacency: records span more than one stanza");
    if (rec.code_values.size() != k)
      fail(ErrorCode::kInvalidArgument, "stanza_adjacency: records disagree on code count");
    for (std::size_t i = 0; i < k; ++i) adj.presence[i] |= rec.code_values[i];
    if (mode == CooccurrenceMode::kPerLine) {
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (i != j && rec.code_values[i] && rec.code_values[j]) adj.entries[i * k + j] = 1;
    }
  }
  if (mode == CooccurrenceMode::kStanzaUnion) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (i != j) adj.entries[i * k + j] = adj.presence[i] & adj.presence[j];
  }
  return adj;
}

CumulativeNetwork accumulate_unit(std::span<const AdjacencyMatrix> adjacencies) {
  if (adjacencies.empty()) fail(ErrorCode::kEmptyInput, "accumulate_unit: no adjacency matrices");
  const auto& first = adjacencies.front();
  CumulativeNetwork net;
  net.unit = first.key.unit;
  net.size = first.size;
  net.counts.assign(net.size * net.size, 0);
  net.code_counts.assign(net.size, 0);
  for (const auto& adj : adjacencies) {
    if (adj.size != net.size) fail(ErrorCode::kInvalidArgument, "accumulate_unit: matrix size mismatch");
    if (adj.key.unit != net.unit)
      fail(ErrorCode::kInvalidArgument, "accumulate_unit: stanzas belong to different units");
    for (std::size_t c = 0; c < adj.entries.size(); ++c) net.counts[c] += adj.entries[c];
    for (std::size_t i = 0; i < net.size; ++i)
      net.code_counts[i] += adj.presence.empty() ? 0 : adj.presence[i];
    ++net.stanza_count;
  }
  return net;
}

std::vector<CumulativeNetwork> accumulate_corpus(const Corpus& corpus, CooccurrenceMode mode) {
  std::vector<UnitKey> order = units_of(corpus);
  std::map<UnitKey, std::vector<AdjacencyMatrix>> per_unit;
  for (const auto& stanza : group_stanzas(corpus))
    per_unit[stanza.key.unit].push_back(stanza_adjacency(stanza.records, mode));
  std::vector<CumulativeNetwork> networks;
  networks.reserve(order.size());
  for (const auto& unit : order) networks.push_back(accumulate_unit(per_unit.at(unit)));
  return networks;
}

NetworkVector vectorize(std::span<const double> matrix, std::size_t codes) {
  if (matrix.size() != codes * codes) fail(ErrorCode::kInvalidArgument, "vectorize: matrix is not k x k");
  NetworkVector v;
  v.values.reserve(pair_count(codes));
  for (std::size_t i = 0; i < codes; ++i) {
    if (matrix[i * codes + i] != 0.0) fail(ErrorCode::kInvalidArgument, "vectorize: non-zero diagonal");
    for (std::size_t j = i + 1; j < codes; ++j) {
      if (matrix[i * codes + j] != matrix[j * codes + i])
        fail(ErrorCode::kInvalidArgument, "vectorize: matrix is not symmetric");
      v.values.push_back(matrix[i * codes + j]);
    }
  }
  return v;
}

NetworkVector vectorize(const CumulativeNetwork& network) {
  std::vector<double> m(network.counts.begin(), network.counts.end());
  return vectorize(m, network.size);
}

std::vector<double> devectorize(const NetworkVector& vector) {
  const std::size_t k = codes_for_pairs(vector.values.size());
  std::vector<double> m(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      m[i * k + j] = m[j * k + i] = vector.values[pair_index(i, j, k)];
  return m;
}

NormalizedVector spherical_normalize(const NetworkVector& vector) {
  NormalizedVector out;
  double sum_sq = 0.0;
  for (double x : vector.values) {
    if (!std::isfinite(x) || x < 0.0)
      fail(ErrorCode::kValue, "spherical_normalize: entries must be finite and non-negative");
    sum_sq += x * x;
  }
  if (sum_sq == 0.0) {
    out.values.assign(vector.values.size(), 0.0);
    out.zero = true;
    return out;
  }
  const double norm = std::sqrt(sum_sq);
  out.values.reserve(vector.values.size());
  for (double x : vector.values) out.values.push_back(x / norm);
  return out;
}

}  // namespace enakit
