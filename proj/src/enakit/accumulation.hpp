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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "enakit/corpus.hpp"

namespace enakit {

// Number of unordered code pairs, k(k-1)/2.
constexpr std::size_t pair_count(std::size_t codes) { return codes * (codes - (codes ? 1 : 0)) / 2; }

// Position of pair (i, j), i < j, in row-major upper-triangle order:
// (0,1), (0,2), ..., (0,k-1), (1,2), ...
constexpr std::size_t pair_index(std::size_t i, std::size_t j, std::size_t codes) {
  return i * codes - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<std::size_t, std::size_t> pair_at(std::size_t index, std::size_t codes);

// Inverse of pair_count; throws if `pairs` is not triangular.
std::size_t codes_for_pairs(std::size_t pairs);

enum class CooccurrenceMode {
  // A pair co-occurs when both codes fire anywhere in the stanza.
  kStanzaUnion,
  // A pair co-occurs only when both codes fire on the same line.
  kPerLine,
};

CooccurrenceMode parse_cooccurrence_mode(std::string_view name);
const char* cooccurrence_mode_name(CooccurrenceMode mode);

struct AdjacencyMatrix {
  StanzaKey key;
  std::size_t size = 0;
  std::vector<std::uint8_t> entries;   // size x size, row-major
  std::vector<std::uint8_t> presence;  // code fired somewhere in the stanza

  std::uint8_t at(std::size_t i, std::size_t j) const { return entries[i * size + j]; }
};

AdjacencyMatrix stanza_adjacency(std::span<const UtteranceRecord> stanza_records,
                                 CooccurrenceMode mode = CooccurrenceMode::kStanzaUnion);

struct CumulativeNetwork {
  UnitKey unit;
  std::size_t size = 0;
  std::vector<std::int64_t> counts;       // size x size, row-major
  std::vector<std::int64_t> code_counts;  // stanzas in which each code fired
  std::int64_t stanza_count = 0;

  std::int64_t at(std::size_t i, std::size_t j) const { return counts[i * size + j]; }
};

CumulativeNetwork accumulate_unit(std::span<const AdjacencyMatrix> adjacencies);

// One cumulative network per (unit, condition), in order of first appearance.
std::vector<CumulativeNetwork> accumulate_corpus(const Corpus& corpus,
                                                 CooccurrenceMode mode = CooccurrenceMode::kStanzaUnion);

struct NetworkVector {
  std::vector<double> values;
};

// Upper triangle of a symmetric, zero-diagonal matrix, row by row.
NetworkVector vectorize(std::span<const double> matrix, std::size_t codes);
NetworkVector vectorize(const CumulativeNetwork& network);

// Symmetric zero-diagonal matrix holding the vector's pair weights.
std::vector<double> devectorize(const NetworkVector& vector);

struct NormalizedVector {
  std::vector<double> values;
  bool zero = false;
};

// Divides by the L2 norm. A zero vector stays zero and is flagged.
NormalizedVector spherical_normalize(const NetworkVector& vector);

}  // namespace enakit
