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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "enakit/accumulation.hpp"

namespace enakit {

enum class GroupMode { kSumOfCounts, kMeanOfNormalized };

GroupMode parse_group_mode(std::string_view name);
const char* group_mode_name(GroupMode mode);

struct UnitNetwork {
  CumulativeNetwork cumulative;
  NormalizedVector normalized;
};

UnitNetwork make_unit_network(CumulativeNetwork cumulative);

struct GroupNetwork {
  std::string condition;
  GroupMode mode = GroupMode::kMeanOfNormalized;
  std::size_t codes = 0;
  std::size_t unit_count = 0;
  std::vector<double> edge_weights;      // pair layout
  std::vector<double> node_frequencies;  // per code
};

// Sum mode adds the units' count matrices and stanza counts per code; mean
// mode averages normalized vectors and per-unit relative code frequencies.
GroupNetwork group_network(std::span<const UnitNetwork> units, const std::string& condition, GroupMode mode);

struct SubtractedNetwork {
  std::string condition_a;
  std::string condition_b;
  GroupMode mode = GroupMode::kMeanOfNormalized;
  std::size_t codes = 0;
  std::vector<double> edge_weights;  // a - b; positive means stronger in a
};

SubtractedNetwork subtract_networks(const GroupNetwork& a, const GroupNetwork& b);

struct RankedEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  double weight = 0.0;
};

// All pairs sorted by |weight| descending, ties by (i, j).
std::vector<RankedEdge> ranked_edges(std::span<const double> pair_weights, std::size_t codes);

}  // namespace enakit
