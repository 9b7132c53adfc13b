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

#include "enakit/networks.hpp"

#include <algorithm>
#include <cmath>

#include "enakit/error.hpp"

namespace enakit {

GroupMode parse_group_mode(std::string_view name) {
  if (name == "sum" || name == "sum-of-counts") return GroupMode::kSumOfCounts;
  if (name == "mean" || name == "mean-of-normalized") return GroupMode::kMeanOfNormalized;
  fail(ErrorCode::kConfiguration, "unknown group-network mode '" + std::string(name) + "'");
}

const char* group_mode_name(GroupMode mode) {
  return mode == GroupMode::kSumOfCounts ? "sum-of-counts" : "mean-of-normalized";
}

UnitNetwork make_unit_network(CumulativeNetwork cumulative) {
  UnitNetwork unit;
  unit.normalized = spherical_normalize(vectorize(cumulative));
  unit.cumulative = std::move(cumulative);
  return unit;
}

GroupNetwork group_network(std::span<const UnitNetwork> units, const std::string& condition, GroupMode mode) {
  if (units.empty()) fail(ErrorCode::kEmptyInput, "group_network: no units for condition '" + condition + "'");
  GroupNetwork group;
  group.condition = condition;
  group.mode = mode;
  group.codes = units.front().cumulative.size;
  group.unit_count = units.size();
  const std::size_t k = group.codes;
  group.edge_weights.assign(pair_count(k), 0.0);
  group.node_frequencies.assign(k, 0.0);

  for (const auto& unit : units) {
    const auto& net = unit.cumulative;
    if (net.unit.condition != condition)
      fail(ErrorCode::kInvalidArgument, "group_network: unit '" + net.unit.unit_id + "' has condition '" +
                                            net.unit.condition + "', expected '" + condition + "'");
    if (net.size != k) fail(ErrorCode::kInvalidArgument, "group_network: units differ in code count");
    if (mode == GroupMode::kSumOfCounts) {
      for (std::size_t i = 0; i < k; ++i) {
        group.node_frequencies[i] += static_cast<double>(net.code_counts[i]);
        for (std::size_t j = i + 1; j < k; ++j)
          group.edge_weights[pair_index(i, j, k)] += static_cast<double>(net.at(i, j));
      }
    } else {
      if (unit.normalized.values.size() != group.edge_weights.size())
        fail(ErrorCode::kInvalidArgument, "group_network: normalized vector length mismatch");
      for (std::size_t p = 0; p < group.edge_weights.size(); ++p) group.edge_weights[p] += unit.normalized.values[p];
      if (net.stanza_count > 0)
        for (std::size_t i = 0; i < k; ++i)
          group.node_frequencies[i] +=
              static_cast<double>(net.code_counts[i]) / static_cast<double>(net.stanza_count);
    }
  }
  if (mode == GroupMode::kMeanOfNormalized) {
    const double n = static_cast<double>(units.size());
    for (auto& w : group.edge_weights) w /= n;
    for (auto& f : group.node_frequencies) f /= n;
  }
  return group;
}

SubtractedNetwork subtract_networks(const GroupNetwork& a, const GroupNetwork& b) {
  if (a.mode != b.mode) fail(ErrorCode::kInvalidArgument, "subtract_networks: group modes differ");
  if (a.codes != b.codes) fail(ErrorCode::kInvalidArgument, "subtract_networks: code counts differ");
  SubtractedNetwork out;
  out.condition_a = a.condition;
  out.condition_b = b.condition;
  out.mode = a.mode;
  out.codes = a.codes;
  out.edge_weights.resize(a.edge_weights.size());
  for (std::size_t p = 0; p < a.edge_weights.size(); ++p) out.edge_weights[p] = a.edge_weights[p] - b.edge_weights[p];
  return out;
}

std::vector<RankedEdge> ranked_edges(std::span<const double> pair_weights, std::size_t codes) {
  if (pair_weights.size() != pair_count(codes))
    fail(ErrorCode::kInvalidArgument, "ranked_edges: weight count does not match code count");
  std::vector<RankedEdge> edges;
  edges.reserve(pair_weights.size());
  for (std::size_t i = 0; i < codes; ++i)
    for (std::size_t j = i + 1; j < codes; ++j) edges.push_back({i, j, pair_weights[pair_index(i, j, codes)]});
  std::stable_sort(edges.begin(), edges.end(), [](const RankedEdge& x, const RankedEdge& y) {
    const double ax = std::abs(x.weight), ay = std::abs(y.weight);
    if (ax != ay) return ax > ay;
    return x.i != y.i ? x.i < y.i : x.j < y.j;
  });
  return edges;
}

}  // namespace enakit
