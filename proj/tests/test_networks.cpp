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

#include <gtest/gtest.h>

#include <cmath>

#include "enakit/error.hpp"
#include "enakit/networks.hpp"

using namespace enakit;

namespace {

CumulativeNetwork network(const std::string& unit, const std::string& condition, std::vector<std::int64_t> pairs,
                          std::vector<std::int64_t> code_counts, std::int64_t stanzas) {
  CumulativeNetwork n;
  n.unit = {unit, condition};
  n.size = code_counts.size();
  n.counts.assign(n.size * n.size, 0);
  std::size_t p = 0;
  for (std::size_t i = 0; i < n.size; ++i)
    for (std::size_t j = i + 1; j < n.size; ++j, ++p) n.counts[i * n.size + j] = n.counts[j * n.size + i] = pairs[p];
  n.code_counts = std::move(code_counts);
  n.stanza_count = stanzas;
  return n;
}

}  // namespace

TEST(GroupNetwork, SumModeAddsCounts) {
  const std::vector<UnitNetwork> units{make_unit_network(network("a", "x", {1, 0, 2}, {1, 1, 2}, 2)),
                                       make_unit_network(network("b", "x", {3, 1, 0}, {2, 1, 1}, 3))};
  const auto g = group_network(units, "x", GroupMode::kSumOfCounts);
  EXPECT_EQ(g.edge_weights, (std::vector<double>{4, 1, 2}));
  EXPECT_EQ(g.node_frequencies, (std::vector<double>{3, 2, 3}));
  EXPECT_EQ(g.unit_count, 2u);
}

TEST(GroupNetwork, MeanModeAveragesNormalizedVectors) {
  const std::vector<UnitNetwork> units{make_unit_network(network("a", "x", {3, 4, 0}, {1, 1, 1}, 2)),
                                       make_unit_network(network("b", "x", {0, 0, 5}, {2, 0, 2}, 4))};
  const auto g = group_network(units, "x", GroupMode::kMeanOfNormalized);
  EXPECT_NEAR(g.edge_weights[0], 0.3, 1e-15);
  EXPECT_NEAR(g.edge_weights[1], 0.4, 1e-15);
  EXPECT_NEAR(g.edge_weights[2], 0.5, 1e-15);
  EXPECT_NEAR(g.node_frequencies[0], 0.5, 1e-15);
  EXPECT_NEAR(g.node_frequencies[1], 0.25, 1e-15);
}

TEST(GroupNetwork, RejectsMixedConditionsAndEmptyGroups) {
  const std::vector<UnitNetwork> units{make_unit_network(network("a", "x", {1, 0, 0}, {1, 1, 0}, 1)),
                                       make_unit_network(network("b", "y", {1, 0, 0}, {1, 1, 0}, 1))};
  EXPECT_THROW(group_network(units, "x", GroupMode::kSumOfCounts), Error);
  EXPECT_THROW(group_network(std::span<const UnitNetwork>{}, "x", GroupMode::kSumOfCounts), Error);
}

TEST(SubtractedNetwork, DifferenceAndAntisymmetry) {
  const std::vector<UnitNetwork> xs{make_unit_network(network("a", "x", {2, 0, 1}, {1, 1, 1}, 1))};
  const std::vector<UnitNetwork> ys{make_unit_network(network("b", "y", {0, 1, 1}, {1, 1, 1}, 1))};
  const auto gx = group_network(xs, "x", GroupMode::kSumOfCounts);
  const auto gy = group_network(ys, "y", GroupMode::kSumOfCounts);
  const auto d = subtract_networks(gx, gy);
  EXPECT_EQ(d.edge_weights, (std::vector<double>{2, -1, 0}));
  const auto r = subtract_networks(gy, gx);
  for (std::size_t p = 0; p < 3; ++p) EXPECT_EQ(r.edge_weights[p], -d.edge_weights[p]);
  EXPECT_EQ(subtract_networks(gx, gx).edge_weights, (std::vector<double>{0, 0, 0}));
}

TEST(RankedEdges, SortedByMagnitudeWithStableTies) {
  const auto edges = ranked_edges(std::vector<double>{0.5, -2, 2, 0, 1, -0.5}, 4);
  ASSERT_EQ(edges.size(), 6u);
  EXPECT_EQ(edges[0].i, 0u);
  EXPECT_EQ(edges[0].j, 2u);
  EXPECT_EQ(edges[0].weight, -2);
  EXPECT_EQ(edges[1].j, 3u);
  EXPECT_EQ(edges[2].weight, 1);
  EXPECT_EQ(edges[3].weight, 0.5);
  EXPECT_EQ(edges[4].weight, -0.5);
  EXPECT_EQ(edges[5].weight, 0);
}

TEST(GroupMode, Names) {
  EXPECT_EQ(parse_group_mode("sum"), GroupMode::kSumOfCounts);
  EXPECT_EQ(parse_group_mode("mean-of-normalized"), GroupMode::kMeanOfNormalized);
  EXPECT_STREQ(group_mode_name(GroupMode::kSumOfCounts), "sum-of-counts");
  EXPECT_THROW(parse_group_mode("median"), Error);
}
