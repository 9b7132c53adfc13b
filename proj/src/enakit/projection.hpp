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
#include <vector>

#include "enakit/accumulation.hpp"
#include "enakit/corpus.hpp"

namespace enakit {

struct ModelOptions {
  std::size_t dims = 2;
  bool center = true;
};

struct ModelSpace {
  std::vector<double> grand_mean;
  bool centered = true;
  // Retained right singular directions, unit norm, pairwise orthogonal. The
  // first loading above 1e-10 in magnitude of each direction is positive.
  std::vector<std::vector<double>> basis;
  std::vector<double> singular_values;     // retained
  std::vector<double> variance_explained;  // retained, sigma_d^2 / sum sigma^2
  std::vector<double> all_singular_values;
  std::size_t rank = 0;

  std::size_t dims() const noexcept { return basis.size(); }
  // Coordinates of a normalized vector in the retained dimensions.
  std::vector<double> project(std::span<const double> normalized) const;
};

struct EnaScore {
  UnitKey unit;
  std::vector<double> coords;
};

struct ModelFit {
  ModelSpace space;
  std::vector<EnaScore> scores;
  std::vector<std::string> warnings;
};

// SVD of the (centered) unit-by-pair matrix. Throws kDegenerate when the
// units carry zero total variance.
ModelFit fit_model(std::span<const NormalizedVector> networks, std::span<const UnitKey> units,
                   const ModelOptions& options = {});

struct NodeLayout {
  std::vector<std::vector<double>> positions;  // per code, one coordinate per dimension

  std::size_t dims() const noexcept { return positions.empty() ? 0 : positions.front().size(); }
};

// Share of the network's total weight attached to each node: half the weight
// of every edge incident to it. Zero network gives all zeros.
std::vector<double> centroid_coefficients(std::span<const double> pair_weights, std::size_t codes);

// Weight-averaged midpoint of the network's edges under `layout`; the origin
// for an empty network.
std::vector<double> network_centroid(const NormalizedVector& network, const NodeLayout& layout);

// Sum over units and dimensions of (score - centroid)^2.
double layout_objective(std::span<const EnaScore> scores, std::span<const NormalizedVector> networks,
                        const NodeLayout& layout);

// Node positions whose network centroids best match the unit scores in the
// least-squares sense; minimum-norm solution when the problem is rank
// deficient (singular values below 1e-10 * sigma_max are dropped).
NodeLayout optimize_node_positions(std::span<const EnaScore> scores,
                                   std::span<const NormalizedVector> networks,
                                   std::vector<std::string>* warnings = nullptr);

}  // namespace enakit
