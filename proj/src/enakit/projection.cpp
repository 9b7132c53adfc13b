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

#include "enakit/projection.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

#include "enakit/error.hpp"

namespace enakit {

namespace {

constexpr double kRankCutoff = 1e-10;
constexpr double kSignCutoff = 1e-10;

// Truncated-SVD pseudoinverse solve of min ||a x - b||, minimum norm.
Eigen::VectorXd min_norm_solve(const Eigen::JacobiSVD<Eigen::MatrixXd>& svd, const Eigen::VectorXd& b) {
  const auto& s = svd.singularValues();
  const double cutoff = s.size() ? kRankCutoff * s(0) : 0.0;
  Eigen::VectorXd ub = svd.matrixU().transpose() * b;
  for (Eigen::Index i = 0; i < s.size(); ++i) ub(i) = s(i) > cutoff && s(i) > 0.0 ? ub(i) / s(i) : 0.0;
  return svd.matrixV() * ub;
}

}  // namespace

std::vector<double> ModelSpace::project(std::span<const double> normalized) const {
  if (normalized.size() != grand_mean.size())
    fail(ErrorCode::kInvalidArgument, "project: vector length does not match the model");
  std::vector<double> coords(basis.size(), 0.0);
  for (std::size_t d = 0; d < basis.size(); ++d) {
    double acc = 0.0;
    for (std::size_t p = 0; p < normalized.size(); ++p)
      acc += (normalized[p] - (centered ? grand_mean[p] : 0.0)) * basis[d][p];
    coords[d] = acc;
  }
  return coords;
}

ModelFit fit_model(std::span<const NormalizedVector> networks, std::span<const UnitKey> units,
                   const ModelOptions& options) {
  const std::size_t n = networks.size();
  if (n < 2) fail(ErrorCode::kInvalidArgument, "fit_model: need at least 2 units, got " + std::to_string(n));
  if (units.size() != n) fail(ErrorCode::kInvalidArgument, "fit_model: unit labels do not match networks");
  if (options.dims == 0) fail(ErrorCode::kParameter, "fit_model: dims must be at least 1");
  const std::size_t m = networks.front().values.size();
  if (m == 0) fail(ErrorCode::kInvalidArgument, "fit_model: empty network vectors");
  for (const auto& v : networks)
    if (v.values.size() != m) fail(ErrorCode::kInvalidArgument, "fit_model: network vectors differ in length");

  ModelFit fit;
  auto& space = fit.space;
  space.centered = options.center;
  space.grand_mean.assign(m, 0.0);
  for (const auto& v : networks)
    for (std::size_t p = 0; p < m; ++p) space.grand_mean[p] += v.values[p];
  for (auto& x : space.grand_mean) x /= static_cast<double>(n);

  Eigen::MatrixXd data(n, m);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t p = 0; p < m; ++p)
      data(u, p) = networks[u].values[p] - (options.center ? space.grand_mean[p] : 0.0);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(data, Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma(0) <= 1e-12)
    fail(ErrorCode::kDegenerate, "fit_model: units carry no variance (all networks identical)");

  double total = 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    total += sigma(i) * sigma(i);
    space.all_singular_values.push_back(sigma(i));
    if (sigma(i) > kRankCutoff * sigma(0)) ++space.rank;
  }

  std::size_t keep = options.dims;
  if (keep > space.rank) {
    fit.warnings.push_back("requested " + std::to_string(options.dims) + " dimensions but the data has rank " +
                           std::to_string(space.rank) + "; keeping " + std::to_string(space.rank));
    keep = space.rank;
  }

  for (std::size_t d = 0; d < keep; ++d) {
    std::vector<double> direction(m);
    for (std::size_t p = 0; p < m; ++p) direction[p] = svd.matrixV()(p, d);
    for (double loading : direction) {
      if (std::abs(loading) > kSignCutoff) {
        if (loading < 0.0)
          for (auto& x : direction) x = -x;
        break;
      }
    }
    space.basis.push_back(std::move(direction));
    space.singular_values.push_back(sigma(d));
    space.variance_explained.push_back(sigma(d) * sigma(d) / total);
  }

  fit.scores.reserve(n);
  for (std::size_t u = 0; u < n; ++u) fit.scores.push_back(EnaScore{units[u], space.project(networks[u].values)});
  return fit;
}

std::vector<double> centroid_coefficients(std::span<const double> pair_weights, std::size_t codes) {
  if (pair_weights.size() != pair_count(codes))
    fail(ErrorCode::kInvalidArgument, "centroid: network length does not match code count");
  std::vector<double> coeff(codes, 0.0);
  double total = 0.0;
  for (double w : pair_weights) total += w;
  if (total == 0.0) return coeff;
  for (std::size_t i = 0; i < codes; ++i)
    for (std::size_t j = i + 1; j < codes; ++j) {
      const double half = pair_weights[pair_index(i, j, codes)] / (2.0 * total);
      coeff[i] += half;
      coeff[j] += half;
    }
  return coeff;
}

std::vector<double> network_centroid(const NormalizedVector& network, const NodeLayout& layout) {
  const std::size_t k = layout.positions.size();
  const auto coeff = centroid_coefficients(network.values, k);
  std::vector<double> point(layout.dims(), 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t d = 0; d < point.size(); ++d) point[d] += coeff[i] * layout.positions[i][d];
  return point;
}

double layout_objective(std::span<const EnaScore> scores, std::span<const NormalizedVector> networks,
                        const NodeLayout& layout) {
  if (scores.size() != networks.size()) fail(ErrorCode::kInvalidArgument, "objective: scores and networks differ");
  double sum = 0.0;
  for (std::size_t u = 0; u < scores.size(); ++u) {
    const auto c = network_centroid(networks[u], layout);
    for (std::size_t d = 0; d < c.size(); ++d) {
      const double r = scores[u].coords[d] - c[d];
      sum += r * r;
    }
  }
  return sum;
}

NodeLayout optimize_node_positions(std::span<const EnaScore> scores,
                                   std::span<const NormalizedVector> networks,
                                   std::vector<std::string>* warnings) {
  if (scores.empty()) fail(ErrorCode::kInvalidArgument, "optimize_node_positions: no units");
  if (scores.size() != networks.size())
    fail(ErrorCode::kInvalidArgument, "optimize_node_positions: scores and networks are not aligned");
  const std::size_t n = scores.size();
  const std::size_t dims = scores.front().coords.size();
  const std::size_t k = codes_for_pairs(networks.front().values.size());

  Eigen::MatrixXd design(n, k);
  for (std::size_t u = 0; u < n; ++u) {
    if (scores[u].coords.size() != dims)
      fail(ErrorCode::kInvalidArgument, "optimize_node_positions: scores differ in dimension");
    const auto coeff = centroid_coefficients(networks[u].values, k);
    for (std::size_t i = 0; i < k; ++i) design(u, i) = coeff[i];
  }

  NodeLayout layout;
  layout.positions.assign(k, std::vector<double>(dims, 0.0));
  if (design.isZero(0.0)) {
    if (warnings) warnings->push_back("all unit networks are empty; node positions left at the origin");
    return layout;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  for (std::size_t d = 0; d < dims; ++d) {
    Eigen::VectorXd target(n);
    for (std::size_t u = 0; u < n; ++u) target(u) = scores[u].coords[d];
    const Eigen::VectorXd x = min_norm_solve(svd, target);
    for (std::size_t i = 0; i < k; ++i) layout.positions[i][d] = x(i);
  }
  return layout;
}

}  // namespace enakit
