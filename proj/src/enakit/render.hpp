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
#include <utility>
#include <vector>

#include "enakit/networks.hpp"
#include "enakit/projection.hpp"
#include "enakit/stats.hpp"

namespace enakit::render {

struct PlotStyle {
  double width = 800.0;
  double height = 800.0;
  // condition -> colour; conditions not listed draw from `palette` in order.
  std::vector<std::pair<std::string, std::string>> condition_colors;
  std::vector<std::string> palette{"#1f5fbf", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::string node_color = "#333333";
  double node_radius_min = 4.0;
  double node_radius_max = 16.0;
  double edge_width_min = 0.5;
  double edge_width_max = 8.0;
  double point_radius = 2.5;
  double mean_square_size = 10.0;
  std::string font = "Helvetica, Arial, sans-serif";
  double font_size = 12.0;
  std::string ci_dash = "6,4";

  void validate() const;
};

PlotStyle parse_style_json(std::string_view json_text);

// Colour assigned to a condition; `order` is the condition's position among
// the conditions shown.
std::string condition_color(const PlotStyle& style, const std::string& condition, std::size_t order);

struct AxisContext {
  std::vector<std::string> code_labels;
  std::vector<double> variance_explained;  // per retained dimension
};

std::string render_network_svg(const GroupNetwork& network, const NodeLayout& layout,
                               const AxisContext& axes, const PlotStyle& style,
                               std::size_t condition_order = 0);

// `stats` holds the first- and second-dimension reports comparing
// subtracted.condition_a (report.a) with subtracted.condition_b (report.b).
std::string render_comparison_svg(const SubtractedNetwork& subtracted, std::span<const EnaScore> scores,
                                  std::span<const stats::StatReport> stats, const NodeLayout& layout,
                                  const AxisContext& axes, const PlotStyle& style);

}  // namespace enakit::render
