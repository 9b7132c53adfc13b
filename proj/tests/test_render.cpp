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

#include <regex>
#include <stack>
#include <string>

#include "enakit/error.hpp"
#include "enakit/render.hpp"

using namespace enakit;
using namespace enakit::render;

namespace {

// Minimal well-formedness check: balanced tags, quoted attributes, no stray
// '<' or '&' in text.
bool well_formed(const std::string& doc, std::string* why) {
  std::stack<std::string> open;
  std::size_t i = 0;
  bool root_seen = false;
  while (i < doc.size()) {
    if (doc[i] == '<') {
      const auto end = doc.find('>', i);
      if (end == std::string::npos) return *why = "unterminated tag", false;
      const std::string tag = doc.substr(i + 1, end - i - 1);
      i = end + 1;
      if (tag.starts_with("?")) continue;
      if (tag.starts_with("/")) {
        if (open.empty() || open.top() != tag.substr(1)) return *why = "mismatched </" + tag.substr(1) + ">", false;
        open.pop();
        continue;
      }
      if (root_seen && open.empty()) return *why = "content after root", false;
      root_seen = true;
      std::size_t quotes = 0;
      for (char c : tag) quotes += c == '"';
      if (quotes % 2) return *why = "unbalanced quotes in <" + tag + ">", false;
      const std::string name = tag.substr(0, tag.find_first_of(" /"));
      if (!tag.ends_with("/")) open.push(name);
    } else {
      if (doc[i] == '&') {
        const auto semi = doc.find(';', i);
        const std::string ent = doc.substr(i, semi - i + 1);
        if (ent != "&amp;" && ent != "&lt;" && ent != "&gt;" && ent != "&quot;" && ent != "&apos;")
          return *why = "bad entity " + ent, false;
      }
      ++i;
    }
  }
  if (!open.empty()) return *why = "unclosed <" + open.top() + ">", false;
  return true;
}

void expect_in_bounds(const std::string& svg, double width, double height) {
  static const std::regex attr(R"re(\b(cx|cy|x|y|x1|x2|y1|y2)="(-?[0-9.]+)")re");
  int count = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), attr); it != std::sregex_iterator(); ++it) {
    const std::string name = (*it)[1];
    const double v = std::stod((*it)[2]);
    const double limit = name[0] == 'x' || name == "cx" ? width : height;
    EXPECT_GE(v, 0.0) << name;
    EXPECT_LE(v, limit) << name;
    ++count;
  }
  EXPECT_GT(count, 0);
}

std::size_t occurrences(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

GroupNetwork sample_group() {
  GroupNetwork g;
  g.condition = "aware & <co>";
  g.codes = 4;
  g.unit_count = 3;
  g.edge_weights = {0.4, 0.0, 0.1, 0.3, 0.0, 0.2};
  g.node_frequencies = {0.5, 0.2, 0.9, 0.0};
  return g;
}

NodeLayout sample_layout() { return {{{-0.4, 0.1}, {0.3, 0.5}, {0.2, -0.6}, {0.0, 0.0}}}; }

AxisContext sample_axes() { return {{"KNP", "PCC", "Q&S", "PE"}, {0.42, 0.19}}; }

std::vector<EnaScore> sample_scores() {
  return {{{"u1", "aware & <co>"}, {-0.2, 0.1}}, {{"u2", "aware & <co>"}, {-0.1, 0.3}},
          {{"u3", "other"}, {0.3, -0.2}},        {{"u4", "other"}, {0.25, -0.05}}};
}

stats::StatReport report(const char* dim) {
  stats::StatReport r;
  r.dimension = dim;
  r.a = {"aware & <co>", 2, -0.15, 0.07, {-0.5, 0.2}};
  r.b = {"other", 2, 0.27, 0.03, {0.1, 0.45}};
  return r;
}

}  // namespace

TEST(RenderNetwork, WellFormedBoundedAndDeterministic) {
  const PlotStyle style;
  const auto svg = render_network_svg(sample_group(), sample_layout(), sample_axes(), style);
  std::string why;
  EXPECT_TRUE(well_formed(svg, &why)) << why;
  expect_in_bounds(svg, style.width, style.height);
  EXPECT_EQ(svg, render_network_svg(sample_group(), sample_layout(), sample_axes(), style));
  EXPECT_NE(svg.find("Q&amp;S"), std::string::npos);
  EXPECT_NE(svg.find("SVD1 (42.0%)"), std::string::npos);
  EXPECT_EQ(svg.find("NaN"), std::string::npos);
  EXPECT_EQ(svg.find("nan"), std::string::npos);
}

TEST(RenderNetwork, ZeroEdgesOmittedAndWeakestDrawnFirst) {
  const auto svg = render_network_svg(sample_group(), sample_layout(), sample_axes(), PlotStyle{});
  const auto edges_begin = svg.find("<g class=\"edges\">");
  const auto edges_end = svg.find("</g>", edges_begin);
  const std::string edges = svg.substr(edges_begin, edges_end - edges_begin);
  EXPECT_EQ(occurrences(edges, "<line"), 4u);
  const auto nodes_begin = svg.find("<g class=\"nodes\">");
  const std::string nodes = svg.substr(nodes_begin, svg.find("</g>", nodes_begin) - nodes_begin);
  EXPECT_EQ(occurrences(nodes, "<circle"), 4u);
  // widths increase through the group
  static const std::regex width(R"re(stroke-width="([0-9.]+)")re");
  double last = 0;
  for (auto it = std::sregex_iterator(edges.begin(), edges.end(), width); it != std::sregex_iterator(); ++it) {
    const double w = std::stod((*it)[1]);
    EXPECT_GE(w, last);
    last = w;
  }
  EXPECT_NEAR(last, PlotStyle{}.edge_width_max, 1e-3);
}

TEST(RenderComparison, WellFormedWithMeansAndIntervals) {
  SubtractedNetwork d;
  d.condition_a = "aware & <co>";
  d.condition_b = "other";
  d.codes = 4;
  d.edge_weights = {0.2, -0.1, 0.0, 0.05, -0.3, 0.0};
  const std::vector<stats::StatReport> reports{report("SVD1"), report("SVD2")};
  const PlotStyle style;
  const auto svg = render_comparison_svg(d, sample_scores(), reports, sample_layout(), sample_axes(), style);
  std::string why;
  EXPECT_TRUE(well_formed(svg, &why)) << why;
  expect_in_bounds(svg, style.width, style.height);
  EXPECT_EQ(svg, render_comparison_svg(d, sample_scores(), reports, sample_layout(), sample_axes(), style));
  EXPECT_EQ(occurrences(svg, "stroke-dasharray=\"6,4\""), 2u);
  EXPECT_NE(svg.find(style.palette[0]), std::string::npos);
  EXPECT_NE(svg.find(style.palette[1]), std::string::npos);
}

TEST(RenderComparison, MissingConditionIsAnError) {
  SubtractedNetwork d;
  d.condition_a = "nobody";
  d.condition_b = "other";
  d.codes = 4;
  d.edge_weights.assign(6, 0.1);
  const std::vector<stats::StatReport> reports{report("SVD1"), report("SVD2")};
  EXPECT_THROW(render_comparison_svg(d, sample_scores(), reports, sample_layout(), sample_axes(), PlotStyle{}), Error);
}

TEST(PlotStyle, ParsesAndValidates) {
  const auto s = parse_style_json(R"({"width":400,"height":300,"condition_colors":{"aware":"#000000"}})");
  EXPECT_EQ(s.width, 400);
  EXPECT_EQ(condition_color(s, "aware", 5), "#000000");
  EXPECT_EQ(condition_color(s, "other", 1), s.palette[1]);
  EXPECT_THROW(parse_style_json(R"({"width":-1})"), Error);
  EXPECT_THROW(parse_style_json(R"({"node_radius_min":10,"node_radius_max":2})"), Error);
  const auto svg = render_network_svg(sample_group(), sample_layout(), sample_axes(), s);
  expect_in_bounds(svg, 400, 300);
}
