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

#include "enakit/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "enakit/error.hpp"
#include "json.hpp"

namespace enakit::render {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Point {
  double x = 0.0;
  double y = 0.0;
};

Point planar(std::span<const double> coords) {
  return {coords.empty() ? 0.0 : coords[0], coords.size() > 1 ? coords[1] : 0.0};
}

// Isotropic model-to-canvas transform fitting the given points into 90% of
// the canvas, y pointing up.
class Viewport {
 public:
  Viewport(const PlotStyle& style, std::span<const Point> points) : width_(style.width), height_(style.height) {
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
    double lo_y = lo_x, hi_y = -lo_x;
    for (const auto& p : points) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
    if (points.empty()) lo_x = hi_x = lo_y = hi_y = 0.0;
    center_ = {(lo_x + hi_x) / 2.0, (lo_y + hi_y) / 2.0};
    const double rx = hi_x - lo_x, ry = hi_y - lo_y;
    const double sx = rx > 0.0 ? 0.9 * width_ / rx : std::numeric_limits<double>::infinity();
    const double sy = ry > 0.0 ? 0.9 * height_ / ry : std::numeric_limits<double>::infinity();
    scale_ = std::min(sx, sy);
    if (!std::isfinite(scale_)) scale_ = 0.45 * std::min(width_, height_);
  }

  Point map(Point p) const {
    return {width_ / 2.0 + (p.x - center_.x) * scale_, height_ / 2.0 - (p.y - center_.y) * scale_};
  }
  double scale() const { return scale_; }

 private:
  double width_, height_;
  Point center_;
  double scale_ = 1.0;
};

class SvgWriter {
 public:
  explicit SvgWriter(const PlotStyle& style) {
    out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(style.width) +
            "\" height=\"" + num(style.height) + "\" viewBox=\"0 0 " + num(style.width) + " " +
            num(style.height) + "\" font-family=\"" + escape(style.font) + "\" font-size=\"" +
            num(style.font_size) + "\">\n";
    out_ += "<rect x=\"0.000\" y=\"0.000\" width=\"" + num(style.width) + "\" height=\"" + num(style.height) +
            "\" fill=\"#ffffff\"/>\n";
  }

  void raw(const std::string& s) { out_ += s; }

  void line(Point a, Point b, const std::string& stroke, double width, double opacity,
            const std::string& dash = {}) {
    out_ += "<line x1=\"" + num(a.x) + "\" y1=\"" + num(a.y) + "\" x2=\"" + num(b.x) + "\" y2=\"" + num(b.y) +
            "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\" stroke-opacity=\"" + num(opacity) +
            "\"";
    if (!dash.empty()) out_ += " stroke-dasharray=\"" + dash + "\"";
    out_ += "/>\n";
  }

  void circle(Point c, double r, const std::string& fill, double opacity, const std::string& extra = {}) {
    out_ += "<circle cx=\"" + num(c.x) + "\" cy=\"" + num(c.y) + "\" r=\"" + num(r) + "\" fill=\"" + fill +
            "\" fill-opacity=\"" + num(opacity) + "\"" + extra + "/>\n";
  }

  void rect(Point corner, double w, double h, const std::string& fill, const std::string& stroke,
            const std::string& dash, const std::string& cls) {
    out_ += "<rect class=\"" + cls + "\" x=\"" + num(corner.x) + "\" y=\"" + num(corner.y) + "\" width=\"" +
            num(w) + "\" height=\"" + num(h) + "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\"";
    if (!dash.empty()) out_ += " stroke-dasharray=\"" + dash + "\"";
    out_ += "/>\n";
  }

  void text(Point at, std::string_view content, const std::string& anchor, const std::string& fill = "#000000") {
    out_ += "<text x=\"" + num(at.x) + "\" y=\"" + num(at.y) + "\" text-anchor=\"" + anchor + "\" fill=\"" + fill +
            "\">" + escape(content) + "</text>\n";
  }

  std::string finish() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  std::string out_;
};

std::string axis_label(const AxisContext& axes, std::size_t d) {
  std::string label = "SVD" + std::to_string(d + 1);
  if (d < axes.variance_explained.size()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.1f%%)", 100.0 * axes.variance_explained[d]);
    label += buf;
  }
  return label;
}

void draw_axes(SvgWriter& svg, const Viewport& view, const PlotStyle& style, const AxisContext& axes) {
  const Point origin = view.map({0.0, 0.0});
  const double ox = std::clamp(origin.x, 0.0, style.width);
  const double oy = std::clamp(origin.y, 0.0, style.height);
  svg.raw("<g class=\"axes\">\n");
  svg.line({0.0, oy}, {style.width, oy}, "#999999", 1.0, 1.0);
  svg.line({ox, 0.0}, {ox, style.height}, "#999999", 1.0, 1.0);
  svg.text({style.width - 8.0, std::clamp(oy - 6.0, style.font_size, style.height - 2.0)}, axis_label(axes, 0),
           "end", "#555555");
  svg.text({std::clamp(ox + 6.0, 0.0, style.width - 2.0), style.font_size + 4.0}, axis_label(axes, 1), "start",
           "#555555");
  svg.raw("</g>\n");
}

// Edges drawn weakest first so strong edges end up on top.
void draw_edges(SvgWriter& svg, const Viewport& view, const PlotStyle& style, const NodeLayout& layout,
                std::span<const double> weights, std::size_t codes, const std::string& positive_color,
                const std::string& negative_color) {
  auto edges = ranked_edges(weights, codes);
  double max_abs = 0.0;
  for (const auto& e : edges) max_abs = std::max(max_abs, std::abs(e.weight));
  svg.raw("<g class=\"edges\">\n");
  for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
    if (it->weight == 0.0) continue;
    const double share = std::abs(it->weight) / max_abs;
    const double width = style.edge_width_min + (style.edge_width_max - style.edge_width_min) * share;
    const double opacity = 0.25 + 0.75 * share;
    svg.line(view.map(planar(layout.positions[it->i])), view.map(planar(layout.positions[it->j])),
             it->weight > 0.0 ? positive_color : negative_color, width, opacity);
  }
  svg.raw("</g>\n");
}

void draw_nodes(SvgWriter& svg, const Viewport& view, const PlotStyle& style, const NodeLayout& layout,
                const AxisContext& axes, std::span<const double> frequencies) {
  double max_f = 0.0;
  for (double f : frequencies) max_f = std::max(max_f, f);
  svg.raw("<g class=\"nodes\">\n");
  for (std::size_t i = 0; i < layout.positions.size(); ++i) {
    const double f = frequencies.empty() ? 0.0 : frequencies[i];
    const double r =
        max_f > 0.0 ? style.node_radius_min + (style.node_radius_max - style.node_radius_min) * f / max_f
                    : style.node_radius_min;
    const Point c = view.map(planar(layout.positions[i]));
    svg.circle(c, r, style.node_color, 1.0);
    const std::string label = i < axes.code_labels.size() ? axes.code_labels[i] : std::to_string(i);
    svg.text({c.x, c.y - r - 3.0}, label, "middle");
  }
  svg.raw("</g>\n");
}

void check_layout(const NodeLayout& layout, std::size_t codes) {
  if (layout.positions.size() != codes)
    fail(ErrorCode::kInvalidArgument, "render: layout has " + std::to_string(layout.positions.size()) +
                                          " node positions for " + std::to_string(codes) + " codes");
  for (const auto& p : layout.positions)
    if (p.empty()) fail(ErrorCode::kInvalidArgument, "render: node position without coordinates");
}

}  // namespace

void PlotStyle::validate() const {
  if (!(width > 0.0 && height > 0.0)) fail(ErrorCode::kParameter, "style: canvas size must be positive");
  if (!(node_radius_min > 0.0 && node_radius_max >= node_radius_min))
    fail(ErrorCode::kParameter, "style: node radius range must be positive and ordered");
  if (!(edge_width_min > 0.0 && edge_width_max >= edge_width_min))
    fail(ErrorCode::kParameter, "style: edge width range must be positive and ordered");
  std::set<std::string> colors;
  for (const auto& [condition, color] : condition_colors)
    if (!colors.insert(color).second) fail(ErrorCode::kParameter, "style: conditions must have distinct colours");
  if (palette.empty()) fail(ErrorCode::kParameter, "style: palette must not be empty");
}

PlotStyle parse_style_json(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfiguration, std::string("style: invalid JSON: ") + e.what());
  }
  PlotStyle style;
  style.width = doc.value("width", style.width);
  style.height = doc.value("height", style.height);
  if (doc.contains("condition_colors"))
    for (const auto& [k, v] : doc["condition_colors"].items()) style.condition_colors.emplace_back(k, v.get<std::string>());
  if (doc.contains("palette")) style.palette = doc["palette"].get<std::vector<std::string>>();
  style.node_color = doc.value("node_color", style.node_color);
  style.node_radius_min = doc.value("node_radius_min", style.node_radius_min);
  style.node_radius_max = doc.value("node_radius_max", style.node_radius_max);
  style.edge_width_min = doc.value("edge_width_min", style.edge_width_min);
  style.edge_width_max = doc.value("edge_width_max", style.edge_width_max);
  style.point_radius = doc.value("point_radius", style.point_radius);
  style.mean_square_size = doc.value("mean_square_size", style.mean_square_size);
  style.font = doc.value("font", style.font);
  style.font_size = doc.value("font_size", style.font_size);
  style.ci_dash = doc.value("ci_dash", style.ci_dash);
  style.validate();
  return style;
}

std::string condition_color(const PlotStyle& style, const std::string& condition, std::size_t order) {
  for (const auto& [name, color] : style.condition_colors)
    if (name == condition) return color;
  return style.palette[order % style.palette.size()];
}

std::string render_network_svg(const GroupNetwork& network, const NodeLayout& layout, const AxisContext& axes,
                               const PlotStyle& style, std::size_t condition_order) {
  style.validate();
  check_layout(layout, network.codes);
  std::vector<Point> extent;
  for (const auto& p : layout.positions) extent.push_back(planar(p));
  extent.push_back({0.0, 0.0});
  const Viewport view(style, extent);
  const std::string color = condition_color(style, network.condition, condition_order);

  SvgWriter svg(style);
  draw_axes(svg, view, style, axes);
  draw_edges(svg, view, style, layout, network.edge_weights, network.codes, color, color);
  draw_nodes(svg, view, style, layout, axes, network.node_frequencies);
  svg.text({style.width / 2.0, style.height - 8.0}, network.condition, "middle", color);
  return svg.finish();
}

std::string render_comparison_svg(const SubtractedNetwork& subtracted, std::span<const EnaScore> scores,
                                  std::span<const stats::StatReport> stats, const NodeLayout& layout,
                                  const AxisContext& axes, const PlotStyle& style) {
  style.validate();
  check_layout(layout, subtracted.codes);
  if (stats.empty()) fail(ErrorCode::kInvalidArgument, "render: comparison needs at least one stat report");
  const std::string& cond_a = subtracted.condition_a;
  const std::string& cond_b = subtracted.condition_b;
  std::size_t count_a = 0, count_b = 0;
  for (const auto& s : scores) {
    if (s.unit.condition == cond_a) ++count_a;
    if (s.unit.condition == cond_b) ++count_b;
  }
  if (count_a == 0 || count_b == 0)
    fail(ErrorCode::kInvalidArgument, "render: no unit scores for condition '" + (count_a ? cond_b : cond_a) + "'");

  const auto& x_stats = stats[0];
  auto y_interval = [&](bool a) {
    if (stats.size() < 2) {
      const double m = 0.0;
      return std::pair<double, stats::Interval>{m, {m, m}};
    }
    const auto& g = a ? stats[1].a : stats[1].b;
    return std::pair<double, stats::Interval>{g.mean, g.ci95};
  };
  const auto [ya_mean, ya_ci] = y_interval(true);
  const auto [yb_mean, yb_ci] = y_interval(false);

  std::vector<Point> extent;
  for (const auto& p : layout.positions) extent.push_back(planar(p));
  for (const auto& s : scores) extent.push_back(planar(s.coords));
  extent.push_back({x_stats.a.ci95.lower, ya_ci.lower});
  extent.push_back({x_stats.a.ci95.upper, ya_ci.upper});
  extent.push_back({x_stats.b.ci95.lower, yb_ci.lower});
  extent.push_back({x_stats.b.ci95.upper, yb_ci.upper});
  extent.push_back({0.0, 0.0});
  const Viewport view(style, extent);
  const std::string color_a = condition_color(style, cond_a, 0);
  const std::string color_b = condition_color(style, cond_b, 1);

  SvgWriter svg(style);
  draw_axes(svg, view, style, axes);

  svg.raw("<g class=\"units\">\n");
  for (const auto& s : scores) {
    if (s.unit.condition != cond_a && s.unit.condition != cond_b) continue;
    svg.circle(view.map(planar(s.coords)), style.point_radius, s.unit.condition == cond_a ? color_a : color_b, 0.6);
  }
  svg.raw("</g>\n");

  draw_edges(svg, view, style, layout, subtracted.edge_weights, subtracted.codes, color_a, color_b);
  draw_nodes(svg, view, style, layout, axes, {});

  svg.raw("<g class=\"means\">\n");
  auto draw_group = [&](const stats::GroupSummary& gx, double y_mean, stats::Interval y_ci, const std::string& color) {
    const Point lo = view.map({gx.ci95.lower, y_ci.upper});
    const Point hi = view.map({gx.ci95.upper, y_ci.lower});
    svg.rect(lo, hi.x - lo.x, hi.y - lo.y, "none", color, style.ci_dash, "ci");
    const Point m = view.map({gx.mean, y_mean});
    const double half = style.mean_square_size / 2.0;
    svg.rect({m.x - half, m.y - half}, style.mean_square_size, style.mean_square_size, color, color, {}, "mean");
  };
  draw_group(x_stats.a, ya_mean, ya_ci, color_a);
  draw_group(x_stats.b, yb_mean, yb_ci, color_b);
  svg.raw("</g>\n");

  svg.text({style.width / 2.0, style.height - 8.0}, cond_a + " - " + cond_b, "middle");
  return svg.finish();
}

}  // namespace enakit::render
