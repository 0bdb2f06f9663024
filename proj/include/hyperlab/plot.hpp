#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "hyperlab/errors.hpp"
#include "hyperlab/rational.hpp"

namespace hyperlab {

struct PlotPoint {
  double x = 0;
  double y = 0;
  friend bool operator==(const PlotPoint&, const PlotPoint&) = default;
};

inline PlotPoint to_plot(const Rational& x, const Rational& y) { return {x.convert_to<double>(), y.convert_to<double>()}; }

struct Viewport {
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  friend bool operator==(const Viewport&, const Viewport&) = default;
};

struct Polyline {
  std::string label;
  std::vector<PlotPoint> points;
};

struct LabeledPoint {
  std::string label;
  PlotPoint at;
};

/// Polylines and marked points in real coordinates, ready for output.
struct PlotScene {
  std::string title;
  std::vector<Polyline> polylines;
  std::vector<LabeledPoint> points;
  Viewport viewport;
  int samples_per_unit = 256;

  bool empty() const { return polylines.empty() && points.empty(); }

  /// Bounding box of the data with a margin; degenerate extents widen to 1.
  void fit_viewport(double margin = 0.05) {
    bool any = false;
    Viewport v{};
    auto take = [&](const PlotPoint& p) {
      if (!any) v = {p.x, p.x, p.y, p.y};
      v.xmin = std::min(v.xmin, p.x);
      v.xmax = std::max(v.xmax, p.x);
      v.ymin = std::min(v.ymin, p.y);
      v.ymax = std::max(v.ymax, p.y);
      any = true;
    };
    for (const auto& l : polylines)
      for (const auto& p : l.points) take(p);
    for (const auto& p : points) take(p.at);
    if (!any) return;
    auto widen = [margin](double& lo, double& hi) {
      if (hi - lo <= 0) {
        lo -= 0.5;
        hi += 0.5;
      }
      double pad = (hi - lo) * margin;
      lo -= pad;
      hi += pad;
    };
    widen(v.xmin, v.xmax);
    widen(v.ymin, v.ymax);
    viewport = v;
  }

  void validate() const {
    if (empty()) fail(ErrorKind::EmptyScene, "scene has nothing to draw");
    if (!(viewport.xmax > viewport.xmin) || !(viewport.ymax > viewport.ymin))
      fail(ErrorKind::InvalidArgument, "viewport is degenerate");
    auto finite = [](const PlotPoint& p) { return std::isfinite(p.x) && std::isfinite(p.y); };
    for (const auto& l : polylines)
      if (!std::all_of(l.points.begin(), l.points.end(), finite))
        fail(ErrorKind::InvalidArgument, "polyline '" + l.label + "' has a non-finite coordinate");
    for (const auto& p : points)
      if (!finite(p.at)) fail(ErrorKind::InvalidArgument, "point '" + p.label + "' has a non-finite coordinate");
  }
};

enum class SceneFormat { SVG, CSV };

namespace detail {

/// Fixed 15-significant-digit formatting; -0 prints as 0.
inline std::string num15(double v) {
  if (v == 0) v = 0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

constexpr std::array<const char*, 8> kPalette{"#1f4e79", "#c0392b", "#27ae60", "#8e44ad",
                                              "#d35400", "#16a085", "#7f8c8d", "#2c3e50"};

inline std::string render_svg(const PlotScene& s) {
  constexpr double width = 640, height = 480, pad = 40;
  const Viewport& v = s.viewport;
  auto sx = [&](double x) { return pad + (x - v.xmin) / (v.xmax - v.xmin) * (width - 2 * pad); };
  auto sy = [&](double y) { return height - pad - (y - v.ymin) / (v.ymax - v.ymin) * (height - 2 * pad); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
  if (!s.title.empty()) out += "  <title>" + xml_escape(s.title) + "</title>\n";
  out += "  <rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";

  // Axes through the origin when it is visible, else along the frame.
  double ax = std::clamp(0.0, v.xmin, v.xmax), ay = std::clamp(0.0, v.ymin, v.ymax);
  out += "  <g stroke=\"#999999\" stroke-width=\"1\">\n";
  out += "    <line x1=\"" + num15(sx(v.xmin)) + "\" y1=\"" + num15(sy(ay)) + "\" x2=\"" + num15(sx(v.xmax)) + "\" y2=\"" +
         num15(sy(ay)) + "\"/>\n";
  out += "    <line x1=\"" + num15(sx(ax)) + "\" y1=\"" + num15(sy(v.ymin)) + "\" x2=\"" + num15(sx(ax)) + "\" y2=\"" +
         num15(sy(v.ymax)) + "\"/>\n";
  out += "  </g>\n";
  out += "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#555555\">\n";
  out += "    <text x=\"" + num15(sx(v.xmin)) + "\" y=\"" + num15(height - pad / 3) + "\">" + num15(v.xmin) + "</text>\n";
  out += "    <text x=\"" + num15(sx(v.xmax)) + "\" y=\"" + num15(height - pad / 3) + "\" text-anchor=\"end\">" +
         num15(v.xmax) + "</text>\n";
  out += "    <text x=\"" + num15(pad / 4) + "\" y=\"" + num15(sy(v.ymin)) + "\">" + num15(v.ymin) + "</text>\n";
  out += "    <text x=\"" + num15(pad / 4) + "\" y=\"" + num15(sy(v.ymax)) + "\">" + num15(v.ymax) + "</text>\n";
  out += "  </g>\n";

  for (std::size_t i = 0; i < s.polylines.size(); ++i) {
    const auto& l = s.polylines[i];
    std::string d;
    for (std::size_t k = 0; k < l.points.size(); ++k)
      d += (k == 0 ? "M" : " L") + num15(sx(l.points[k].x)) + " " + num15(sy(l.points[k].y));
    out += "  <path id=\"line" + std::to_string(i) + "\" d=\"" + d + "\" fill=\"none\" stroke=\"" +
           kPalette[i % kPalette.size()] + "\" stroke-width=\"1.5\"><title>" + xml_escape(l.label) + "</title></path>\n";
  }
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const auto& p = s.points[i];
    out += "  <circle cx=\"" + num15(sx(p.at.x)) + "\" cy=\"" + num15(sy(p.at.y)) + "\" r=\"3\" fill=\"black\"/>\n";
    out += "  <text x=\"" + num15(sx(p.at.x) + 5) + "\" y=\"" + num15(sy(p.at.y) - 5) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape(p.label) + "</text>\n";
  }
  // Legend.
  for (std::size_t i = 0; i < s.polylines.size(); ++i) {
    double y = pad + 14.0 * static_cast<double>(i);
    out += "  <text x=\"" + num15(width - pad) + "\" y=\"" + num15(y) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" +
           kPalette[i % kPalette.size()] + "\">" + xml_escape(s.polylines[i].label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

inline std::string render_csv(const PlotScene& s) {
  std::string out = "label,x,y\n";
  for (const auto& l : s.polylines)
    for (const auto& p : l.points) out += csv_field(l.label) + "," + num15(p.x) + "," + num15(p.y) + "\n";
  for (const auto& p : s.points) out += csv_field(p.label) + "," + num15(p.at.x) + "," + num15(p.at.y) + "\n";
  return out;
}

}  // namespace detail

/// Deterministic SVG 1.1 or CSV (`label,x,y`) text for a scene.
inline std::string render(const PlotScene& scene, SceneFormat format) {
  scene.validate();
  return format == SceneFormat::SVG ? detail::render_svg(scene) : detail::render_csv(scene);
}

}  // namespace hyperlab
