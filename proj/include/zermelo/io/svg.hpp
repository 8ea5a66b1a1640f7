#pragma once

// Minimal SVG 1.1 emitter: polylines, circles, arrows, axis ticks and text
// in chart coordinates. Series are distinguished by element class, styled
// once in the document stylesheet (classical red, generalized black, wind
// blue).

#include <string>
#include <string_view>
#include <vector>

#include "zermelo/types.hpp"

namespace zermelo::io {

struct PlotSpec {
  Rect extent;        // chart-coordinate window
  double width = 800.0;  // pixels; height follows the aspect ratio
  std::string title;
};

class SvgDocument {
 public:
  // Throws std::invalid_argument on a degenerate extent.
  explicit SvgDocument(PlotSpec spec);

  void polyline(const std::vector<Point2>& points, std::string_view cls, bool closed = false);
  void circle(const Point2& center, double radius_px, std::string_view cls);
  void arrow(const Point2& tail, const Tangent2& delta, std::string_view cls);
  void text(const Point2& at, std::string_view label, std::string_view cls = "label");
  // Frame with `ticks` labelled ticks per axis.
  void axes(int ticks = 5);

  std::string str() const;

 private:
  double px(double x) const;
  double py(double y) const;

  PlotSpec spec_;
  double height_ = 0.0;
  double scale_ = 0.0;
  std::vector<std::string> body_;
};

// Bounding box of the points grown by `margin` of its size on each side;
// a degenerate box is widened to unit size.
Rect bounding_box(const std::vector<Point2>& points, double margin = 0.05);

}  // namespace zermelo::io
