#include "zermelo/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace zermelo::io {

namespace {

constexpr double kPad = 48.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

std::string escape(std::string_view s) {
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

}  // namespace

SvgDocument::SvgDocument(PlotSpec spec) : spec_(std::move(spec)) {
  if (spec_.extent.degenerate()) throw std::invalid_argument("plot extent is degenerate");
  if (!(spec_.width > 2 * kPad)) throw std::invalid_argument("plot width too small");
  const Rect& e = spec_.extent;
  scale_ = (spec_.width - 2 * kPad) / (e.x_max - e.x_min);
  height_ = (e.y_max - e.y_min) * scale_ + 2 * kPad;
}

double SvgDocument::px(double x) const { return kPad + (x - spec_.extent.x_min) * scale_; }
double SvgDocument::py(double y) const { return height_ - kPad - (y - spec_.extent.y_min) * scale_; }

void SvgDocument::polyline(const std::vector<Point2>& points, std::string_view cls, bool closed) {
  if (points.empty()) return;
  std::string s = closed ? "<polygon class=\"" : "<polyline class=\"";
  s += cls;
  s += "\" points=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) s += ' ';
    s += fmt(px(points[i].x())) + "," + fmt(py(points[i].y()));
  }
  s += "\"/>";
  body_.push_back(std::move(s));
}

void SvgDocument::circle(const Point2& c, double r, std::string_view cls) {
  body_.push_back("<circle class=\"" + std::string(cls) + "\" cx=\"" + fmt(px(c.x())) + "\" cy=\"" + fmt(py(c.y())) +
                  "\" r=\"" + fmt(r) + "\"/>");
}

void SvgDocument::arrow(const Point2& tail, const Tangent2& delta, std::string_view cls) {
  const double x0 = px(tail.x()), y0 = py(tail.y());
  const double x1 = px(tail.x() + delta.x()), y1 = py(tail.y() + delta.y());
  const double len = std::hypot(x1 - x0, y1 - y0);
  if (len < 0.5) return;
  const double ux = (x1 - x0) / len, uy = (y1 - y0) / len;
  const double head = std::min(6.0, 0.4 * len);
  const double bx = x1 - head * ux, by = y1 - head * uy;
  const double nx = -uy * head * 0.5, ny = ux * head * 0.5;
  std::string c(cls);
  body_.push_back("<g class=\"" + c + "\"><line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y0) + "\" x2=\"" + fmt(bx) +
                  "\" y2=\"" + fmt(by) + "\"/><polygon points=\"" + fmt(x1) + "," + fmt(y1) + " " + fmt(bx + nx) +
                  "," + fmt(by + ny) + " " + fmt(bx - nx) + "," + fmt(by - ny) + "\"/></g>");
}

void SvgDocument::text(const Point2& at, std::string_view label, std::string_view cls) {
  body_.push_back("<text class=\"" + std::string(cls) + "\" x=\"" + fmt(px(at.x())) + "\" y=\"" + fmt(py(at.y())) +
                  "\">" + escape(label) + "</text>");
}

void SvgDocument::axes(int ticks) {
  const Rect& e = spec_.extent;
  body_.push_back("<rect class=\"frame\" x=\"" + fmt(kPad) + "\" y=\"" + fmt(kPad) + "\" width=\"" +
                  fmt(spec_.width - 2 * kPad) + "\" height=\"" + fmt(height_ - 2 * kPad) + "\"/>");
  if (e.y_min < 0.0 && e.y_max > 0.0)
    body_.push_back("<line class=\"axis\" x1=\"" + fmt(kPad) + "\" y1=\"" + fmt(py(0.0)) + "\" x2=\"" +
                    fmt(spec_.width - kPad) + "\" y2=\"" + fmt(py(0.0)) + "\"/>");
  if (e.x_min < 0.0 && e.x_max > 0.0)
    body_.push_back("<line class=\"axis\" x1=\"" + fmt(px(0.0)) + "\" y1=\"" + fmt(kPad) + "\" x2=\"" + fmt(px(0.0)) +
                    "\" y2=\"" + fmt(height_ - kPad) + "\"/>");
  char buf[32];
  for (int k = 0; k <= ticks; ++k) {
    const double x = e.x_min + (e.x_max - e.x_min) * k / ticks;
    const double y = e.y_min + (e.y_max - e.y_min) * k / ticks;
    std::snprintf(buf, sizeof buf, "%.3g", std::abs(x) < 1e-12 ? 0.0 : x);
    body_.push_back("<line class=\"tick\" x1=\"" + fmt(px(x)) + "\" y1=\"" + fmt(height_ - kPad) + "\" x2=\"" +
                    fmt(px(x)) + "\" y2=\"" + fmt(height_ - kPad + 5) + "\"/>");
    body_.push_back("<text class=\"tick\" text-anchor=\"middle\" x=\"" + fmt(px(x)) + "\" y=\"" +
                    fmt(height_ - kPad + 18) + "\">" + buf + "</text>");
    std::snprintf(buf, sizeof buf, "%.3g", std::abs(y) < 1e-12 ? 0.0 : y);
    body_.push_back("<line class=\"tick\" x1=\"" + fmt(kPad - 5) + "\" y1=\"" + fmt(py(y)) + "\" x2=\"" + fmt(kPad) +
                    "\" y2=\"" + fmt(py(y)) + "\"/>");
    body_.push_back("<text class=\"tick\" text-anchor=\"end\" x=\"" + fmt(kPad - 8) + "\" y=\"" + fmt(py(y) + 4) +
                    "\">" + buf + "</text>");
  }
}

std::string SvgDocument::str() const {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(spec_.width) << "\" height=\""
     << fmt(height_) << "\" viewBox=\"0 0 " << fmt(spec_.width) << " " << fmt(height_) << "\">\n"
     << "<style type=\"text/css\"><![CDATA[\n"
     << "  polyline, polygon { stroke-width: 1.2; }\n"
     << "  .classical { stroke: #d62728; fill: #d62728; }\n"
     << "  .generalized { stroke: #000000; fill: #000000; }\n"
     << "  polyline.classical, polyline.generalized, polygon.classical, polygon.generalized { fill: none; }\n"
     << "  .unit { stroke-dasharray: 2 3; }\n"
     << "  .wind { stroke: #1f77b4; fill: #1f77b4; stroke-width: 1; }\n"
     << "  .contour { stroke: #7f7f7f; fill: none; stroke-width: 0.8; }\n"
     << "  .boundary { stroke: #ff7f0e; fill: none; stroke-width: 1.5; stroke-dasharray: 6 3; }\n"
     << "  .frame { fill: none; stroke: #444444; stroke-width: 1; }\n"
     << "  .axis { stroke: #bbbbbb; stroke-width: 0.8; }\n"
     << "  .tick { stroke: #444444; font: 11px sans-serif; fill: #444444; }\n"
     << "  text.tick { stroke: none; }\n"
     << "  .label, .title { font: 13px sans-serif; fill: #222222; stroke: none; }\n"
     << "]]></style>\n";
  if (!spec_.title.empty())
    os << "<text class=\"title\" x=\"" << fmt(kPad) << "\" y=\"" << fmt(kPad - 16) << "\">" << escape(spec_.title)
       << "</text>\n";
  for (const std::string& line : body_) os << line << '\n';
  os << "</svg>\n";
  return os.str();
}

Rect bounding_box(const std::vector<Point2>& points, double margin) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Rect r{inf, -inf, inf, -inf};
  for (const Point2& p : points) {
    if (!std::isfinite(p.x()) || !std::isfinite(p.y())) continue;
    r.x_min = std::min(r.x_min, p.x());
    r.x_max = std::max(r.x_max, p.x());
    r.y_min = std::min(r.y_min, p.y());
    r.y_max = std::max(r.y_max, p.y());
  }
  if (r.x_min > r.x_max) return {-1.0, 1.0, -1.0, 1.0};
  const double w = std::max(r.x_max - r.x_min, 1e-9), h = std::max(r.y_max - r.y_min, 1e-9);
  const double m = margin * std::max(w, h);
  r.x_min -= m;
  r.x_max += m;
  r.y_min -= m;
  r.y_max += m;
  if (r.x_max - r.x_min < 1e-6) {
    r.x_min -= 0.5;
    r.x_max += 0.5;
  }
  if (r.y_max - r.y_min < 1e-6) {
    r.y_min -= 0.5;
    r.y_max += 0.5;
  }
  return r;
}

}  // namespace zermelo::io
