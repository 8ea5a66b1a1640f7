#pragma once

// Run configuration loaded from a YAML document.
//
//   constants:   {a: 0.8, b: 1}          # bound into every expression
//   problem:
//     metric:    {h11: "1", h12: "0", h22: "1"}   # optional, Euclidean default
//     wind:      {w1: "a*(b - y^2)^2", w2: "0"}
//     speed:     "cos(y)"
//     domain:    {x: [-20, 20], y: [-1.25, 1.25]}
//     classical_domain: {x: [-20, 20], y: [-1.45, 1.45]}   # optional
//   validate:    {grid: 101}
//   field:       {grid: 25, x: [-2, 2], y: [-1.25, 1.25]}
//   integration: {rel: 1e-10, abs: 1e-12}
//   geodesics:   {origin: [0, 0], headings: 36, t_end: 5, sample_dt: 0.02}
//   indicatrix:  {base: [0, 0], headings: 72, horizons: [1, 2]}
//   compare:     {tolerance: 1e-9, horizon: 6, scan: 72,
//                 pairs: [[0, 0, 9, 0], [0, 0, 2, 0.8]]}
//
// Every section except `problem` is optional. Errors carry the 1-based
// line and column of the offending node.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "zermelo/dopri.hpp"
#include "zermelo/navigation.hpp"

namespace zermelo::io {

struct FanSpec {
  Point2 origin = Point2::Zero();
  int headings = 36;
  double t_end = 5.0;
  double sample_dt = 0.02;  // resampling step of the dense output in the CSV
};

struct IndicatrixSpec {
  Point2 base = Point2::Zero();
  int headings = 72;
  std::vector<double> horizons{1.0, 2.0};
};

struct ComparePair {
  Point2 p0;
  Point2 target;
};

struct CompareSpec {
  std::vector<ComparePair> pairs;
  double tolerance = 1e-9;
  double horizon = 10.0;
  int scan = 72;
};

struct RunConfig {
  std::string source;  // path or label of the document
  NavigationData generalized;
  NavigationData classical;  // unit speed, possibly wider domain
  int validate_grid = 101;
  int field_grid = 25;
  Rect field_extent;
  Tolerance integration{1e-10, 1e-12};
  FanSpec fan;
  IndicatrixSpec indicatrix;
  CompareSpec compare;
};

RunConfig parse_config(const std::string& text, const std::string& source = "<string>");
RunConfig load_config(const std::filesystem::path& path);

}  // namespace zermelo::io
