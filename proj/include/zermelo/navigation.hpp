#pragma once

// Navigation data (h, W, |u|_h) on a 2D chart and the background-metric
// operations built on it.

#include <vector>

#include <Eigen/Core>

#include "zermelo/expression.hpp"
#include "zermelo/types.hpp"

namespace zermelo {

using ScalarField = Expression;

struct VectorField {
  ScalarField w1 = Expression::constant(0.0);
  ScalarField w2 = Expression::constant(0.0);
};

// Symmetric 2x2 background metric; Euclidean unless told otherwise.
struct MetricField {
  ScalarField h11 = Expression::constant(1.0);
  ScalarField h12 = Expression::constant(0.0);
  ScalarField h22 = Expression::constant(1.0);

  bool is_euclidean() const;
};

template <class T>
struct NavSample {
  Mat2<T> h;
  Vec2<T> wind;
  T speed;
};

struct NavigationData {
  MetricField h;
  VectorField wind;
  ScalarField speed = Expression::constant(1.0);
  Rect domain;

  template <class T>
  NavSample<T> sample(const T& x, const T& y) const {
    NavSample<T> s;
    const T h12 = h.h12.eval(x, y);
    s.h << h.h11.eval(x, y), h12, h12, h.h22.eval(x, y);
    s.wind << wind.w1.eval(x, y), wind.w2.eval(x, y);
    s.speed = speed.eval(x, y);
    return s;
  }
  NavSample<double> sample(const Point2& p) const { return sample<double>(p.x(), p.y()); }

  // Same h, W and domain with the classical unit speed.
  NavigationData with_unit_speed() const;
};

void require_in_domain(const NavigationData& data, const Point2& p);

double h_norm(const NavigationData& data, const Point2& p, const Tangent2& t);
double h_inner(const NavigationData& data, const Point2& p, const Tangent2& a, const Tangent2& b);

// Columns form an h-orthonormal frame at p (E^T h E = I), from the Cholesky
// factor of h. Identity for Euclidean h.
Eigen::Matrix2d orthonormal_frame(const NavigationData& data, const Point2& p);

struct ConvexityViolation {
  Point2 p;
  double wind_norm = 0.0;
  double speed = 0.0;
  bool metric_not_positive = false;
};

struct ConvexityReport {
  int samples = 0;
  std::vector<ConvexityViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Samples a grid x grid lattice over the domain rectangle (edges included)
// and reports every point where h is not positive definite, |W|_h >= speed,
// speed > 1 or speed <= 0.
ConvexityReport validate_convexity(const NavigationData& data, int grid);

struct AxisSlice {
  enum class Axis { X, Y };
  Axis vary = Axis::Y;   // coordinate that runs along the slice
  double fixed = 0.0;    // value of the other coordinate
  double lo = 0.0;
  double hi = 1.0;
  int subdivisions = 400;  // scan resolution used to bracket sign changes
};

// Roots of speed - |W|_h along the slice, bisected to 1e-10. Empty when the
// difference does not change sign.
std::vector<double> convexity_boundary(const NavigationData& data, const AxisSlice& slice);

}  // namespace zermelo
