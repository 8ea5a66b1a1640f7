#pragma once

// Geodesic spray of F~ and Zermelo initial conditions.

#include <Eigen/Core>

#include "zermelo/randers.hpp"

namespace zermelo {

// Below this |L_uu L_vv - L_uv^2| the spray is treated as singular.
inline constexpr double kDegeneracyThreshold = 1e-12;

class SprayField {
 public:
  explicit SprayField(RandersMetric metric) : metric_(std::move(metric)) {}
  explicit SprayField(NavigationData data) : metric_(std::move(data)) {}
  const RandersMetric& metric() const { return metric_; }
  const NavigationData& data() const { return metric_.data(); }

 private:
  RandersMetric metric_;
};

// (G1, G2) assembled from any jet of L = F^2/2 at tangent vector t:
//   G1 = [L_vv (L_xu u + L_yu v - L_x) - L_uv (L_xv u + L_yv v - L_y)] / (2 det)
//   G2 = [-L_uv (L_xu u + L_yu v - L_x) + L_uu (L_xv u + L_yv v - L_y)] / (2 det)
Eigen::Vector2d spray_from_jet(const SecondOrderJet& j, const Tangent2& t);

Eigen::Vector2d spray_coefficients(const SprayField& spray, const Point2& p, const Tangent2& t);

// W(p0) + speed(p0) (cos phi0, sin phi0), the heading taken in the
// h-orthonormal frame at p0. F~ of the result is 1.
Tangent2 initial_velocity(const NavigationData& data, const Point2& p0, double phi0);

struct InitialCondition {
  Point2 p0 = Point2::Zero();
  double phi0 = 0.0;
  Tangent2 velocity = Tangent2::Zero();

  static InitialCondition make(const NavigationData& data, const Point2& p0, double phi0) {
    return {p0, phi0, initial_velocity(data, p0, phi0)};
  }
};

}  // namespace zermelo
